"""Wedge spaces of skew-symmetric polynomials with bounded slot degree.

An element of the space with parameters (n, l) is a skew-symmetric polynomial
in X1..Xl, of degree at most n-1 in each slot, with coefficients in the
rational function field over z1..zn (plus auxiliary variables z, t while
computing).  The basis vector attached to an increasing subset
S = (s1 < ... < sl) of {0..n-1} is the determinant det(X_b^{s_a}); elements
are stored as maps from subsets to coefficients, so skew symmetry is
structural.  The expanded polynomial form is used transiently for
substitutions and comparisons.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations

from .cyclotomic import CycScalar
from .laurent import (
    LaurentPoly,
    RationalFn,
    exact_div,
    is_symmetric,
    substitute,
    zvar,
)


def Xvar(a: int) -> str:
    return "X%d" % a


def _coerce_coeff(c) -> RationalFn:
    if isinstance(c, RationalFn):
        return c
    if isinstance(c, LaurentPoly):
        return RationalFn.from_poly(c)
    return RationalFn.from_poly(LaurentPoly.const(c))


class WedgeElem:
    """Element of the (n, l) wedge space, on the increasing-subset basis."""

    __slots__ = ("n", "l", "terms")

    def __init__(self, n: int, l: int, terms=None):
        if l < 0:
            raise ValueError("negative wedge degree")
        self.n = n
        self.l = l
        self.terms = {}
        if terms and l <= n:
            for subset, coeff in terms.items():
                subset = tuple(subset)
                if len(subset) != l or list(subset) != sorted(set(subset)):
                    raise ValueError("subset %r is not an increasing %d-tuple" % (subset, l))
                if subset and (subset[0] < 0 or subset[-1] > n - 1):
                    raise ValueError("subset %r escapes 0..%d" % (subset, n - 1))
                coeff = _coerce_coeff(coeff)
                if not coeff.is_zero():
                    self.terms[subset] = coeff

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, n: int, l: int) -> "WedgeElem":
        return cls(n, l)

    @classmethod
    def unit(cls, n: int) -> "WedgeElem":
        return cls(n, 0, {(): LaurentPoly.one()})

    @classmethod
    def monomial_wedge(cls, n: int, subset, coeff=1) -> "WedgeElem":
        return cls(n, len(tuple(subset)), {tuple(subset): coeff})

    # -- linear structure --------------------------------------------------

    def __add__(self, other: "WedgeElem") -> "WedgeElem":
        if (self.n, self.l) != (other.n, other.l):
            # the zero element acts as the zero of the whole graded sum
            if self.n == other.n and other.is_zero():
                return self
            if self.n == other.n and self.is_zero():
                return other
            raise ValueError("shape mismatch in wedge addition")
        out = dict(self.terms)
        for s, c in other.terms.items():
            c2 = out.get(s)
            c2 = c if c2 is None else c2 + c
            if c2.is_zero():
                out.pop(s, None)
            else:
                out[s] = c2
        r = WedgeElem(self.n, self.l)
        r.terms = out
        return r

    def __neg__(self):
        r = WedgeElem(self.n, self.l)
        r.terms = {s: -c for s, c in self.terms.items()}
        return r

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, c) -> "WedgeElem":
        """Multiply every coefficient by a slot-free scalar function."""
        c = _coerce_coeff(c)
        if c.is_zero():
            return WedgeElem(self.n, self.l)
        r = WedgeElem(self.n, self.l)
        r.terms = {s: c0 * c for s, c0 in self.terms.items()}
        return r

    def __eq__(self, other):
        if not isinstance(other, WedgeElem):
            return NotImplemented
        if self.n == other.n and self.is_zero() and other.is_zero():
            return True
        if (self.n, self.l) != (other.n, other.l):
            return False
        if set(self.terms) != set(other.terms):
            return False
        return all(self.terms[s] == other.terms[s] for s in self.terms)

    def __hash__(self):
        raise TypeError("WedgeElem is unhashable")

    def is_zero(self) -> bool:
        return not self.terms

    def weight(self) -> int:
        return self.n - 2 * self.l

    def __str__(self):
        if self.is_zero():
            return "0 (n=%d, l=%d)" % (self.n, self.l)
        parts = []
        for s in sorted(self.terms):
            basis = "^".join("X%d" % e for e in s) if s else "1"
            parts.append("(%s)*%s" % (self.terms[s], basis))
        return " + ".join(parts)

    __repr__ = __str__

    # -- wedge multiplication ----------------------------------------------

    def wedge(self, other: "WedgeElem") -> "WedgeElem":
        """Wedge product; zero beyond top degree."""
        if self.n != other.n:
            raise ValueError("wedge factors live over different variable counts")
        n, l = self.n, self.l + other.l
        out = WedgeElem(n, l)
        if l > n:
            return out
        acc = {}
        for s1, c1 in self.terms.items():
            set1 = set(s1)
            for s2, c2 in other.terms.items():
                if set1 & set(s2):
                    continue
                sign = _merge_sign(s1, s2)
                key = tuple(sorted(s1 + s2))
                c = c1 * c2
                if sign < 0:
                    c = -c
                prev = acc.get(key)
                c = c if prev is None else prev + c
                if c.is_zero():
                    acc.pop(key, None)
                else:
                    acc[key] = c
        out.terms = acc
        return out

    # -- expanded polynomial form -------------------------------------------

    def to_poly(self) -> RationalFn:
        """The skew-symmetric polynomial in X1..Xl (denominator slot-free)."""
        total = RationalFn.from_poly(LaurentPoly.zero())
        for subset, coeff in self.terms.items():
            total = total + coeff * RationalFn.from_poly(_basis_det(subset))
        return total

    def specialize_slot(self, slot: int, value) -> "WedgeElem":
        """Substitute `value` into slot `slot` (1-based); remaining slots close up."""
        if self.l < 1:
            raise ValueError("cannot specialize a slot of a degree-0 element")
        if not 1 <= slot <= self.l:
            raise ValueError("slot %d out of range" % slot)
        if not isinstance(value, (LaurentPoly, RationalFn)):
            value = LaurentPoly.const(value)
        if slot == self.l and isinstance(value, LaurentPoly) and len(value.terms) == 1:
            return self._specialize_last_monomial(value)
        poly = self.to_poly()
        bindings = {Xvar(slot): value}
        for j in range(slot + 1, self.l + 1):
            bindings[Xvar(j)] = LaurentPoly.var(Xvar(j - 1))
        res = substitute(poly.num, bindings)
        for f, m in poly.den:
            res = res * RationalFn._raw(LaurentPoly.one(), [(f, m)])
        return collect_skew(res, self.n, self.l - 1)

    def _specialize_last_monomial(self, value: LaurentPoly) -> "WedgeElem":
        """Cofactor expansion of the last column at a monomial value.

        det(X_b^(s_a)) with the last slot set to v splits into a signed sum
        of v^(s_a) times the minors on the remaining exponents, so no
        polynomial expansion is needed.
        """
        out = {}
        l = self.l
        for subset, coeff in self.terms.items():
            for pos, s in enumerate(subset):
                minor = subset[:pos] + subset[pos + 1:]
                sign = (pos + 1 + l) % 2  # (-1)^(a + l) with a = pos + 1
                c = coeff * RationalFn.from_poly(value ** s)
                if sign:
                    c = -c
                prev = out.get(minor)
                c = c if prev is None else prev + c
                if c.is_zero():
                    out.pop(minor, None)
                else:
                    out[minor] = c
        res = WedgeElem(self.n, l - 1)
        res.terms = out
        return res

    def map_coeffs(self, fn) -> "WedgeElem":
        r = WedgeElem(self.n, self.l)
        out = {}
        for s, c in self.terms.items():
            c2 = _coerce_coeff(fn(c))
            if not c2.is_zero():
                out[s] = c2
        r.terms = out
        return r

    # -- membership and grading ----------------------------------------------

    def coeffs_as_laurent(self):
        """All coefficients as Laurent polynomials, or None if any fails."""
        out = {}
        for s, c in self.terms.items():
            try:
                out[s] = c.as_laurent()
            except ValueError:
                return None
        return out

    def is_deformed_cycle(self) -> bool:
        """Coefficients are symmetric Laurent polynomials in z1..zn."""
        coeffs = self.coeffs_as_laurent()
        if coeffs is None:
            return False
        return all(is_symmetric(c, self.n) for c in coeffs.values())


def _merge_sign(s1, s2) -> int:
    inv = sum(1 for a in s1 for b in s2 if a > b)
    return -1 if inv % 2 else 1


_DET_CACHE = {}


def _basis_det(subset) -> LaurentPoly:
    key = tuple(subset)
    cached = _DET_CACHE.get(key)
    if cached is not None:
        return cached
    l = len(key)
    if l == 0:
        out = LaurentPoly.one()
    else:
        terms = {}
        for perm in permutations(range(l)):
            sign = _perm_sign(perm)
            mono = tuple(
                sorted((Xvar(perm[a] + 1), key[a]) for a in range(l) if key[a])
            )
            prev = terms.get(mono, CycScalar.zero())
            c = prev + CycScalar(sign)
            if c.is_zero():
                terms.pop(mono, None)
            else:
                terms[mono] = c
        out = LaurentPoly(terms)
    _DET_CACHE[key] = out
    return out


def _perm_sign(perm) -> int:
    inv = 0
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                inv += 1
    return -1 if inv % 2 else 1


def skew_collect(poly, n: int, l: int) -> WedgeElem:
    """Full skew-symmetrization of an arbitrary polynomial in X1..Xl.

    Each monomial with distinct slot exponents contributes the sign of its
    sorting permutation times the corresponding basis determinant; repeated
    exponents die.  For f already skew this returns l! times f.
    """
    poly = poly if isinstance(poly, RationalFn) else RationalFn.from_poly(poly)
    num, den = poly.num, poly.den
    acc = {}
    for mono, coeff in num.terms.items():
        exps = [0] * l
        rest = {}
        for name, e in mono:
            if name.startswith("X") and name[1:].isdigit() and 1 <= int(name[1:]) <= l:
                exps[int(name[1:]) - 1] = e
            else:
                rest[name] = e
        if len(set(exps)) != l:
            continue
        order = sorted(range(l), key=lambda a: exps[a])
        sign = _perm_sign(order)
        key = tuple(sorted(exps))
        if key and key[-1] > n - 1:
            raise ValueError("slot degree %d exceeds bound %d" % (key[-1], n - 1))
        if key and key[0] < 0:
            raise ValueError("negative slot exponent")
        restm = tuple(sorted(rest.items()))
        c = LaurentPoly.monomial(restm, coeff if sign > 0 else -coeff)
        prev = acc.get(key)
        acc[key] = c if prev is None else prev + c
    out = WedgeElem(n, l)
    for key, c in acc.items():
        if c.is_zero():
            continue
        out.terms[key] = RationalFn._raw(c, den)
    out.terms = {k: v for k, v in out.terms.items() if not v.is_zero()}
    return out


_FACTORIALS = [1, 1, 2, 6, 24, 120, 720, 5040, 40320]


def collect_skew(poly, n: int, l: int) -> WedgeElem:
    """Write an already skew-symmetric polynomial on the subset basis."""
    res = skew_collect(poly, n, l)
    inv = CycScalar(Fraction(1, _FACTORIALS[l]))
    return res.map_coeffs(lambda c: c * inv)


# ---------------------------------------------------------------------------
# kernels
# ---------------------------------------------------------------------------


def theta_at(n: int, value) -> LaurentPoly:
    """prod_j (1 - z_j * value) for a polynomial argument."""
    if not isinstance(value, LaurentPoly):
        value = LaurentPoly.const(value)
    out = LaurentPoly.one()
    for j in range(1, n + 1):
        out = out * (LaurentPoly.one() - LaurentPoly.var(zvar(j)) * value)
    return out


def theta(n: int, var: str = "t") -> LaurentPoly:
    return theta_at(n, LaurentPoly.var(var))


def theta2_at(n: int, v1, v2) -> LaurentPoly:
    """Two-argument kernel: Theta(v1)Theta(v2) - Theta(-v1)Theta(-v2)."""
    if not isinstance(v1, LaurentPoly):
        v1 = LaurentPoly.const(v1)
    if not isinstance(v2, LaurentPoly):
        v2 = LaurentPoly.const(v2)
    return theta_at(n, v1) * theta_at(n, v2) - theta_at(n, -v1) * theta_at(n, -v2)


_KERNEL_CACHE = {}


def _evar(k: int) -> str:
    return "e%d" % k


def _theta_sym(n: int, value: LaurentPoly) -> LaurentPoly:
    """Theta with opaque elementary-symmetric coefficients e1..en."""
    out = LaurentPoly.one()
    sign = -1
    power = value
    for k in range(1, n + 1):
        out = out + LaurentPoly.var(_evar(k)) * power.scale(CycScalar(sign))
        sign = -sign
        power = power * value
    return out


def _theta2_sym(n: int, v1: LaurentPoly, v2: LaurentPoly) -> LaurentPoly:
    return _theta_sym(n, v1) * _theta_sym(n, v2) - _theta_sym(n, -v1) * _theta_sym(n, -v2)


def _expand_evars(p: LaurentPoly, n: int) -> LaurentPoly:
    from .laurent import mono_mul, sym_elementary

    powers = {}

    def epow(k, m):
        key = (k, m)
        if key not in powers:
            powers[key] = sym_elementary(n, k) ** m
        return powers[key]

    out = {}
    for mono, coeff in p.terms.items():
        rest = []
        factor = None
        for name, e in mono:
            if name.startswith("e") and name[1:].isdigit():
                piece = epow(int(name[1:]), e)
                factor = piece if factor is None else factor * piece
            else:
                rest.append((name, e))
        restm = tuple(rest)
        pieces = factor.terms.items() if factor is not None else ((restm, coeff),)
        if factor is not None:
            for fm, fc in pieces:
                key = mono_mul(fm, restm)
                c = fc * coeff
                prev = out.get(key)
                c = c if prev is None else prev + c
                if c.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = c
        else:
            prev = out.get(restm)
            c = coeff if prev is None else prev + coeff
            if c.is_zero():
                out.pop(restm, None)
            else:
                out[restm] = c
    return LaurentPoly(out)


def kernel_F(n: int) -> RationalFn:
    """Degree-lowering kernel in (t, X): polynomial in X of degree < n."""
    key = ("F", n)
    if key in _KERNEL_CACHE:
        return _KERNEL_CACHE[key]
    t = LaurentPoly.var("t")
    X = LaurentPoly.var("X")
    if n == 0:
        out = RationalFn.from_poly(LaurentPoly.zero())
    else:
        num = _theta2_sym(n, t, -X)
        h = exact_div(num, X - t)
        h = _expand_evars(t * h, n)
        out = RationalFn(h, [theta(n)]).scaled_half()
        assert out.num.degree("X") <= n - 1
    _KERNEL_CACHE[key] = out
    return out


def _scaled_half(self: RationalFn) -> RationalFn:
    r = RationalFn.__new__(RationalFn)
    r.num = self.num.scale(CycScalar(Fraction(1, 2)))
    r.den = self.den
    return r


RationalFn.scaled_half = _scaled_half


def kernel_F2(n: int) -> RationalFn:
    """Divided-square lowering kernel in (t, X1, X2).

    The three summands of the definition are assembled over their common
    denominator and the slot poles are divided out exactly, leaving only the
    theta(t) factor.
    """
    key = ("F2", n)
    if key in _KERNEL_CACHE:
        return _KERNEL_CACHE[key]
    t = LaurentPoly.var("t")
    X1 = LaurentPoly.var("X1")
    X2 = LaurentPoly.var("X2")
    t2 = t * t
    th_sym = _theta_sym(n, t)
    f1p, f1m = X1 + t, X1 - t
    f2p, f2m = X2 + t, X2 - t
    fsum = X1 + X2
    num = (
        t2 * (X1 - X2) * _theta2_sym(n, X1, X2) * f1m * f2m * th_sym
        + t2 * _theta_sym(n, -X2) * _theta2_sym(n, t, -X1) * f1p * f2m * fsum
        - t2 * _theta_sym(n, -X1) * _theta2_sym(n, t, -X2) * f1m * f2p * fsum
    )
    for fac in (f1p, f2p, f1m, f2m, fsum):
        num = exact_div(num, fac)
    num = _expand_evars(num, n)
    out = RationalFn(num, [theta(n)])
    if n >= 1:
        assert num.degree("X1") <= n - 1 and num.degree("X2") <= n - 1
    _KERNEL_CACHE[key] = out
    return out


def kernel_coeffs_X(kernel: RationalFn, slots) -> dict:
    """Split a kernel into slot-monomial coefficients.

    `slots` names the X-variables, e.g. ("X",) or ("X1", "X2"); returns a map
    from exponent tuples to RationalFn coefficients (denominator slot-free).
    """
    buckets = {}
    for mono, coeff in kernel.num.terms.items():
        exps = []
        rest = {}
        d = dict(mono)
        for s in slots:
            exps.append(d.pop(s, 0))
        key = tuple(exps)
        restm = tuple(sorted(d.items()))
        prev = buckets.get(key)
        c = LaurentPoly.monomial(restm, coeff)
        buckets[key] = c if prev is None else prev + c
    return {
        k: RationalFn._raw(v, kernel.den) for k, v in buckets.items() if not v.is_zero()
    }


# ---------------------------------------------------------------------------
# grading
# ---------------------------------------------------------------------------


class BiGrading:
    __slots__ = ("deg0", "weight")

    def __init__(self, deg0: int, weight: int):
        self.deg0 = deg0
        self.weight = weight

    def __eq__(self, other):
        return (
            isinstance(other, BiGrading)
            and (self.deg0, self.weight) == (other.deg0, other.weight)
        )

    def __hash__(self):
        return hash((self.deg0, self.weight))

    def __repr__(self):
        return "BiGrading(deg0=%s, weight=%s)" % (self.deg0, self.weight)


def coeff_deg0(c: RationalFn):
    """z-degree of a z-homogeneous coefficient, or None."""
    dn = c.num.z_total_degree()
    if dn is None:
        return None
    dd = c.den_poly().z_total_degree()
    if dd is None:
        return None
    return dn - dd


def bigrade(P: WedgeElem):
    """BiGrading for homogeneous elements, else the homogeneous parts.

    Returns a BiGrading, or a list of (deg0, WedgeElem) pairs when the element
    mixes degrees.  The zero element grades as (0, weight).
    """
    weight = P.weight()
    if P.is_zero():
        return BiGrading(0, weight)
    raw = {}
    for s, c in P.terms.items():
        base = -sum(s)
        num_parts = _z_homogeneous_parts(c.num)
        dden = c.den_poly().z_total_degree()
        if dden is None:
            raise ValueError("coefficient denominator is not z-homogeneous")
        for dnum, poly in num_parts.items():
            d = base + dnum - dden
            bucket = raw.setdefault(d, {})
            prev = bucket.get(s)
            val = RationalFn._raw(poly, c.den)
            bucket[s] = val if prev is None else prev + val
    parts = {}
    for d, bucket in raw.items():
        elem = WedgeElem(P.n, P.l, bucket)
        if not elem.is_zero():
            parts[d] = elem
    if len(parts) == 1:
        (d, _), = parts.items()
        return BiGrading(d, weight)
    return sorted(parts.items())


def _z_homogeneous_parts(p: LaurentPoly) -> dict:
    out = {}
    for mono, coeff in p.terms.items():
        d = sum(e for name, e in mono if not name.startswith("X") and name != "t")
        part = out.setdefault(d, {})
        part[mono] = coeff
    return {d: LaurentPoly(terms) for d, terms in out.items()}


def multiply_slot_square_product(P: WedgeElem, zsq) -> WedgeElem:
    """Multiply by prod_a (1 - X_a^2 * zsq) on the subset basis.

    The elementary symmetric pieces in the squared slots act by shifting
    subsets of exponents up by two, with the sorting sign and collisions
    dropped; zsq is a slot-free polynomial (typically z^2).
    """
    from itertools import combinations

    if not isinstance(zsq, LaurentPoly):
        zsq = LaurentPoly.const(zsq)
    out = WedgeElem(P.n + 2, P.l)
    acc = {}
    for subset, coeff in P.terms.items():
        for k in range(0, P.l + 1):
            for T in combinations(range(P.l), k):
                shifted = list(subset)
                for idx in T:
                    shifted[idx] += 2
                if len(set(shifted)) != P.l:
                    continue
                order = sorted(range(P.l), key=lambda a: shifted[a])
                sign = _perm_sign(order)
                if k % 2:
                    sign = -sign
                key = tuple(sorted(shifted))
                c = coeff * RationalFn.from_poly(zsq ** k)
                if sign < 0:
                    c = -c
                prev = acc.get(key)
                c = c if prev is None else prev + c
                if c.is_zero():
                    acc.pop(key, None)
                else:
                    acc[key] = c
    out.terms = acc
    return out


def ratfn_constant(r: RationalFn):
    """The CycScalar value of a constant rational function, else None."""
    if r.is_zero():
        return CycScalar.zero()
    den = r.den_poly()
    _, lead_num = r.num.lead()
    _, lead_den = den.lead()
    c = lead_num / lead_den
    if r.num == den.scale(c):
        return c
    return None


def proportionality_scalar(A: WedgeElem, B: WedgeElem):
    """Scalar c with A = c * B, when one exists.

    Returns ("zero", None) when both vanish, ("proportional", c) on success,
    ("no", None) otherwise.  The scalar must be a field constant.
    """
    if A.is_zero() and B.is_zero():
        return "zero", None
    if A.is_zero() or B.is_zero():
        return "no", None
    if (A.n, A.l) != (B.n, B.l):
        return "no", None
    subset = next(iter(B.terms))
    ca = A.terms.get(subset)
    if ca is None:
        return "no", None
    c = ratfn_constant(ca / B.terms[subset])
    if c is None:
        return "no", None
    if A == B.scaled(c):
        return "proportional", c
    return "no", None


def deg_infcycle(P: WedgeElem) -> Fraction:
    """n^2/4 + deg0, the degree that is constant along a linked tower."""
    g = bigrade(P)
    if not isinstance(g, BiGrading):
        raise ValueError("element is not deg0-homogeneous")
    return Fraction(P.n * P.n, 4) + g.deg0
