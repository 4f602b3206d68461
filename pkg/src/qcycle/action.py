"""Loop-algebra generator actions at q = sqrt(-1) as truncated series.

Each half-current family acts on a wedge element through an explicit rational
kernel; the series stored here are the kernel expansions at t = 0 or
t = infinity.  A prefactor record relates stored coefficients to the abstract
generator series, and individual modes are recovered with the i^k twist
coming from the (q^{-1} t)^k convention of the generating series.

Families and their stored kernels (P of shape (n, l)):
  xminus    F_n(t) wedge P            raises l by 1
  xminus2   F2_n(t) wedge P           raises l by 2
  xplus     theta_n(t)^-1 P(..., t)   lowers l by 1
  xplus2    residue sum at z_a^{-1}   lowers l by 2
  aplus / aminus                      diagonal, explicit two-part formula
  t1        scalar i^(n-2l)
"""

from __future__ import annotations

from fractions import Fraction

from .cyclotomic import CycScalar, I, i_power
from .laurent import (
    LaurentPoly,
    RationalFn,
    exact_div,
    series_expand,
    series_expand_coeffs,
    substitute,
    zvar,
)
from .wedge import (
    WedgeElem,
    Xvar,
    collect_skew,
    kernel_F,
    kernel_F2,
    kernel_coeffs_X,
    theta,
    theta_at,
)

X_FAMILIES = ("xminus", "xminus2", "xplus", "xplus2")
FAMILIES = X_FAMILIES + ("aplus", "aminus", "t1")

_L_SHIFT = {"xminus": 1, "xminus2": 2, "xplus": -1, "xplus2": -2,
            "aplus": 0, "aminus": 0}


class GenMode:
    """A single generator mode: family plus integer index."""

    __slots__ = ("family", "k")

    def __init__(self, family: str, k: int = 0):
        if family not in FAMILIES:
            raise ValueError("unknown family %r" % family)
        if family in ("xminus2", "xplus2") and k != 0:
            raise ValueError("only the k = 0 divided mode is exposed")
        if family == "aplus" and k < 1:
            raise ValueError("aplus modes have k >= 1")
        if family == "aminus" and k > -1:
            raise ValueError("aminus modes have k <= -1")
        if family == "t1" and k not in (1, -1):
            raise ValueError("t1 exponent must be +1 or -1")
        self.family = family
        self.k = k

    def weight_shift(self) -> int:
        return {"xminus": -2, "xminus2": -4, "xplus": 2, "xplus2": 4}.get(self.family, 0)

    def __repr__(self):
        return "GenMode(%s, %d)" % (self.family, self.k)

    def __eq__(self, other):
        return isinstance(other, GenMode) and (self.family, self.k) == (other.family, other.k)


def atilde(m: int) -> GenMode:
    if m == 0:
        raise ValueError("no zero mode in the a-series")
    return GenMode("aplus" if m > 0 else "aminus", m)


class TruncSeries:
    """Kernel-side expansion of one generator series applied to one element."""

    __slots__ = ("family", "point", "n", "l_in", "l_out", "order", "coeffs",
                 "prefactor", "mode_twist")

    def __init__(self, family, point, n, l_in, l_out, order, coeffs, prefactor, mode_twist):
        self.family = family
        self.point = point          # "zero" | "inf"
        self.n = n
        self.l_in = l_in
        self.l_out = l_out
        self.order = order
        self.coeffs = coeffs        # k -> WedgeElem, exact within |k| <= order
        self.prefactor = prefactor  # abstract series = prefactor^-1 * stored
        self.mode_twist = mode_twist

    def stored(self, k: int) -> WedgeElem:
        if abs(k) > self.order:
            raise ValueError("mode %d beyond truncation order %d" % (k, self.order))
        return self.coeffs.get(k, WedgeElem(self.n, self.l_out))


_MODE_RANGES = {
    ("xminus", "zero"): lambda k: k >= 1,
    ("xminus", "inf"): lambda k: k <= 0,
    ("xplus", "zero"): lambda k: k >= 0,
    ("xplus", "inf"): lambda k: k < 0,
    ("xminus2", "zero"): lambda k: False,
    ("xminus2", "inf"): lambda k: k == 0,
    ("xplus2", "zero"): lambda k: k == 0,
    ("xplus2", "inf"): lambda k: False,
    ("aplus", "zero"): lambda k: k >= 1,
    ("aminus", "inf"): lambda k: k <= -1,
}


def mode_extract(series: TruncSeries, k: int) -> WedgeElem:
    """Recover the abstract mode x_k (or a-mode) from a stored series."""
    in_range = _MODE_RANGES.get((series.family, series.point))
    if in_range is None or not in_range(k):
        raise ValueError(
            "mode %d is not extractable from the %s series at %s"
            % (k, series.family, series.point)
        )
    stored = series.stored(k)
    scale = series.prefactor.inverse()
    if series.mode_twist:
        scale = scale * i_power(k)
    return stored.scaled(scale)


# ---------------------------------------------------------------------------
# kernel caches
# ---------------------------------------------------------------------------

_LOWER_CACHE = {}


def _lowering_kernel_series(n: int, square: bool, point: str, order: int):
    """Expansion of F_n or F2_n as a list of wedge elements per power of t."""
    key = (n, square, point, order)
    cached = _LOWER_CACHE.get(key)
    if cached is not None:
        return cached
    if square:
        kern = kernel_F2(n)
        split = kernel_coeffs_X(kern, ("X1", "X2"))
        acc = {}
        for (e1, e2), coeff in split.items():
            if e1 == e2 and not coeff.is_zero():
                raise AssertionError("divided kernel is not skew")
            if e1 < e2:
                # skewness pins the (e2, e1) bucket to the negative of this one
                assert split.get((e2, e1)) == _neg(coeff)
                acc[(e1, e2)] = coeff
        l_ker = 2
    else:
        kern = kernel_F(n)
        acc = {(e,): c for (e,), c in kernel_coeffs_X(kern, ("X",)).items()}
        l_ker = 1
    out = {}
    for subset, coeff in acc.items():
        for k, c in series_expand(coeff, "t", point, order).items():
            if abs(k) > order:
                continue
            elem = out.setdefault(k, WedgeElem(n, l_ker))
            if not c.is_zero():
                elem.terms[subset] = RationalFn.from_poly(c)
    _LOWER_CACHE[key] = out
    return out


def _neg(r: RationalFn) -> RationalFn:
    return -r


# ---------------------------------------------------------------------------
# the action
# ---------------------------------------------------------------------------


def act_series(family: str, P: WedgeElem, order: int, point: str | None = None,
               expect_polynomial: bool = False) -> TruncSeries:
    """Apply one generator series to P, truncated at |t-exponent| <= order.

    `point` defaults to the natural side: the positive-mode series expand at
    zero, the nonpositive ones at infinity.  With expect_polynomial=True the
    xplus2 coefficients must reduce to Laurent polynomials (guaranteed for
    weakly minimal input) and failure raises.
    """
    n, l = P.n, P.l
    if family not in FAMILIES or family == "t1":
        raise ValueError("act_series expects a series family, not %r" % family)
    if point is None:
        point = {"xminus": "zero", "xminus2": "zero", "xplus": "zero",
                 "xplus2": "zero", "aplus": "zero", "aminus": "inf"}[family]

    order = max(order, 3)  # cached work is shared across nearby orders

    if family in ("xminus", "xminus2"):
        square = family == "xminus2"
        kern = _lowering_kernel_series(n, square, point, order)
        coeffs = {k: elem.wedge(P) for k, elem in kern.items()}
        prefactor = _prefactor(family, point, n)
        series = TruncSeries(family, point, n, l, l + (2 if square else 1),
                             order, _clean(coeffs), prefactor, True)

    elif family == "xplus":
        if l == 0:
            series = TruncSeries(family, point, n, l, 0, order, {},
                                 _prefactor(family, point, n), True)
        else:
            restricted = P.specialize_slot(l, LaurentPoly.var("t"))
            inv_theta = RationalFn(LaurentPoly.one(), [theta(n)])
            restricted = restricted.map_coeffs(lambda c: c * inv_theta)
            coeffs = _expand_elem(restricted, point, order)
            series = TruncSeries(family, point, n, l, l - 1, order,
                                 coeffs, _prefactor(family, point, n), True)

    elif family == "xplus2":
        if l <= 1:
            series = TruncSeries(family, point, n, l, max(l - 2, 0), order, {},
                                 _prefactor(family, point, n), True)
        else:
            coeffs = _combine_per_basis(family, P, point, order, _residue_pair_series)
            if point == "inf":
                top = coeffs.get(-1)
                assert top is None or top.is_zero(), "residue kernel must vanish at t^-1"
            if expect_polynomial:
                for k, elem in coeffs.items():
                    if elem.coeffs_as_laurent() is None:
                        raise ArithmeticError(
                            "divided raising series left the Laurent lattice at t^%d "
                            "on weakly minimal input" % k)
            series = TruncSeries(family, point, n, l, l - 2, order,
                                 coeffs, _prefactor(family, point, n), True)

    elif family in ("aplus", "aminus"):
        coeffs = _combine_per_basis(family, P, point, order, _a_series_basis)
        series = TruncSeries(family, point, n, l, l, order, coeffs,
                             CycScalar.one(), False)
    else:  # pragma: no cover
        raise AssertionError(family)

    for k, elem in series.coeffs.items():
        assert elem.l == series.l_out
    return series


def _clean(coeffs):
    return {k: v for k, v in coeffs.items() if not v.is_zero()}


_BASIS_SERIES_CACHE = {}


def _combine_per_basis(family: str, P: WedgeElem, point: str, order: int, worker) -> dict:
    """Evaluate a field-linear series on cached basis elements and recombine."""
    total = {}
    for subset, coeff in P.terms.items():
        key = (family, P.n, P.l, subset, point, order)
        part = _BASIS_SERIES_CACHE.get(key)
        if part is None:
            basis_elem = WedgeElem.monomial_wedge(P.n, subset)
            part = worker(family, basis_elem, point, order)
            _BASIS_SERIES_CACHE[key] = part
        for k, elem in part.items():
            piece = elem.scaled(coeff)
            if piece.is_zero():
                continue
            prev = total.get(k)
            total[k] = piece if prev is None else prev + piece
    return _clean(total)


def _residue_pair_series(family: str, P: WedgeElem, point: str, order: int) -> dict:
    n, l = P.n, P.l
    total = None
    half = CycScalar(Fraction(1, 2))
    for a in range(1, n + 1):
        za_inv = LaurentPoly.var(zvar(a), -1)
        Pa = P.specialize_slot(l, -za_inv).specialize_slot(l - 1, za_inv)
        den = LaurentPoly.one()
        for b in range(1, n + 1):
            if b != a:
                den = den * (LaurentPoly.one()
                             - LaurentPoly.var(zvar(b), 2) * LaurentPoly.var(zvar(a), -2))
        scale = RationalFn(LaurentPoly.const(half),
                           [den, LaurentPoly.one() - LaurentPoly.var(zvar(a)) * LaurentPoly.var("t")])
        Pa = Pa.map_coeffs(lambda c: c * scale)
        total = Pa if total is None else total + Pa
    return _expand_elem(total, point, order)


def _expand_elem(P: WedgeElem, point: str, order: int) -> dict:
    """Expand each t-rational coefficient; regroup as wedge elements per power."""
    out = {}
    for s, c in P.terms.items():
        for k, val in series_expand_coeffs(c, "t", point, order).items():
            if abs(k) > order or val.is_zero():
                continue
            elem = out.setdefault(k, WedgeElem(P.n, P.l))
            prev = elem.terms.get(s)
            elem.terms[s] = val if prev is None else prev + val
    return _clean(out)


def _prefactor(family: str, point: str, n: int) -> CycScalar:
    if family == "xminus":
        return CycScalar.one() if point == "zero" else -CycScalar.one()
    if family == "xminus2":
        return CycScalar(-4) * I
    if family == "xplus":
        c = i_power(1 - n)
        return c if point == "zero" else -c
    if family == "xplus2":
        return I * CycScalar((-1) ** (n + 1))
    return CycScalar.one()


def _a_series_basis(family: str, P: WedgeElem, point: str, order: int) -> dict:
    """Diagonal series on one basis element, assembled in two halves.

    The half with denominator theta(t) carries the z-sum and the direct slot
    terms; the t -> -t images sit over theta(-t).  Keeping the halves apart
    until after the expansion avoids the large cross products; only their sum
    per power of t is skew symmetric, which is checked before collection.
    """
    n, l = P.n, P.l
    t = LaurentPoly.var("t")
    one = LaurentPoly.one()
    th_t = theta(n)
    th_m = _flip_t(th_t)
    poly = P.to_poly()
    num, den = poly.num, poly.den

    diag_num = LaurentPoly.zero()
    for j in range(1, n + 1):
        part = LaurentPoly.var(zvar(j)) * t if family == "aplus" else -one
        for j2 in range(1, n + 1):
            if j2 != j:
                part = part * (one - LaurentPoly.var(zvar(j2)) * t)
        diag_num = diag_num + part

    plus_num = diag_num * num   # over th_t * den
    minus_num = LaurentPoly.zero()  # over th_m * den
    for p in range(1, l + 1):
        Xp = LaurentPoly.var(Xvar(p))
        sub = substitute(num, {Xvar(p): t}).as_laurent()
        if family == "aplus":
            big = theta_at(n, Xp) * sub - th_t * num
        else:
            big = t * theta_at(n, Xp) * sub - Xp * th_t * num
        quot = exact_div(big, Xp - t)
        if family == "aplus":
            quot = t * quot
        if family == "aminus":
            plus_num = plus_num - quot
            minus_num = minus_num - _flip_t(quot)
        else:
            plus_num = plus_num + quot
            minus_num = minus_num + _flip_t(quot)

    per_power = {}
    for nump, th in ((plus_num, th_t), (minus_num, th_m)):
        if nump.is_zero():
            continue
        part = RationalFn._raw(nump, list(den) + [(th, 1)])
        for k, c in series_expand_coeffs(part, "t", point, order).items():
            if abs(k) > order or c.is_zero():
                continue
            prev = per_power.get(k)
            per_power[k] = c if prev is None else prev + c
    coeffs = {}
    for k, c in per_power.items():
        if c.is_zero():
            continue
        _check_skew_poly(c.num, l)
        elem = collect_skew(c, n, l)
        if not elem.is_zero():
            coeffs[k] = elem
    if family == "aplus":
        assert all(k >= 1 for k in coeffs), "a_plus series must start at t^1"
    else:
        assert all(k <= -1 for k in coeffs), "a_minus series must end at t^-1"
    return coeffs


def _check_skew_poly(num: LaurentPoly, l: int):
    """Structural skewness of a polynomial in X1..Xl (slot-free coefficients)."""
    if l <= 1:
        return
    table = {}
    for mono, coeff in num.terms.items():
        exps = [0] * l
        rest = []
        for name, e in mono:
            if name.startswith("X") and name[1:].isdigit() and 1 <= int(name[1:]) <= l:
                exps[int(name[1:]) - 1] = e
            else:
                rest.append((name, e))
        table[(tuple(exps), tuple(rest))] = coeff
    from .wedge import _perm_sign

    for (exps, rest), coeff in table.items():
        if len(set(exps)) != l:
            raise AssertionError("skew polynomial has a repeated slot exponent")
        order = sorted(range(l), key=lambda a: exps[a])
        sgn = _perm_sign(order)
        skey = (tuple(sorted(exps)), rest)
        ref = table.get(skey)
        if ref is None or ref != (coeff if sgn > 0 else -coeff):
            raise AssertionError("a-series output failed to be skew symmetric")


def _fact(l: int) -> int:
    out = 1
    for j in range(2, l + 1):
        out *= j
    return out


def _flip_t(p: LaurentPoly) -> LaurentPoly:
    out = {}
    for mono, coeff in p.terms.items():
        e = dict(mono).get("t", 0)
        out[mono] = coeff if e % 2 == 0 else -coeff
    return LaurentPoly(out)


# ---------------------------------------------------------------------------
# single modes and words
# ---------------------------------------------------------------------------


def apply_mode(g: GenMode, P: WedgeElem, expect_polynomial: bool = False) -> WedgeElem:
    """x_k^, a-mode, divided k = 0 mode, or t1 scalar applied to P."""
    n, l = P.n, P.l
    if g.family == "t1":
        return P.scaled(i_power(g.k * (n - 2 * l)))
    if g.family == "aplus" or g.family == "aminus":
        point = "zero" if g.k > 0 else "inf"
        series = act_series(g.family, P, abs(g.k), point)
        return mode_extract(series, g.k)
    if g.family == "xminus":
        point = "zero" if g.k >= 1 else "inf"
    elif g.family == "xplus":
        point = "zero" if g.k >= 0 else "inf"
    elif g.family == "xminus2":
        point = "inf"   # k = 0 lives in the nonpositive half
    else:
        point = "zero"  # xplus2, k = 0 lives in the nonnegative half
    series = act_series(g.family, P, abs(g.k), point, expect_polynomial=expect_polynomial)
    return mode_extract(series, g.k)


def apply_word(word, P: WedgeElem, expect_polynomial: bool = False) -> WedgeElem:
    """Apply modes right to left, like operator composition."""
    out = P
    for g in reversed(list(word)):
        out = apply_mode(g, out, expect_polynomial=expect_polynomial)
    return out


def xminus(k: int) -> GenMode:
    return GenMode("xminus", k)


def xplus(k: int) -> GenMode:
    return GenMode("xplus", k)


# ---------------------------------------------------------------------------
# relation spot checks
# ---------------------------------------------------------------------------


def relation_spotcheck(relation: str, samples) -> dict:
    """Exact pass/fail report for a selected defining relation.

    relation ids: "t1-conjugation", "a-commutativity", "a-x-bracket",
    "ex-bracket-diagonal".  `samples` is an iterable of WedgeElem (with small
    mode indices chosen internally).
    """
    failures = []
    checked = 0
    for P in samples:
        if relation == "t1-conjugation":
            for k in (-1, 0, 1, 2):
                lhs = apply_word([GenMode("t1", 1), xminus(k), GenMode("t1", -1)], P)
                rhs = -apply_mode(xminus(k), P)
                checked += 1
                if lhs != rhs:
                    failures.append((relation, k))
        elif relation == "a-commutativity":
            for m1, m2 in ((2, 4), (1, 2), (-2, 2)):
                lhs = apply_word([atilde(m1), atilde(m2)], P)
                rhs = apply_word([atilde(m2), atilde(m1)], P)
                checked += 1
                if lhs != rhs:
                    failures.append((relation, (m1, m2)))
        elif relation == "a-x-bracket":
            # [a_m, x^-_k] = -(i^m + (-i)^m) x^-_{k+m}
            for m, k in ((2, 0), (2, 1), (1, 1), (-2, 1)):
                lhs = apply_word([atilde(m), xminus(k)], P) - apply_word([xminus(k), atilde(m)], P)
                coeff = i_power(m) + i_power(-m)
                rhs = apply_mode(xminus(k + m), P).scaled(-coeff)
                checked += 1
                if lhs != rhs:
                    failures.append((relation, (m, k)))
        elif relation == "ex-bracket-diagonal":
            m = P.weight()
            lhs = apply_word([xplus(0), xminus(0)], P) - apply_word([xminus(0), xplus(0)], P)
            scalar = (i_power(m) - i_power(-m)) / (CycScalar(2) * I)
            rhs = P.scaled(scalar)
            checked += 1
            if lhs != rhs:
                failures.append((relation, m))
        else:
            raise ValueError("unknown relation id %r" % relation)
    return {"relation": relation, "checked": checked, "failures": failures,
            "passed": not failures}
