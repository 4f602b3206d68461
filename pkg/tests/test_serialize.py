import json
import random

from qcycle.laurent import LaurentPoly, RationalFn
from qcycle.serialize import (
    dumps,
    infcycle_to_json,
    poly_from_json,
    poly_to_json,
    ratfn_from_json,
    ratfn_to_json,
    tower_from_json,
    wedge_from_json,
    wedge_to_json,
)
from qcycle.cycles import InfCycle, distinguished_cycle
from qcycle.sampling import random_laurent, random_wedge

import pytest


def test_poly_round_trip():
    rng = random.Random(17)
    for _ in range(25):
        p = random_laurent(rng, 3)
        assert poly_from_json(poly_to_json(p)) == p


def test_poly_rejects_bad_laurent_flag():
    obj = {"vars": ["X1"], "laurent": [False], "terms": [{"exps": [-1], "coeff": "1"}]}
    with pytest.raises(ValueError):
        poly_from_json(obj)


def test_ratfn_round_trip():
    one = LaurentPoly.one()
    z1 = LaurentPoly.var("z1")
    r = RationalFn(one + z1, [one - z1 * LaurentPoly.var("t")])
    back = ratfn_from_json(ratfn_to_json(r))
    assert back == r


def test_wedge_round_trip():
    rng = random.Random(19)
    for n, l in ((2, 1), (3, 2), (4, 0)):
        P = random_wedge(rng, n, l)
        assert wedge_from_json(wedge_to_json(P)) == P


def test_tower_round_trip_and_verification():
    t = distinguished_cycle(1, 5)
    obj = infcycle_to_json(t)
    back = tower_from_json(obj)
    assert isinstance(back, InfCycle)
    assert back == t

    # corrupt one component; verification must reject it
    obj2 = json.loads(dumps(obj))
    obj2["components"][1]["elem"]["terms"][0]["coeff"]["terms"][0]["coeff"] = "2"
    with pytest.raises(Exception):
        tower_from_json(obj2)


def test_dumps_deterministic():
    t = distinguished_cycle(0, 4)
    a = dumps(infcycle_to_json(t))
    b = dumps(infcycle_to_json(distinguished_cycle(0, 4)))
    assert a == b
