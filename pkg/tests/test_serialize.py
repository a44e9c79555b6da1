import json
import random

import pytest

from toricbundle import catalog
from toricbundle.algebra import Coeff, Mode
from toricbundle.checks import random_xpoly
from toricbundle.fan import FanInputError
from toricbundle.presentation import build
from toricbundle.reducer import Reducer
from toricbundle.ringops import SpecializationTarget, mult_table, specialize
from toricbundle.serialize import (coeff_from_json, coeff_to_json, dumps, fan_from_json,
                                   fan_to_json, normal_form_from_json, normal_form_to_json,
                                   presentation_from_json, presentation_to_json,
                                   specialized_table_from_json, specialized_table_to_json,
                                   table_from_json, table_to_json, xpoly_from_json, xpoly_to_json)
from toricbundle.shelling import find_shelling


def through_text(obj):
    return json.loads(dumps(obj))


def test_coeff_encoding():
    c = Coeff({(2, -1): 10 ** 30, (0, 0): -3}, 2, Mode.MULTIPLICATIVE)
    data = coeff_to_json(c)
    assert data == [[[0, 0], "-3"], [[2, -1], str(10 ** 30)]]
    assert coeff_from_json(through_text(data), 2, Mode.MULTIPLICATIVE) == c


@pytest.mark.parametrize("name", sorted(catalog.catalog()))
def test_fan_round_trip(name):
    fan = catalog.get(name)
    sd = find_shelling(fan)
    back, order = fan_from_json(through_text(fan_to_json(fan, sd.order)))
    assert back == fan and back.name == fan.name and order == sd.order


@pytest.mark.parametrize("data,msg", [
    ([], "JSON object"),
    ({"dim": 2, "rays": [[1, 0]]}, "max_cones"),
    ({"dim": 2, "rays": [[1.0, 0]], "max_cones": [[1]]}, "integers"),
    ({"dim": 2, "rays": [[1, 0], [0, 1]], "max_cones": [[1, 2]], "order": [2]}, "permutation"),
    ({"dim": 2, "rays": [[True, 0]], "max_cones": [[1]]}, "integers"),
])
def test_fan_input_errors(data, msg):
    with pytest.raises(FanInputError, match=msg):
        fan_from_json(data)


@pytest.mark.parametrize("mode", list(Mode))
@pytest.mark.parametrize("name", ["p2", "hirzebruch_3", "oda_84"])
def test_algebra_round_trips(name, mode):
    fan = catalog.get(name)
    sd = find_shelling(fan)
    pres = build(fan, sd, mode)
    assert presentation_from_json(through_text(presentation_to_json(pres))) == pres
    red = Reducer(fan, sd, mode)
    rng = random.Random(2)
    for _ in range(10):
        p = random_xpoly(fan, mode, rng)
        assert xpoly_from_json(through_text(xpoly_to_json(p)), fan.d, fan.dim, mode) == p
        nf = red.reduce(p)
        assert normal_form_from_json(through_text(normal_form_to_json(nf))) == nf
    t = mult_table(red)
    back = table_from_json(through_text(table_to_json(t)))
    assert back.entries == t.entries and back.basis == t.basis


def test_specialized_table_round_trip():
    fan = catalog.get("p1")
    sd = find_shelling(fan)
    t = mult_table(Reducer(fan, sd, Mode.ADDITIVE))
    target = SpecializationTarget.truncated([2], [Coeff({(1,): 3}, 1)])
    rows = specialize(t, target)
    assert specialized_table_from_json(through_text(
        specialized_table_to_json(rows, t.basis, target))) == rows


def test_dumps_sorted_and_deterministic():
    fan = catalog.get("p2")
    text = dumps(fan_to_json(fan))
    assert text == dumps(fan_to_json(catalog.get("p2")))
    keys = list(json.loads(text))
    assert keys == sorted(keys)
