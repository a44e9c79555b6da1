"""JSON encodings. Ray and cone indices are 1-based, coefficients are decimal strings."""

import json
from typing import Any, Dict, List, Optional

from .algebra import Coeff, Mode, XPoly
from .fan import Fan, FanInputError
from .presentation import Presentation, Relation
from .reducer import NormalForm
from .ringops import MultTable, SpecializedNF
from .shelling import ShellingData


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, indent=1) + "\n"


def cone_out(c) -> List[int]:
    return [i + 1 for i in sorted(c)]


def cone_in(c) -> frozenset:
    return frozenset(i - 1 for i in c)


# coefficients

def coeff_to_json(c: Coeff) -> List:
    return [[list(e), str(v)] for e, v in sorted(c.terms.items())]


def coeff_from_json(data, nvars: int, mode=Mode.ADDITIVE) -> Coeff:
    return Coeff({tuple(e): int(v) for e, v in data}, nvars, mode)


def xpoly_to_json(p: XPoly) -> List:
    return [[list(e), coeff_to_json(c)] for e, c in sorted(p.terms.items())]


def xpoly_from_json(data, d: int, n: int, mode) -> XPoly:
    return XPoly({tuple(e): coeff_from_json(c, n, mode) for e, c in data}, d, n, mode)


# fans

def fan_to_json(fan: Fan, order=None) -> Dict[str, Any]:
    out = {"dim": fan.dim, "rays": [list(v) for v in fan.rays],
           "max_cones": [cone_out(c) for c in fan.max_cones]}
    if fan.name:
        out["name"] = fan.name
    if order is not None:
        out["order"] = [k + 1 for k in order]
    return out


def _int_list(x, what):
    if not isinstance(x, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in x):
        raise FanInputError(f"{what} must be an array of integers")
    return x


def fan_from_json(data) -> "tuple[Fan, Optional[tuple]]":
    """Parse a fan object; returns (fan, order or None). Order indices become 0-based."""
    if not isinstance(data, dict):
        raise FanInputError("fan file must hold a JSON object")
    for key in ("dim", "rays", "max_cones"):
        if key not in data:
            raise FanInputError(f"missing field {key!r}")
    if not isinstance(data["rays"], list) or not isinstance(data["max_cones"], list):
        raise FanInputError("'rays' and 'max_cones' must be arrays")
    rays = [_int_list(v, f"ray {k + 1}") for k, v in enumerate(data["rays"])]
    cones = [_int_list(c, f"max cone {k + 1}") for k, c in enumerate(data["max_cones"])]
    fan = Fan.from_one_based(data["dim"], rays, cones, name=data.get("name"))
    order = None
    if data.get("order") is not None:
        o = _int_list(data["order"], "order")
        if sorted(o) != list(range(1, fan.m + 1)):
            raise FanInputError(f"order {o} is not a permutation of 1..{fan.m}")
        order = tuple(k - 1 for k in o)
    return fan, order


# shelling

def shelling_to_json(sd: ShellingData) -> Dict[str, Any]:
    return {
        "order": [k + 1 for k in sd.order],
        "sigma": [cone_out(c) for c in sd.sigma],
        "tau": [cone_out(c) for c in sd.tau],
        "tau_prime": [cone_out(c) for c in sd.tau_prime],
        "star": sd.star_ok,
        "star_prime": sd.star_prime_ok,
        "sigma_m_dual": [list(u) for u in sd.sigma_m_dual],
    }


# presentations

def presentation_to_json(p: Presentation) -> Dict[str, Any]:
    rels = []
    for r in p.relations:
        item = {"kind": r.kind, "poly": xpoly_to_json(r.poly)}
        if r.nonface is not None:
            item["nonface"] = cone_out(r.nonface)
        if r.u is not None:
            item["u"] = list(r.u)
        rels.append(item)
    return {"mode": p.mode.value, "d": p.d, "n": p.n, "relations": rels}


def presentation_from_json(data) -> Presentation:
    mode = Mode(data["mode"])
    d, n = data["d"], data["n"]
    rels = []
    for item in data["relations"]:
        rels.append(Relation(item["kind"], xpoly_from_json(item["poly"], d, n, mode),
                             nonface=cone_in(item["nonface"]) if "nonface" in item else None,
                             u=tuple(item["u"]) if "u" in item else None))
    return Presentation(mode, d, n, tuple(rels))


# normal forms and tables

def normal_form_to_json(nf: NormalForm) -> Dict[str, Any]:
    return {"mode": nf.mode.value, "n": nf.coeffs[0].nvars,
            "basis": [cone_out(t) for t in nf.basis],
            "coeffs": [coeff_to_json(c) for c in nf.coeffs], "advisory": nf.advisory}


def normal_form_from_json(data, n: Optional[int] = None) -> NormalForm:
    mode = Mode(data["mode"])
    n = data["n"] if n is None else n
    return NormalForm(tuple(coeff_from_json(c, n, mode) for c in data["coeffs"]), mode,
                      tuple(cone_in(t) for t in data["basis"]), data.get("advisory", False))


def table_to_json(t: MultTable) -> Dict[str, Any]:
    return {"mode": t.mode.value, "n": t.entries[0][0].coeffs[0].nvars,
            "basis": [cone_out(b) for b in t.basis], "advisory": t.advisory,
            "entries": [[[coeff_to_json(c) for c in e.coeffs] for e in row] for row in t.entries]}


def table_from_json(data, n: Optional[int] = None) -> MultTable:
    mode = Mode(data["mode"])
    n = data["n"] if n is None else n
    basis = tuple(cone_in(b) for b in data["basis"])
    entries = [[NormalForm(tuple(coeff_from_json(c, n, mode) for c in e), mode, basis)
                for e in row] for row in data["entries"]]
    return MultTable(entries, mode, basis, data.get("advisory", False))


def specialized_table_to_json(rows, basis, target) -> Dict[str, Any]:
    return {"basis": [cone_out(b) for b in basis], "target": target_to_json(target),
            "entries": [[[coeff_to_json(c) for c in e.coeffs] for e in row] for row in rows]}


def specialized_table_from_json(data):
    s = len(data["target"].get("caps", []))
    basis = tuple(cone_in(b) for b in data["basis"])
    return [[SpecializedNF(tuple(coeff_from_json(c, s) for c in e), basis) for e in row]
            for row in data["entries"]]


def target_to_json(target) -> Dict[str, Any]:
    return {"kind": target.kind, "caps": list(target.caps),
            "values": [coeff_to_json(v) for v in target.values]}
