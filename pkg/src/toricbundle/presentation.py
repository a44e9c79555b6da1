"""Generators and relations of the rings R (additive) and K-type ring (multiplicative).

Both rings are quotients of S[x_1..x_d]. The shared monomial relations kill
x(gamma) for every minimal non-face gamma. The additive ring adds the linear
forms y_i = sum_j <u_i, v_j> x_j - r_i; the multiplicative ring adds

    z(u) = prod_{<u,v_j> > 0} (1 - x_j)^<u,v_j>  -  r(u) prod_{<u,v_j> < 0} (1 - x_j)^-<u,v_j>

for u in a finite set U. Here u_1..u_n is the basis of M dual to the rays of
the last cone in the order, and r(u) = prod_i r_i^{a_i} where u = sum a_i u_i.
"""

from dataclasses import dataclass
from typing import List, Optional, Tuple

from .algebra import Coeff, Mode, XPoly, r_u_additive, r_u_multiplicative
from .fan import Cone, Fan
from .lattice import coordinates, pairing
from .shelling import ShellingData, UnsupportedFanError


@dataclass(frozen=True)
class Relation:
    kind: str               # "monomial", "linear" or "exponential"
    poly: XPoly
    nonface: Optional[Cone] = None
    u: Optional[Tuple[int, ...]] = None


@dataclass(frozen=True)
class Presentation:
    mode: Mode
    d: int
    n: int
    relations: Tuple[Relation, ...]

    @property
    def monomial_relations(self) -> List[Relation]:
        return [r for r in self.relations if r.kind == "monomial"]

    @property
    def other_relations(self) -> List[Relation]:
        return [r for r in self.relations if r.kind != "monomial"]

    @property
    def polys(self) -> List[XPoly]:
        return [r.poly for r in self.relations]


def r_of_u(fan: Fan, sd: ShellingData, u, mode: Mode) -> Coeff:
    a = coordinates(u, [fan.rays[j] for j in sd.sigma_m_rays])
    if mode is Mode.ADDITIVE:
        return r_u_additive(a)
    return r_u_multiplicative(a)


def _monomial_relations(fan: Fan, mode: Mode) -> List[Relation]:
    out = []
    for nf in sorted(fan.minimal_nonfaces(), key=lambda c: (len(c), sorted(c))):
        out.append(Relation("monomial", XPoly.from_cone(nf, fan.d, fan.dim, mode), nonface=nf))
    return out


def _require_star(sd: ShellingData):
    if not sd.star_ok:
        raise UnsupportedFanError("the order does not satisfy condition (*)")


def linear_relation(fan: Fan, sd: ShellingData, u) -> XPoly:
    """sum_j <u, v_j> x_j - r_u in additive mode."""
    n, d = fan.dim, fan.d
    terms = {}
    for j, v in enumerate(fan.rays):
        c = pairing(u, v)
        if c:
            terms[tuple(1 if k == j else 0 for k in range(d))] = Coeff.const(c, n)
    p = XPoly(terms, d, n, Mode.ADDITIVE)
    return p - r_of_u(fan, sd, u, Mode.ADDITIVE)


def exponential_relation(fan: Fan, sd: ShellingData, u) -> XPoly:
    n, d = fan.dim, fan.d
    mode = Mode.MULTIPLICATIVE
    pos = XPoly.const(1, d, n, mode)
    neg = XPoly.const(1, d, n, mode)
    for j, v in enumerate(fan.rays):
        c = pairing(u, v)
        factor = 1 - XPoly.x(j, d, n, mode)
        if c > 0:
            pos = pos * factor ** c
        elif c < 0:
            neg = neg * factor ** (-c)
    return pos - r_of_u(fan, sd, u, mode) * neg


def exponent_set(fan: Fan) -> List[Tuple[int, ...]]:
    """U: plus and minus the dual basis of every maximal cone, without repeats."""
    seen = set()
    out = []
    for duals in fan.max_cone_duals:
        for j in sorted(duals):
            for u in (duals[j], tuple(-x for x in duals[j])):
                if u not in seen:
                    seen.add(u)
                    out.append(u)
    return out


def build_additive(fan: Fan, sd: ShellingData) -> Presentation:
    _require_star(sd)
    rels = _monomial_relations(fan, Mode.ADDITIVE)
    for u in sd.sigma_m_dual:
        rels.append(Relation("linear", linear_relation(fan, sd, u), u=tuple(u)))
    return Presentation(Mode.ADDITIVE, fan.d, fan.dim, tuple(rels))


def build_multiplicative(fan: Fan, sd: ShellingData) -> Presentation:
    _require_star(sd)
    rels = _monomial_relations(fan, Mode.MULTIPLICATIVE)
    for u in exponent_set(fan):
        z = exponential_relation(fan, sd, u)
        if z:
            rels.append(Relation("exponential", z, u=tuple(u)))
    return Presentation(Mode.MULTIPLICATIVE, fan.d, fan.dim, tuple(rels))


def build(fan: Fan, sd: ShellingData, mode: Mode) -> Presentation:
    mode = Mode(mode)
    return build_additive(fan, sd) if mode is Mode.ADDITIVE else build_multiplicative(fan, sd)
