"""Verification suites shared by the `check` command and the acceptance tests."""

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .algebra import Coeff, Mode, XPoly
from .fan import Fan
from .lattice import pairing
from .oracle import AdditiveOracle, FreenessViolation, MultiplicativeOracle, random_nonzero_r
from .presentation import Presentation, build, exponential_relation
from .reducer import Reducer
from .ringops import associativity_failures, mult_table
from .shelling import ShellingData


@dataclass
class SuiteResult:
    name: str
    passed: bool
    checked: int = 0
    details: List[str] = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" ({self.details[0]})" if self.details and not self.passed else ""
        return f"{status} {self.name}: {self.checked} checked{extra}"


def random_coeff(n: int, mode: Mode, rng: random.Random, max_degree: int = 2) -> Coeff:
    terms = {}
    for _ in range(rng.randint(1, 2)):
        deg = rng.randint(0, max_degree)
        e = [0] * n
        for _ in range(deg):
            k = rng.randrange(n)
            if mode is Mode.MULTIPLICATIVE and rng.random() < 0.5:
                e[k] -= 1
            else:
                e[k] += 1
        terms[tuple(e)] = rng.choice([-3, -2, -1, 1, 2, 3])
    return Coeff(terms, n, mode)


def random_xpoly(fan: Fan, mode: Mode, rng: random.Random, max_x_degree: int = 4,
                 max_r_degree: int = 2, max_terms: int = 4) -> XPoly:
    """Random polynomial; about half the monomials are supported on cones."""
    d, n = fan.d, fan.dim
    faces = sorted((sorted(f) for f in fan.faces if f))
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        deg = rng.randint(0, max_x_degree)
        e = [0] * d
        if rng.random() < 0.5 and deg:
            face = rng.choice([f for f in faces if len(f) <= deg])
            for k in face:
                e[k] += 1
            for _ in range(deg - len(face)):
                e[rng.choice(face)] += 1
        else:
            for _ in range(deg):
                e[rng.randrange(d)] += 1
        c = random_coeff(n, mode, rng, max_r_degree)
        key = tuple(e)
        terms[key] = terms[key] + c if key in terms else c
    return XPoly({k: v for k, v in terms.items() if v}, d, n, mode)


def agreement_additive(fan: Fan, sd: ShellingData, samples: int, seed: int,
                       reducer: Optional[Reducer] = None) -> SuiteResult:
    pres = build(fan, sd, Mode.ADDITIVE)
    reducer = reducer or Reducer(fan, sd, Mode.ADDITIVE)
    oracle = AdditiveOracle(fan, sd, pres)
    rng = random.Random(seed)
    res = SuiteResult(f"oracle agreement (additive, {fan.name})", True)
    for _ in range(samples):
        p = random_xpoly(fan, Mode.ADDITIVE, rng)
        mine = list(reducer.reduce(p).coeffs)
        theirs = oracle.normal_form(p)
        res.checked += 1
        if mine != theirs:
            res.passed = False
            res.details.append(f"mismatch on {p}")
    return res


def agreement_multiplicative(fan: Fan, sd: ShellingData, samples: int, seed: int,
                             specializations: int = 1,
                             reducer: Optional[Reducer] = None) -> SuiteResult:
    pres = build(fan, sd, Mode.MULTIPLICATIVE)
    reducer = reducer or Reducer(fan, sd, Mode.MULTIPLICATIVE)
    rng = random.Random(seed)
    res = SuiteResult(f"oracle agreement (multiplicative, {fan.name})", True)
    polys = [random_xpoly(fan, Mode.MULTIPLICATIVE, rng) for _ in range(samples)]
    for _ in range(specializations):
        rv = random_nonzero_r(fan.dim, rng)
        oracle = MultiplicativeOracle(fan, sd, pres, rv)
        for p in polys:
            mine = [c.evaluate(rv) for c in reducer.reduce(p).coeffs]
            theirs = oracle.normal_form(p)
            res.checked += 1
            if mine != theirs:
                res.passed = False
                res.details.append(f"mismatch at r={rv} on {p}")
    return res


def freeness_additive(fan: Fan, sd: ShellingData, max_degree: Optional[int] = None) -> SuiteResult:
    oracle = AdditiveOracle(fan, sd, build(fan, sd, Mode.ADDITIVE))
    top = fan.dim + 2 if max_degree is None else max_degree
    res = SuiteResult(f"freeness (additive, {fan.name})", True)
    for k in range(top + 1):
        got, want = oracle.quotient_dimension(k)
        res.checked += 1
        res.details.append(f"degree {k}: {got} (expected {want})")
        try:
            oracle.check_degree(k)
        except FreenessViolation as e:
            res.passed = False
            res.details.insert(0, str(e))
    return res


def freeness_multiplicative(fan: Fan, sd: ShellingData, trials: int, seed: int) -> SuiteResult:
    pres = build(fan, sd, Mode.MULTIPLICATIVE)
    rng = random.Random(seed)
    res = SuiteResult(f"freeness (multiplicative, {fan.name})", True)
    for _ in range(trials):
        rv = random_nonzero_r(fan.dim, rng)
        oracle = MultiplicativeOracle(fan, sd, pres, rv)
        res.checked += 1
        try:
            dim = oracle.dimension
            res.details.append(f"r={rv}: dimension {dim} at degree {oracle.stabilize()}")
        except FreenessViolation as e:
            res.passed = False
            res.details.insert(0, f"r={rv}: {e}")
    return res


def soundness(fan: Fan, sd: ShellingData, mode: Mode, reducer: Optional[Reducer] = None,
              seed: int = 0, samples: int = 3) -> SuiteResult:
    """Every relation times random cone monomials reduces to zero."""
    mode = Mode(mode)
    pres = build(fan, sd, mode)
    reducer = reducer or Reducer(fan, sd, mode)
    rng = random.Random(seed)
    faces = sorted(sorted(f) for f in fan.faces)
    res = SuiteResult(f"relations reduce to zero ({mode.value}, {fan.name})", True)
    for rel in pres.relations:
        for _ in range(samples):
            q = XPoly.from_cone(rng.choice(faces), fan.d, fan.dim, mode)
            res.checked += 1
            if not reducer.reduce(rel.poly * q).is_zero():
                res.passed = False
                res.details.append(f"{rel.kind} relation times {q} does not vanish")
    return res


def random_u_membership(fan: Fan, sd: ShellingData, samples: int, seed: int,
                        reducer: Optional[Reducer] = None) -> SuiteResult:
    """z(u) for u outside the generating set still reduces to zero."""
    reducer = reducer or Reducer(fan, sd, Mode.MULTIPLICATIVE)
    rng = random.Random(seed)
    res = SuiteResult(f"z(u) for random u ({fan.name})", True)
    for _ in range(samples):
        u = tuple(rng.randint(-2, 2) for _ in range(fan.dim))
        res.checked += 1
        if not reducer.reduce(exponential_relation(fan, sd, u)).is_zero():
            res.passed = False
            res.details.append(f"z{u} does not reduce to zero")
    return res


def algebra_laws(fan: Fan, sd: ShellingData, mode: Mode, triples: int, seed: int,
                 reducer: Optional[Reducer] = None) -> SuiteResult:
    reducer = reducer or Reducer(fan, sd, mode)
    table = mult_table(reducer)
    rng = random.Random(seed)
    m = table.m
    res = SuiteResult(f"commutativity and associativity ({Mode(mode).value}, {fan.name})", True)
    if not table.is_symmetric():
        res.passed = False
        res.details.append("table is not symmetric")
    picks = [(rng.randrange(m), rng.randrange(m), rng.randrange(m)) for _ in range(triples)]
    bad = associativity_failures(table, picks)
    res.checked = len(picks) + 1
    if bad:
        res.passed = False
        res.details.append(f"associativity fails on {bad[:3]}")
    return res
