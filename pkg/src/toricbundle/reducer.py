"""Normal forms over the monomials x(tau_1), ..., x(tau_m).

Every rewrite uses one relation attached to a maximal cone B and a ray j of B.
Let u be the dual vector of v_j inside B, so <u, v_k> = 0 for the other rays
of B. Writing c_k = <u, v_k>:

additive        x_j = r_u - sum_{k not in B} c_k x_k
multiplicative  x_j = G - x_j P'   with  P = prod_{k not in B, c_k > 0} (1 - x_k)^c_k,
                                        Q = prod_{c_k < 0} (1 - x_k)^-c_k,
                                        G = P - r_u Q,  P' = P - 1

A monomial x^a with cone support g is rewritten as x^(a - e_j) * G - x^a * P'
using B = sigma_i, where i is the first cone of the order containing g:

* if some exponent of x^a is at least 2, j is the first such ray;
* if x^a = x(g) with g != tau_i, j is the first ray of g outside tau_i.

Every term produced either stays in interval i with smaller support or lower
degree, or has support meeting a ray outside sigma_i. In the second case
condition (*) puts the support in a strictly later interval. Hence recursion on
(interval descending, support size, degree) terminates. Monomials with
non-face support vanish, and x(tau_i) is the i-th basis element.
"""

import sys
from contextlib import contextmanager
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import Coeff, Mode, XPoly
from .fan import Cone, Fan, label
from .lattice import coordinates, pairing
from .shelling import ShellingData, UnsupportedFanError

Exp = Tuple[int, ...]
Sparse = Dict[int, Coeff]


class ReductionBudgetExceeded(RuntimeError):
    """The rewrite count passed its budget; a termination invariant is broken."""


@dataclass(frozen=True)
class NormalForm:
    coeffs: Tuple[Coeff, ...]
    mode: Mode
    basis: Tuple[Cone, ...] = field(compare=False)
    advisory: bool = field(default=False, compare=False)

    @property
    def m(self) -> int:
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __add__(self, other):
        return NormalForm(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.mode,
                          self.basis, self.advisory or other.advisory)

    def __sub__(self, other):
        return NormalForm(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)), self.mode,
                          self.basis, self.advisory or other.advisory)

    def scale(self, c):
        return NormalForm(tuple(c * a for a in self.coeffs), self.mode, self.basis, self.advisory)

    def __str__(self):
        parts = []
        for c, t in zip(self.coeffs, self.basis):
            if c:
                parts.append(f"({c})*x{label(t)}" if t else f"({c})")
        return " + ".join(parts) if parts else "0"


@contextmanager
def _deep_recursion(limit=100000):
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, limit))
    try:
        yield
    finally:
        sys.setrecursionlimit(old)


class Reducer:
    """Reduction engine for one (fan, order, mode); memo tables live here."""

    def __init__(self, fan: Fan, sd: ShellingData, mode: Mode, budget: int = 10 ** 7):
        if not sd.star_ok:
            raise UnsupportedFanError("reduction needs an order satisfying (*)")
        self.fan, self.sd, self.mode = fan, sd, Mode(mode)
        self.d, self.n, self.m = fan.d, fan.dim, sd.m
        self.budget = budget
        self.steps = 0
        self.advisory = False
        self._faces = fan.faces
        self._tau_index = {t: i for i, t in enumerate(sd.tau)}
        self._loc = {g: sd.locate_interval(g) for g in self._faces}
        self._memo: Dict[Exp, Sparse] = {}
        self._rules: Dict[Tuple[int, int], tuple] = {}
        self._sigma_m_vectors = [fan.rays[j] for j in sd.sigma_m_rays]
        self._one = Coeff.one(self.n, self.mode)

    # -- relation data ---------------------------------------------------

    def r_u(self, u) -> Coeff:
        a = coordinates(u, self._sigma_m_vectors)
        if self.mode is Mode.ADDITIVE:
            return Coeff({tuple(1 if k == i else 0 for k in range(self.n)): ai
                          for i, ai in enumerate(a)}, self.n, self.mode)
        return Coeff({a: 1}, self.n, self.mode)

    def _rule(self, i: int, j: int):
        """(G terms, P' terms) for ray j in sigma_i, as lists of (exponent, coefficient)."""
        key = (i, j)
        if key in self._rules:
            return self._rules[key]
        beta = self.sd.sigma[i]
        u = self.fan.max_cone_duals[self.sd.order[i]][j]
        d, n, mode = self.d, self.n, self.mode
        c = [pairing(u, v) for v in self.fan.rays]
        assert c[j] == 1 and all(c[k] == 0 for k in beta if k != j)
        ru = self.r_u(u)
        if mode is Mode.ADDITIVE:
            g = [((0,) * d, ru)]
            for k in range(d):
                if k not in beta and c[k]:
                    g.append((tuple(1 if t == k else 0 for t in range(d)),
                              Coeff.const(-c[k], n, mode)))
            rule = (g, [])
        else:
            P = XPoly.const(1, d, n, mode)
            Q = XPoly.const(1, d, n, mode)
            for k in range(d):
                if k in beta:
                    continue
                f = 1 - XPoly.x(k, d, n, mode)
                if c[k] > 0:
                    P = P * f ** c[k]
                elif c[k] < 0:
                    Q = Q * f ** (-c[k])
            G = P - ru * Q
            P1 = P - 1
            rule = (list(G.terms.items()), list(P1.terms.items()))
        self._rules[key] = rule
        return rule

    # -- reduction -------------------------------------------------------

    def reduce_monomial(self, a: Exp) -> Sparse:
        memo = self._memo
        if a in memo:
            return memo[a]
        supp = frozenset(k for k, x in enumerate(a) if x)
        if supp not in self._faces:
            memo[a] = {}
            return memo[a]
        squarefree = all(x <= 1 for x in a)
        if squarefree and supp in self._tau_index:
            memo[a] = {self._tau_index[supp]: self._one}
            return memo[a]
        self.steps += 1
        if self.steps > self.budget:
            raise ReductionBudgetExceeded(f"more than {self.budget} rewrites")
        i = self._loc[supp]
        if squarefree:
            j = min(supp - self.sd.tau[i])
        else:
            j = next(k for k, x in enumerate(a) if x >= 2)
        G, P1 = self._rule(i, j)
        base = list(a)
        base[j] -= 1
        out: Sparse = {}
        faces = self._faces
        for e, c in G:
            b = tuple(x + y for x, y in zip(base, e))
            if frozenset(k for k, x in enumerate(b) if x) in faces:
                _accumulate(out, c, self.reduce_monomial(b))
        for e, c in P1:
            b = tuple(x + y for x, y in zip(a, e))
            if frozenset(k for k, x in enumerate(b) if x) in faces:
                _accumulate(out, -c, self.reduce_monomial(b))
        memo[a] = out
        return out

    def _check(self, p: XPoly):
        if p.mode is not self.mode:
            raise UnsupportedFanError(f"{p.mode.value} polynomial given to a {self.mode.value} reducer")
        if p.d != self.d or p.n != self.n:
            raise ValueError("polynomial lives in a different ring")

    def reduce(self, p: XPoly) -> NormalForm:
        self._check(p)
        out: Sparse = {}
        with _deep_recursion():
            for a, c in p.terms.items():
                _accumulate(out, c, self.reduce_monomial(a))
        return self.normal_form(out)

    def normal_form(self, sparse: Sparse) -> NormalForm:
        zero = Coeff.zero(self.n, self.mode)
        return NormalForm(tuple(sparse.get(i, zero) for i in range(self.m)), self.mode,
                          self.sd.tau, self.advisory)

    def basis_poly(self, i: int) -> XPoly:
        return XPoly.from_cone(self.sd.tau[i], self.d, self.n, self.mode)

    def warm_up(self):
        """Reduce every squarefree cone monomial once so later use is read-only."""
        with _deep_recursion():
            for g in sorted(self._faces, key=lambda g: (len(g), sorted(g))):
                self.reduce_monomial(tuple(1 if k in g else 0 for k in range(self.d)))

    def mark_advisory(self):
        self.advisory = True


def _accumulate(out: Sparse, c: Coeff, nf: Sparse):
    for i, v in nf.items():
        t = c * v
        if i in out:
            t = out[i] + t
        if t:
            out[i] = t
        else:
            out.pop(i, None)


@lru_cache(maxsize=64)
def get_reducer(fan: Fan, order: Tuple[int, ...], mode: Mode) -> Reducer:
    from .shelling import shelling_data
    return Reducer(fan, shelling_data(fan, order), Mode(mode))


def _session(fan, sd, mode, pres=None) -> Reducer:
    if pres is not None and pres.mode is not Mode(mode):
        raise UnsupportedFanError("presentation mode does not match")
    return get_reducer(fan, tuple(sd.order), Mode(mode))


def reduce_additive(p: XPoly, fan: Fan, sd: ShellingData, pres=None) -> NormalForm:
    return _session(fan, sd, Mode.ADDITIVE, pres).reduce(p)


def reduce_multiplicative(p: XPoly, fan: Fan, sd: ShellingData, pres=None) -> NormalForm:
    return _session(fan, sd, Mode.MULTIPLICATIVE, pres).reduce(p)
