"""Independent normal forms by exact linear algebra (Macaulay matrices).

Nothing here uses the rewriting rules of the reducer. The only shared input
is the presentation. Monomials whose x-support is a non-face are dropped up
front: quotienting by a monomial ideal is just deleting those coordinates.

Columns are ordered so that the candidate basis monomials x(tau_i) * r^b come
last. Gaussian elimination then puts pivots on every other monomial exactly
when the candidates are independent modulo the relations. The reduced image
of a polynomial therefore reads off directly in the candidate basis.
"""

import heapq
import itertools
import random
from fractions import Fraction

from gmpy2 import mpq
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import Coeff, Mode, XPoly
from .fan import Fan
from .presentation import Presentation
from .shelling import ShellingData

Exp = Tuple[int, ...]


class FreenessViolation(Exception):
    """The quotient is not free on x(tau_1)..x(tau_m). A finding about the input."""


class SparseEliminator:
    """Incremental row echelon form over Q with sparse dict rows."""

    def __init__(self):
        self.pivots: Dict[int, Dict[int, mpq]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, vec: Dict[int, Fraction], stop_at_new_pivot=False):
        vec = {c: mpq(v) for c, v in vec.items() if v}
        heap = list(vec)
        heapq.heapify(heap)
        out = {}
        while heap:
            c = heapq.heappop(heap)
            v = vec.pop(c, 0)
            if not v:
                continue
            row = self.pivots.get(c)
            if row is None:
                out[c] = v
                if stop_at_new_pivot:
                    # rest of vec is carried unreduced
                    for k, w in vec.items():
                        if w:
                            out[k] = w
                    return out, c
                continue
            for k, w in row.items():
                if k == c:
                    continue
                if k in vec:
                    nv = vec[k] - v * w
                    if nv:
                        vec[k] = nv
                    else:
                        del vec[k]
                else:
                    vec[k] = -v * w
                    heapq.heappush(heap, k)
        return out, None

    def insert(self, vec) -> bool:
        rest, lead = self.reduce(vec, stop_at_new_pivot=True)
        if lead is None:
            return False
        p = rest[lead]
        self.pivots[lead] = {k: w / p for k, w in rest.items()}
        return True


def _cone_support(fan: Fan, a: Exp) -> bool:
    return frozenset(k for k, x in enumerate(a) if x) in fan.faces


def _monomials(nvars: int, degree: int):
    """Exponent vectors of the given total degree."""
    for c in itertools.combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for k in c:
            e[k] += 1
        yield tuple(e)


def _basis_sets(sd: ShellingData, d: int):
    return [tuple(1 if k in t else 0 for k in range(d)) for t in sd.tau]


class AdditiveOracle:
    """Graded quotient of Q[x, r] by the additive relations, degree by degree."""

    def __init__(self, fan: Fan, sd: ShellingData, pres: Presentation):
        if pres.mode is not Mode.ADDITIVE:
            raise ValueError("additive oracle needs an additive presentation")
        self.fan, self.sd, self.pres = fan, sd, pres
        self.d, self.n, self.m = fan.d, fan.dim, sd.m
        self._basis = _basis_sets(sd, self.d)
        self._basis_index = {b: i for i, b in enumerate(self._basis)}
        self._linear = [r.poly for r in pres.other_relations]
        self._degrees: Dict[int, tuple] = {}

    def _columns(self, k: int):
        cols = []
        for xdeg in range(k + 1):
            for a in _monomials(self.d, xdeg):
                if not _cone_support(self.fan, a):
                    continue
                for b in _monomials(self.n, k - xdeg):
                    cols.append((a, b))
        # non-basis first, basis last; deterministic inside each block
        cols.sort(key=lambda ab: (ab[0] in self._basis_index, ab))
        return cols

    def degree(self, k: int):
        if k in self._degrees:
            return self._degrees[k]
        cols = self._columns(k)
        index = {c: i for i, c in enumerate(cols)}
        elim = SparseEliminator()
        for xdeg in range(k):
            for a in _monomials(self.d, xdeg):
                if not _cone_support(self.fan, a):
                    continue
                for b in _monomials(self.n, k - 1 - xdeg):
                    for rel in self._linear:
                        row = {}
                        for ea, c in rel.terms.items():
                            aa = tuple(x + y for x, y in zip(a, ea))
                            if not _cone_support(self.fan, aa):
                                continue
                            for eb, v in c.terms.items():
                                col = index[(aa, tuple(x + y for x, y in zip(b, eb)))]
                                row[col] = row.get(col, 0) + v
                        elim.insert(row)
        quotient = len(cols) - elim.rank
        expected = sum(len(list(_monomials(self.n, k - len(t)))) if k >= len(t) else 0
                       for t in self.sd.tau)
        leaked = [cols[c] for c in elim.pivots if cols[c][0] in self._basis_index]
        self._degrees[k] = (cols, index, elim, quotient, expected, leaked)
        return self._degrees[k]

    def quotient_dimension(self, k: int) -> Tuple[int, int]:
        """(computed, predicted) dimension over Q of the degree-k part."""
        _, _, _, q, e, _ = self.degree(k)
        return q, e

    def check_degree(self, k: int):
        _, _, _, q, e, leaked = self.degree(k)
        if q != e or leaked:
            raise FreenessViolation(
                f"degree {k}: quotient dimension {q}, expected {e}"
                + (f"; basis monomials dependent ({len(leaked)} pivots)" if leaked else ""))

    def normal_form(self, p: XPoly) -> List[Coeff]:
        if p.mode is not Mode.ADDITIVE:
            raise ValueError("additive oracle needs an additive polynomial")
        by_degree: Dict[int, Dict[tuple, int]] = {}
        for a, c in p.terms.items():
            for b, v in c.terms.items():
                by_degree.setdefault(sum(a) + sum(b), {})[(a, b)] = v
        coeffs = [dict() for _ in range(self.m)]
        for k, comp in sorted(by_degree.items()):
            self.check_degree(k)
            cols, index, elim, _, _, _ = self.degree(k)
            vec = {}
            for (a, b), v in comp.items():
                if not _cone_support(self.fan, a):
                    continue
                vec[index[(a, b)]] = vec.get(index[(a, b)], 0) + v
            red, _ = elim.reduce(vec)
            for col, v in red.items():
                a, b = cols[col]
                if a not in self._basis_index:
                    raise FreenessViolation(f"degree {k}: {a} survives reduction")
                if v.denominator != 1:
                    raise FreenessViolation(f"non-integral coefficient {v} in degree {k}")
                i = self._basis_index[a]
                coeffs[i][b] = coeffs[i].get(b, 0) + int(v)
        return [Coeff(c, self.n, Mode.ADDITIVE) for c in coeffs]


def oracle_additive(p: XPoly, fan: Fan, sd: ShellingData, pres: Presentation) -> List[Coeff]:
    return AdditiveOracle(fan, sd, pres).normal_form(p)


class MultiplicativeOracle:
    """Quotient of Q[x] by the relations at a numeric specialization of r.

    The quotient is not graded, so plain degree truncation never settles: the
    top layer of monomials stays unreduced. Instead relation multiples are taken
    up to degree D and the quotient is measured on the window of monomials of
    degree <= W. Columns above the window are eliminated first, so the echelon
    rows supported inside the window span exactly (multiples up to D) meet
    (window). The measured dimension can only drop as D grows and is never
    below the true dimension of the quotient.
    """

    def __init__(self, fan: Fan, sd: ShellingData, pres: Presentation,
                 r_values: Sequence[Fraction], max_degree: Optional[int] = None):
        if pres.mode is not Mode.MULTIPLICATIVE:
            raise ValueError("multiplicative oracle needs a multiplicative presentation")
        if any(Fraction(v) == 0 for v in r_values):
            raise ValueError("specialized r_i must be nonzero")
        self.fan, self.sd, self.pres = fan, sd, pres
        self.d, self.n, self.m = fan.d, fan.dim, sd.m
        self.r_values = [Fraction(v) for v in r_values]
        self._basis = _basis_sets(sd, self.d)
        self._basis_index = {b: i for i, b in enumerate(self._basis)}
        self._rels = []
        for rel in pres.other_relations:
            spec = {}
            for a, c in rel.poly.terms.items():
                if not _cone_support(fan, a):
                    continue
                v = c.evaluate(self.r_values)
                if v:
                    spec[a] = v
            if spec:
                self._rels.append(spec)
        self.max_degree = max_degree or 4 * fan.dim + 8
        self._cache: Dict[Tuple[int, int], tuple] = {}
        self._stable: Dict[int, int] = {}
        self.history: Dict[int, List[Tuple[int, int]]] = {}

    def _columns(self, D: int, W: int):
        cols = [a for k in range(D + 1) for a in _monomials(self.d, k)
                if _cone_support(self.fan, a)]
        # outside the window first, then window non-basis, basis last
        cols.sort(key=lambda a: (sum(a) <= W, a in self._basis_index, -sum(a), a))
        return cols

    def truncation(self, D: int, W: int):
        key = (D, W)
        if key in self._cache:
            return self._cache[key]
        cols = self._columns(D, W)
        index = {a: i for i, a in enumerate(cols)}
        first_window = next((i for i, a in enumerate(cols) if sum(a) <= W), len(cols))
        elim = SparseEliminator()
        for rel in self._rels:
            rdeg = max(sum(a) for a in rel)
            for k in range(D - rdeg + 1):
                for mono in _monomials(self.d, k):
                    if not _cone_support(self.fan, mono):
                        continue
                    row = {}
                    for a, v in rel.items():
                        aa = tuple(x + y for x, y in zip(mono, a))
                        if aa in index:
                            row[index[aa]] = row.get(index[aa], 0) + v
                    elim.insert(row)
        window_pivots = [c for c in elim.pivots if c >= first_window]
        dim = len(cols) - first_window - len(window_pivots)
        leaked = [cols[c] for c in window_pivots if cols[c] in self._basis_index]
        self._cache[key] = (cols, index, elim, dim, leaked)
        return self._cache[key]

    def window(self, p_degree: int = 0) -> int:
        return max(self.n, p_degree)

    def stabilize(self, W: Optional[int] = None) -> int:
        """Smallest D at which the window dimension reaches m (and stays there at D+1)."""
        W = self.window() if W is None else W
        if W in self._stable:
            return self._stable[W]
        hist = self.history.setdefault(W, [])
        prev = None
        for D in range(W, self.max_degree + 1):
            dim = self.truncation(D, W)[3]
            hist.append((D, dim))
            if dim < self.m:
                raise FreenessViolation(f"window dimension {dim} fell below {self.m}")
            if dim == self.m and prev == dim:
                if self.truncation(D, W)[4]:
                    raise FreenessViolation("basis monomials are dependent in the quotient")
                self._stable[W] = D
                return D
            prev = dim
        raise FreenessViolation(
            f"window dimension did not stabilize at {self.m} by degree {self.max_degree}: {hist}")

    @property
    def dimension(self) -> int:
        W = self.window()
        return self.truncation(self.stabilize(W), W)[3]

    def normal_form(self, p: XPoly) -> List[Fraction]:
        W = self.window(max(p.x_degree(), 0))
        D = self.stabilize(W)
        cols, index, elim, _, _ = self.truncation(D, W)
        vec = {}
        for a, c in p.terms.items():
            if not _cone_support(self.fan, a):
                continue
            v = c.evaluate(self.r_values)
            if v:
                vec[index[a]] = vec.get(index[a], 0) + v
        red, _ = elim.reduce(vec)
        out = [Fraction(0)] * self.m
        for col, v in red.items():
            a = cols[col]
            if a not in self._basis_index:
                raise FreenessViolation(f"{a} survives reduction")
            out[self._basis_index[a]] += Fraction(int(v.numerator), int(v.denominator))
        return out


def random_nonzero_r(n: int, rng: random.Random, bound: int = 5) -> List[int]:
    return [rng.choice([k for k in range(-bound, bound + 1) if k]) for _ in range(n)]


def oracle_multiplicative(p: XPoly, fan: Fan, sd: ShellingData, pres: Presentation,
                          seed: int = 0) -> Tuple[List[int], List[Fraction]]:
    rv = random_nonzero_r(fan.dim, random.Random(seed))
    return rv, MultiplicativeOracle(fan, sd, pres, rv).normal_form(p)
