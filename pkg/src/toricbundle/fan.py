"""Simplicial fans given by rays and maximal cones.

Cones are frozensets of 0-based ray indices. Files and printed output use
1-based indices; conversion happens at the I/O boundary only.
"""

import itertools
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .lattice import (DimensionError, InvalidRayError, dual_basis, is_primitive,
                      pairing, rank, unimodularity_diagnostic)

Cone = FrozenSet[int]


class FanInputError(ValueError):
    """Structurally malformed fan data (bad indices, wrong lengths)."""


def label(cone) -> str:
    """1-based set notation, e.g. {1,3}."""
    return "{" + ",".join(str(i + 1) for i in sorted(cone)) + "}"


@dataclass
class ValidationReport:
    simplicial: bool = True
    smooth: bool = True
    pure: bool = True
    complete: bool = True
    fan_condition: bool = True
    diagnostics: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.simplicial and self.smooth and self.pure and self.complete \
            and self.fan_condition


class Fan:
    """A simplicial fan in Z^dim.

    >>> p1 = Fan(1, [(1,), (-1,)], [[0], [1]])
    >>> sorted(map(sorted, p1.minimal_nonfaces()))
    [[0, 1]]
    """

    def __init__(self, dim: int, rays: Sequence[Sequence[int]],
                 max_cones: Sequence[Sequence[int]], name: Optional[str] = None):
        if not isinstance(dim, int) or dim < 1:
            raise FanInputError(f"dim must be a positive integer, got {dim!r}")
        self.dim = dim
        self.name = name
        self.rays: Tuple[Tuple[int, ...], ...] = tuple(tuple(int(c) for c in v) for v in rays)
        for k, v in enumerate(self.rays):
            if len(v) != dim:
                raise FanInputError(f"ray {k + 1} has length {len(v)}, expected {dim}")
        cones = []
        for k, c in enumerate(max_cones):
            idx = list(c)
            for i in idx:
                if not isinstance(i, int) or not 0 <= i < len(self.rays):
                    raise FanInputError(f"max cone {k + 1}: ray index {i!r} out of range")
            if len(set(idx)) != len(idx):
                raise FanInputError(f"max cone {k + 1}: repeated ray index")
            cones.append(frozenset(idx))
        if not cones:
            raise FanInputError("fan has no maximal cones")
        self.max_cones: Tuple[Cone, ...] = tuple(cones)

    @classmethod
    def from_one_based(cls, dim, rays, max_cones, name=None) -> "Fan":
        for k, c in enumerate(max_cones):
            for i in c:
                if not isinstance(i, int) or i < 1:
                    raise FanInputError(f"max cone {k + 1}: ray index {i!r} out of range")
        return cls(dim, rays, [[i - 1 for i in c] for c in max_cones], name=name)

    @property
    def d(self) -> int:
        return len(self.rays)

    @property
    def m(self) -> int:
        return len(self.max_cones)

    def __repr__(self):
        return f"Fan(name={self.name!r}, dim={self.dim}, d={self.d}, m={self.m})"

    def __eq__(self, other):
        return isinstance(other, Fan) and self.dim == other.dim and \
            self.rays == other.rays and self.max_cones == other.max_cones

    def __hash__(self):
        return hash((self.dim, self.rays, self.max_cones))

    # -- combinatorics -------------------------------------------------

    @cached_property
    def faces(self) -> FrozenSet[Cone]:
        out = set()
        for c in self.max_cones:
            s = sorted(c)
            for k in range(len(s) + 1):
                out.update(frozenset(t) for t in itertools.combinations(s, k))
        return frozenset(out)

    def all_faces(self) -> FrozenSet[Cone]:
        return self.faces

    def is_face(self, rays) -> bool:
        return frozenset(rays) in self.faces

    def f_vector(self) -> List[int]:
        counts = Counter(len(c) for c in self.faces)
        return [counts.get(k, 0) for k in range(self.dim + 1)]

    def minimal_nonfaces(self) -> FrozenSet[Cone]:
        """Inclusion-minimal ray sets that span no cone."""
        faces = self.faces
        out = set()
        # a minimal non-face has all proper subsets faces; grow faces by one ray
        for size in range(1, self.dim + 2):
            for f in faces:
                if len(f) != size - 1:
                    continue
                for j in range(self.d):
                    if j in f:
                        continue
                    cand = f | {j}
                    if cand in faces or cand in out:
                        continue
                    if all(cand - {k} in faces for k in cand):
                        out.add(cand)
        return frozenset(out)

    def walls(self) -> Dict[Cone, List[int]]:
        """Map each (n-1)-face of a maximal cone to the maximal cones containing it."""
        w = defaultdict(list)
        for k, c in enumerate(self.max_cones):
            if len(c) != self.dim:
                continue
            for r in c:
                w[c - {r}].append(k)
        return dict(w)

    def wall_graph(self) -> Dict[int, List[int]]:
        adj = {k: [] for k in range(self.m)}
        for i, j in itertools.combinations(range(self.m), 2):
            a, b = self.max_cones[i], self.max_cones[j]
            if len(a & b) == self.dim - 1 and len(a) == len(b) == self.dim:
                adj[i].append(j)
                adj[j].append(i)
        return adj

    @cached_property
    def max_cone_duals(self) -> Tuple[Dict[int, Tuple[int, ...]], ...]:
        """For each maximal cone, ray index -> dual vector of that ray within the cone."""
        out = []
        for c in self.max_cones:
            s = sorted(c)
            us = dual_basis([self.rays[j] for j in s])
            out.append(dict(zip(s, us)))
        return tuple(out)

    # -- validation ----------------------------------------------------

    def validate(self) -> ValidationReport:
        rep = ValidationReport()
        diag = rep.diagnostics
        n = self.dim
        for k, v in enumerate(self.rays):
            try:
                if not is_primitive(v):
                    rep.smooth = False
                    diag.append(f"ray {k + 1} {v} is not primitive")
            except InvalidRayError:
                rep.simplicial = False
                diag.append(f"ray {k + 1} is the zero vector")
        seen = {}
        for k, v in enumerate(self.rays):
            if v in seen:
                rep.simplicial = False
                diag.append(f"rays {seen[v] + 1} and {k + 1} coincide")
            seen.setdefault(v, k)
        used = set().union(*self.max_cones)
        for k in range(self.d):
            if k not in used:
                rep.pure = False
                diag.append(f"ray {k + 1} lies in no maximal cone")
        for k, c in enumerate(self.max_cones):
            vecs = [self.rays[j] for j in sorted(c)]
            if len(c) != n:
                rep.pure = False
                diag.append(f"max cone {k + 1} {label(c)} has {len(c)} rays, expected {n}")
            if rank(vecs) < len(vecs):
                rep.simplicial = False
                diag.append(f"max cone {k + 1} {label(c)} has dependent rays")
                continue
            why = unimodularity_diagnostic(vecs)
            if why is not None:
                rep.smooth = False
                diag.append(f"max cone {k + 1} {label(c)} is not unimodular ({why})")
        if len(set(self.max_cones)) != self.m:
            rep.fan_condition = False
            diag.append("repeated maximal cone")
        if rep.simplicial:
            for i, j in itertools.combinations(range(self.m), 2):
                if not self._meet_in_common_face(self.max_cones[i], self.max_cones[j]):
                    rep.fan_condition = False
                    diag.append(f"max cones {i + 1} {label(self.max_cones[i])} and "
                                f"{j + 1} {label(self.max_cones[j])} overlap improperly")
        if not rep.pure:
            rep.complete = False
        else:
            for wall, owners in sorted(self.walls().items(), key=lambda kv: sorted(kv[0])):
                if len(owners) != 2:
                    rep.complete = False
                    diag.append(f"wall {label(wall)} on {len(owners)} cone"
                                f"{'' if len(owners) == 1 else 's'}")
        return rep

    def _meet_in_common_face(self, a: Cone, b: Cone) -> bool:
        """Exact check that cone(a) and cone(b) intersect in cone(a & b)."""
        common = a & b
        av = [self.rays[j] for j in sorted(a)]
        bv = [self.rays[j] for j in sorted(b)]
        extra_a = [k for k, j in enumerate(sorted(a)) if j not in common]
        extra_b = [k for k, j in enumerate(sorted(b)) if j not in common]
        if not extra_a and not extra_b:
            return True
        # feasibility of  sum s_k av_k = sum t_k bv_k, s,t >= 0, with weight on a
        # non-shared generator; infeasible means a proper intersection.
        for side_extra in (extra_a, extra_b):
            if not side_extra:
                continue
            nv = len(av) + len(bv)
            ineq = []  # rows of (coeffs, rhs) meaning coeffs . x >= rhs
            for k in range(nv):
                ineq.append(([1 if t == k else 0 for t in range(nv)], 0))
            for c in range(self.dim):
                row = [v[c] for v in av] + [-v[c] for v in bv]
                ineq.append((row, 0))
                ineq.append(([-x for x in row], 0))
            off = 0 if side_extra is extra_a else len(av)
            norm = [0] * nv
            for k in side_extra:
                norm[off + k] = 1
            ineq.append((norm, 1))
            ineq.append(([-x for x in norm], -1))
            if feasible(ineq, nv):
                return False
        return True


def feasible(ineqs, nvars: int) -> bool:
    """Exact feasibility of a system of linear inequalities a.x >= b by Fourier-Motzkin."""
    rows = [([Fraction(x) for x in a], Fraction(b)) for a, b in ineqs]
    for var in range(nvars):
        pos, neg, zero = [], [], []
        for a, b in rows:
            (pos if a[var] > 0 else neg if a[var] < 0 else zero).append((a, b))
        new = list(zero)
        for ap, bp in pos:
            for an, bn in neg:
                fp, fn = -an[var], ap[var]
                a = [fp * x + fn * y for x, y in zip(ap, an)]
                new.append((a, fp * bp + fn * bn))
        rows = _dedupe(new)
    return all(b <= 0 for _, b in rows)


def _dedupe(rows):
    out = {}
    for a, b in rows:
        # normalise by the first nonzero |coefficient| so duplicates collapse
        scale = next((abs(x) for x in a if x), None)
        if scale is None:
            if b > 0:
                return [(a, b)]
            continue
        key = tuple(x / scale for x in a)
        rhs = b / scale
        if key not in out or out[key] < rhs:
            out[key] = rhs
    return [(list(k), v) for k, v in out.items()]
