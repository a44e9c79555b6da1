"""Exact integer linear algebra on N = Z^n and its dual M.

Vectors are plain tuples of Python ints, so precision is unbounded.
"""

from fractions import Fraction
from math import gcd
from typing import List, Sequence, Tuple

LatticeVector = Tuple[int, ...]
DualVector = Tuple[int, ...]


class DimensionError(ValueError):
    pass


class InvalidRayError(ValueError):
    pass


class NotSmoothError(ValueError):
    pass


def pairing(u: Sequence[int], v: Sequence[int]) -> int:
    if len(u) != len(v):
        raise DimensionError(f"cannot pair vectors of lengths {len(u)} and {len(v)}")
    return sum(a * b for a, b in zip(u, v))


def is_primitive(v: Sequence[int]) -> bool:
    g = 0
    for c in v:
        g = gcd(g, c)
    if g == 0:
        raise InvalidRayError("the zero vector is not a ray generator")
    return g == 1


def elementary_divisors(rows: Sequence[Sequence[int]]) -> List[int]:
    """Nonzero diagonal entries of the Smith normal form of an integer matrix.

    Only row and column operations invertible over Z are used, so the
    returned list is an invariant of the row lattice. Entries are positive and
    each divides the next.
    """
    a = [list(r) for r in rows]
    if not a:
        return []
    nrows, ncols = len(a), len(a[0])
    divisors = []
    t = 0
    while t < min(nrows, ncols):
        # pivot: smallest nonzero absolute value in the remaining block
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, nrows):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    dirty = True
            for j in range(t + 1, ncols):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    dirty = True
            if not dirty:
                # enforce divisibility of the rest of the block by the pivot
                bad = next(((i, j) for i in range(t + 1, nrows)
                            for j in range(t + 1, ncols) if a[i][j] % p), None)
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                continue
            # move the smallest remainder into pivot position and repeat
            best = None
            for i in range(t, nrows):
                if a[i][t] and (best is None or abs(a[i][t]) < abs(a[best][t])):
                    best = i
            a[t], a[best] = a[best], a[t]
            bestc = None
            for j in range(t, ncols):
                if a[t][j] and (bestc is None or abs(a[t][j]) < abs(a[t][bestc])):
                    bestc = j
            for row in a:
                row[t], row[bestc] = row[bestc], row[t]
        divisors.append(abs(a[t][t]))
        t += 1
    return divisors


def rank(rows: Sequence[Sequence[int]]) -> int:
    return len(elementary_divisors(rows))


def is_unimodular(vectors: Sequence[Sequence[int]]) -> bool:
    """True iff the vectors extend to a Z-basis of Z^n.

    Linearly dependent input is not unimodular; use :func:`unimodularity_diagnostic`
    to tell the two failure modes apart.
    """
    return unimodularity_diagnostic(vectors) is None


def unimodularity_diagnostic(vectors: Sequence[Sequence[int]]):
    """Return None if unimodular, else a short string saying why not."""
    vectors = [tuple(v) for v in vectors]
    if not vectors:
        return None
    n = len(vectors[0])
    if any(len(v) != n for v in vectors):
        raise DimensionError("vectors of unequal length")
    if len(vectors) > n:
        return f"{len(vectors)} vectors in dimension {n} are dependent"
    divs = elementary_divisors(vectors)
    if len(divs) < len(vectors):
        return f"rank deficient: rank {len(divs)} < {len(vectors)}"
    if divs[-1] != 1:
        return f"elementary divisors {divs} are not all 1"
    return None


def determinant(rows: Sequence[Sequence[int]]) -> int:
    a = [[Fraction(x) for x in r] for r in rows]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            return 0
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return int(det)


def solve_rational(rows: Sequence[Sequence[int]], rhs: Sequence[int]) -> List[Fraction]:
    """Solve the square system rows @ x = rhs exactly."""
    n = len(rows)
    a = [[Fraction(x) for x in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            raise NotSmoothError("singular system")
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [a[r][n] for r in range(n)]


def dual_basis(rays: Sequence[Sequence[int]]) -> List[DualVector]:
    """Dual vectors u_1..u_n with pairing(u_i, rays[j]) == delta_ij.

    The u_i are the rows of the inverse transpose of the ray matrix.
    """
    rays = [tuple(v) for v in rays]
    n = len(rays)
    if any(len(v) != n for v in rays):
        raise DimensionError(f"dual basis needs {n} vectors of length {n}")
    why = unimodularity_diagnostic(rays)
    if why is not None:
        raise NotSmoothError(f"rays {rays} do not form a Z-basis: {why}")
    # columns of rays^{-T}: solve rays @ u_i = e_i
    duals = []
    for i in range(n):
        e = [1 if k == i else 0 for k in range(n)]
        sol = solve_rational(rays, e)
        duals.append(tuple(int(x) for x in sol))
    return duals


def coordinates(u: Sequence[int], basis_rays: Sequence[Sequence[int]]) -> Tuple[int, ...]:
    """Coordinates a_i of u in the dual basis of basis_rays: a_i = <u, basis_rays[i]>."""
    return tuple(pairing(u, w) for w in basis_rays)
