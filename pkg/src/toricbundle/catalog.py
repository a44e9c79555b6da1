"""Built-in fans, written with 1-based ray indices as in the fan JSON format."""

from .fan import Fan


def projective_space(n: int) -> Fan:
    rays = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    rays.append(tuple([-1] * n))
    cones = [[j for j in range(1, n + 2) if j != skip] for skip in [n + 1, *range(1, n + 1)]]
    return Fan.from_one_based(n, rays, cones, name=f"p{n}")


def hirzebruch(a: int) -> Fan:
    return Fan.from_one_based(
        2, [(1, 0), (0, 1), (-1, a), (0, -1)],
        [[1, 2], [2, 3], [3, 4], [4, 1]], name=f"hirzebruch_{a}")


def p1xp1() -> Fan:
    return Fan.from_one_based(
        2, [(1, 0), (-1, 0), (0, 1), (0, -1)],
        [[1, 3], [2, 3], [2, 4], [1, 4]], name="p1xp1")


def bl_p2() -> Fan:
    return Fan.from_one_based(
        2, [(1, 0), (0, 1), (-1, -1), (1, 1)],
        [[1, 4], [4, 2], [2, 3], [3, 1]], name="bl_p2")


def oda_84() -> Fan:
    """Complete smooth threefold that is not projective.

    Start from the fan of P^3 on v1=-e1, v2=-e2, v3=-e3, v4=e1+e2+e3. Insert
    v_i' = v_i + v4 on the three edges through v4, then split each
    quadrilateral (v_i, v_j, v_j', v_i') along the diagonal v_i--v_j', with
    i -> j running cyclically. The twisted diagonals obstruct any strictly
    convex support function.
    """
    v = [(-1, 0, 0), (0, -1, 0), (0, 0, -1), (1, 1, 1)]
    vp = [tuple(a + b for a, b in zip(v[3], v[i])) for i in range(3)]
    cones = [
        [1, 2, 3],
        [4, 5, 6], [4, 6, 7], [4, 7, 5],
        [1, 2, 6], [1, 6, 5],
        [2, 3, 7], [2, 7, 6],
        [3, 1, 5], [3, 5, 7],
    ]
    return Fan.from_one_based(3, v + vp, cones, name="oda_84")


def catalog():
    fans = {
        "p1": projective_space(1),
        "p2": projective_space(2),
        "p3": projective_space(3),
        "p1xp1": p1xp1(),
        "bl_p2": bl_p2(),
        "oda_84": oda_84(),
    }
    for a in range(4):
        fans[f"hirzebruch_{a}"] = hirzebruch(a)
    return fans


# fans known to come from lattice polytopes
PROJECTIVE = ("p1", "p2", "p3", "p1xp1", "bl_p2",
              "hirzebruch_0", "hirzebruch_1", "hirzebruch_2", "hirzebruch_3")


def get(name: str) -> Fan:
    fans = catalog()
    if name not in fans:
        raise KeyError(f"unknown catalog fan {name!r}; known: {', '.join(sorted(fans))}")
    return fans[name]
