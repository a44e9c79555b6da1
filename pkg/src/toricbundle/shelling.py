"""Orderings of maximal cones with the shelling-type conditions.

For an order s_1..s_m of the maximal cones, tau_i is the intersection of s_i
with every later cone sharing a wall with it. Condition (*) asks that tau_i
lies in no earlier cone; condition (*') asks the same of the complementary
face tau'_i = s_i - tau_i with respect to later cones.
"""

import itertools
import random
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .fan import Cone, Fan, label
from .lattice import dual_basis, pairing


class ShellingError(Exception):
    pass


class NoShellingError(ShellingError):
    """Exhaustive search proved that no admissible order exists."""


class ShellingInconclusive(ShellingError):
    """The backtracking node budget ran out before the search finished."""


class UnsupportedFanError(ShellingError):
    pass


@dataclass(frozen=True)
class ShellingData:
    order: Tuple[int, ...]            # indices into fan.max_cones
    sigma: Tuple[Cone, ...]           # max cones in this order
    tau: Tuple[Cone, ...]
    tau_prime: Tuple[Cone, ...]
    star_ok: bool
    star_prime_ok: bool
    sigma_m_rays: Tuple[int, ...]     # rays of the last cone, increasing index
    sigma_m_dual: Tuple[Tuple[int, ...], ...]

    @property
    def m(self) -> int:
        return len(self.order)

    def locate_interval(self, gamma) -> int:
        """Smallest i with gamma inside sigma_i (0-based); tau_i is inside gamma."""
        gamma = frozenset(gamma)
        for i, s in enumerate(self.sigma):
            if gamma <= s:
                if self.star_ok and not self.tau[i] <= gamma:
                    raise ShellingError(f"interval check failed for {label(gamma)}")
                return i
        raise ValueError(f"{label(gamma)} is not a cone of the fan")

    def describe(self) -> str:
        return " ".join(label(s) for s in self.sigma)


def compute_tau(fan: Fan, order: Sequence[int]) -> List[Cone]:
    cones = [fan.max_cones[k] for k in order]
    n = fan.dim
    tau = []
    for i, s in enumerate(cones):
        t = s
        for later in cones[i + 1:]:
            if len(s & later) == n - 1:
                t = t & later
        tau.append(t)
    return tau


def compute_tau_prime(fan: Fan, order: Sequence[int], tau: Sequence[Cone]) -> List[Cone]:
    return [fan.max_cones[k] - t for k, t in zip(order, tau)]


def check_star(fan: Fan, order: Sequence[int], tau: Sequence[Cone]) -> bool:
    cones = [fan.max_cones[k] for k in order]
    return all(not (t <= cones[j]) for i, t in enumerate(tau) for j in range(i))


def check_star_prime(fan: Fan, order: Sequence[int], tau_prime: Sequence[Cone]) -> bool:
    cones = [fan.max_cones[k] for k in order]
    return all(not (t <= cones[j])
               for i, t in enumerate(tau_prime) for j in range(i + 1, len(cones)))


def _require_complete(fan: Fan):
    rep = fan.validate()
    if not (rep.complete and rep.fan_condition):
        raise UnsupportedFanError("ordering requires complete fan")
    if not rep.smooth:
        raise UnsupportedFanError("ordering requires a smooth fan")


def shelling_data(fan: Fan, order: Sequence[int]) -> ShellingData:
    order = tuple(order)
    if sorted(order) != list(range(fan.m)):
        raise ValueError(f"order {[k + 1 for k in order]} is not a permutation of the maximal cones")
    tau = compute_tau(fan, order)
    tau_p = compute_tau_prime(fan, order, tau)
    last = sorted(fan.max_cones[order[-1]])
    return ShellingData(
        order=order,
        sigma=tuple(fan.max_cones[k] for k in order),
        tau=tuple(tau),
        tau_prime=tuple(tau_p),
        star_ok=check_star(fan, order, tau),
        star_prime_ok=check_star_prime(fan, order, tau_p),
        sigma_m_rays=tuple(last),
        sigma_m_dual=tuple(dual_basis([fan.rays[j] for j in last])),
    )


class _Search:
    """Depth-first search over orders with incremental checks.

    When a cone is appended, its tau is already determined: it consists of the
    rays whose opposite facet is shared with an earlier cone. So (*) can be
    checked on placement, and (*') for earlier cones against each new cone.
    """

    def __init__(self, fan: Fan, require_star_prime: bool, node_limit: int):
        self.fan = fan
        self.n = fan.dim
        self.require_star_prime = require_star_prime
        self.node_limit = node_limit
        self.nodes = 0
        self.exhausted = True

    def _tau_on_placement(self, prefix_cones, s):
        t = set()
        for r in s:
            facet = s - {r}
            if any(facet <= c for c in prefix_cones):
                t.add(r)
        return frozenset(t)

    def orders(self):
        m = self.fan.m
        cones = self.fan.max_cones
        prefix, prefix_cones, taus_p = [], [], []
        used = [False] * m

        def rec():
            if len(prefix) == m:
                yield tuple(prefix)
                return
            for k in range(m):
                if used[k]:
                    continue
                self.nodes += 1
                if self.nodes > self.node_limit:
                    self.exhausted = False
                    return
                s = cones[k]
                t = self._tau_on_placement(prefix_cones, s)
                if any(t <= c for c in prefix_cones):
                    continue
                if self.require_star_prime and any(tp <= s for tp in taus_p):
                    continue
                used[k] = True
                prefix.append(k)
                prefix_cones.append(s)
                taus_p.append(s - t)
                yield from rec()
                used[k] = False
                prefix.pop()
                prefix_cones.pop()
                taus_p.pop()
                if not self.exhausted:
                    return

        yield from rec()


def enumerate_orders(fan: Fan, require_star_prime: bool = False,
                     node_limit: int = 10 ** 6) -> List[Tuple[int, ...]]:
    """All orders satisfying (*) (and (*') if asked), by incremental backtracking."""
    _require_complete(fan)
    search = _Search(fan, require_star_prime, node_limit)
    found = list(search.orders())
    if not search.exhausted:
        raise ShellingInconclusive(f"node limit {node_limit} reached")
    return found


def heuristic_order(fan: Fan, rng: random.Random, spread: int = 1000) -> Tuple[int, ...]:
    n = fan.dim
    w = [rng.randint(-spread, spread) for _ in range(n)]
    centers = [[sum(fan.rays[j][c] for j in cone) for c in range(n)] for cone in fan.max_cones]
    return tuple(sorted(range(fan.m), key=lambda k: (-pairing(w, centers[k]), k)))


def find_shelling(fan: Fan, require_star_prime: bool = True, seed: int = 0,
                  attempts: int = 64, node_limit: int = 10 ** 6) -> ShellingData:
    _require_complete(fan)
    rng = random.Random(seed)
    # the listed order first, so hand-written fans keep their own numbering
    candidates = itertools.chain([tuple(range(fan.m))],
                                 (heuristic_order(fan, rng) for _ in range(attempts)))
    for order in candidates:
        sd = shelling_data(fan, order)
        if sd.star_ok and (sd.star_prime_ok or not require_star_prime):
            return sd
    search = _Search(fan, require_star_prime, node_limit)
    for order in search.orders():
        sd = shelling_data(fan, order)
        # independent re-verification of the incremental checker
        if not (sd.star_ok and (sd.star_prime_ok or not require_star_prime)):
            raise ShellingError(f"search produced an invalid order {order}")
        return sd
    if not search.exhausted:
        raise ShellingInconclusive(f"no order found within {node_limit} search nodes")
    cond = "(*) and (*')" if require_star_prime else "(*)"
    raise NoShellingError(f"no ordering of the maximal cones satisfies {cond}")


def brute_force_orders(fan: Fan) -> List[Tuple[Tuple[int, ...], bool, bool]]:
    """Every permutation with its (*) and (*') flags; for cross-checking small fans."""
    out = []
    for order in itertools.permutations(range(fan.m)):
        tau = compute_tau(fan, order)
        out.append((order, check_star(fan, order, tau),
                    check_star_prime(fan, order, compute_tau_prime(fan, order, tau))))
    return out
