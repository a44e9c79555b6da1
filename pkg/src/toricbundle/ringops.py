"""Ring-level outputs: multiplication tables, Betti numbers, duality, specialization."""

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import Coeff, Mode, XPoly
from .fan import Cone, Fan, label
from .reducer import NormalForm, Reducer
from .shelling import ShellingData, UnsupportedFanError


class SpecializationError(ValueError):
    pass


@dataclass
class MultTable:
    entries: List[List[NormalForm]]
    mode: Mode
    basis: Tuple[Cone, ...]
    advisory: bool = False

    @property
    def m(self) -> int:
        return len(self.basis)

    def is_symmetric(self) -> bool:
        return all(self.entries[i][j] == self.entries[j][i]
                   for i in range(self.m) for j in range(i + 1, self.m))

    def multiply(self, a: Sequence, b: Sequence) -> List:
        """Product of two coefficient vectors via the structure constants."""
        zero = a[0] * 0
        out = [zero] * self.m
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if not bj:
                    continue
                c = ai * bj
                for l, t in enumerate(self.entries[i][j].coeffs):
                    if t:
                        out[l] = out[l] + c * t
        return out


def _unit(m, i, like):
    zero, one = like * 0, like * 0 + 1
    return [one if k == i else zero for k in range(m)]


def _row(args):
    reducer, i = args
    return [reducer.reduce(reducer.basis_poly(i) * reducer.basis_poly(j)) for j in range(reducer.m)]


def mult_table(reducer: Reducer, jobs: int = 1) -> MultTable:
    """Entry (i, j) is the normal form of x(tau_i) * x(tau_j)."""
    reducer.warm_up()
    m = reducer.m
    if jobs > 1 and m > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_row, [(reducer, i) for i in range(m)]))
    else:
        rows = [_row((reducer, i)) for i in range(m)]
    return MultTable(rows, reducer.mode, reducer.sd.tau, reducer.advisory)


def betti(sd: ShellingData, n: int) -> List[int]:
    """Even Betti numbers b_0, b_2, ..., b_2n (the odd ones vanish).

    b_2k counts the tau_i with k rays.
    """
    out = [0] * (n + 1)
    for t in sd.tau:
        out[len(t)] += 1
    return out


# -- specialization ----------------------------------------------------------

@dataclass
class SpecializationTarget:
    """Where the r_i are sent.

    kind "integers": values are Coeffs in zero variables (plain integers).
    kind "truncated": values are polynomials in t_1..t_s, and t_k^caps[k] = 0.
    """
    kind: str
    values: Tuple[Coeff, ...]
    caps: Tuple[int, ...] = ()

    @classmethod
    def integers(cls, values: Sequence[int]):
        return cls("integers", tuple(Coeff.const(v, 0) for v in values))

    @classmethod
    def truncated(cls, caps: Sequence[int], values: Sequence[Coeff]):
        caps = tuple(caps)
        vals = []
        for v in values:
            if isinstance(v, int):
                v = Coeff.const(v, len(caps))
            if v.nvars != len(caps):
                raise SpecializationError("value lives in the wrong number of variables")
            vals.append(v)
        return cls("truncated", tuple(vals), caps)

    @property
    def nvars(self) -> int:
        return len(self.caps)

    def truncate(self, c: Coeff) -> Coeff:
        if self.kind == "integers":
            return c
        return Coeff({e: v for e, v in c.terms.items()
                      if all(x < cap for x, cap in zip(e, self.caps))}, self.nvars)

    def inverse(self, c: Coeff) -> Coeff:
        c0 = c.constant()
        if abs(c0) != 1:
            raise SpecializationError(f"{c} is not invertible in the target")
        nil = c - c0
        if self.kind == "integers" or not nil:
            if nil:
                raise SpecializationError(f"{c} is not invertible in the target")
            return Coeff.const(c0, self.nvars)
        # (c0 + nil)^-1 = c0 * sum_k (-c0 * nil)^k, finite since nil is nilpotent
        step = self.truncate(nil * (-c0))
        out = Coeff.one(self.nvars)
        power = Coeff.one(self.nvars)
        while True:
            power = self.truncate(power * step)
            if not power:
                break
            out = out + power
        return self.truncate(out * c0)

    def check(self, mode: Mode):
        if Mode(mode) is Mode.MULTIPLICATIVE:
            for i, v in enumerate(self.values):
                try:
                    self.inverse(v)
                except SpecializationError:
                    raise SpecializationError(
                        f"r{i + 1} -> {v} is not invertible, as multiplicative mode requires")

    def apply(self, c: Coeff) -> Coeff:
        if c.nvars != len(self.values):
            raise SpecializationError(f"target assigns {len(self.values)} values, "
                                      f"coefficients have {c.nvars} parameters")
        inv = {}
        out = Coeff.zero(self.nvars)
        for e, v in c.terms.items():
            t = Coeff.const(v, self.nvars)
            for i, k in enumerate(e):
                if k > 0:
                    t = self.truncate(t * self.values[i] ** k)
                elif k < 0:
                    if i not in inv:
                        inv[i] = self.inverse(self.values[i])
                    t = self.truncate(t * inv[i] ** (-k))
            out = out + t
        return self.truncate(out)


@dataclass(frozen=True)
class SpecializedNF:
    coeffs: Tuple[Coeff, ...]
    basis: Tuple[Cone, ...] = field(compare=False)

    def is_zero(self):
        return all(not c for c in self.coeffs)


def specialize(value, target: SpecializationTarget):
    """Substitute the r_i in a NormalForm or MultTable."""
    if isinstance(value, NormalForm):
        target.check(value.mode)
        return SpecializedNF(tuple(target.apply(c) for c in value.coeffs), value.basis)
    if isinstance(value, MultTable):
        target.check(value.mode)
        return [[SpecializedNF(tuple(target.apply(c) for c in e.coeffs), e.basis)
                 for e in row] for row in value.entries]
    raise TypeError(f"cannot specialize {type(value).__name__}")


def at_zero(n: int) -> SpecializationTarget:
    return SpecializationTarget.integers([0] * n)


def at_one(n: int) -> SpecializationTarget:
    return SpecializationTarget.integers([1] * n)


# -- duality -----------------------------------------------------------------

@dataclass
class DualityReport:
    pairing: List[List[int]]          # coefficient on x(sigma_m) of x(tau_i) x(tau'_j) at r = 0
    lower_vanishing: bool             # products with j < i vanish identically
    diagonal: List[int]
    diagonal_units: bool
    all_positive: bool
    findings: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.lower_vanishing and self.diagonal_units


def duality_check(fan: Fan, sd: ShellingData, reducer: Reducer) -> DualityReport:
    if not (sd.star_ok and sd.star_prime_ok):
        raise UnsupportedFanError("duality check needs an order with (*) and (*')")
    if reducer.mode is not Mode.ADDITIVE:
        raise UnsupportedFanError("duality check runs in additive mode")
    m, d, n = sd.m, fan.d, fan.dim
    zero = at_zero(n)
    mat = [[0] * m for _ in range(m)]
    lower_ok = True
    findings = []
    for i in range(m):
        for j in range(m):
            p = XPoly.from_cone(sd.tau[i], d, n) * XPoly.from_cone(sd.tau_prime[j], d, n)
            nf = specialize(reducer.reduce(p), zero)
            mat[i][j] = nf.coeffs[m - 1].constant()
            if j < i and not nf.is_zero():
                lower_ok = False
                findings.append(f"x{label(sd.tau[i])} x{label(sd.tau_prime[j])} != 0")
            if j == i:
                rest = [c for k, c in enumerate(nf.coeffs) if k != m - 1 and c]
                if rest:
                    findings.append(f"diagonal product {i + 1} has components off x(sigma_m)")
    diag = [mat[i][i] for i in range(m)]
    units = all(abs(x) == 1 for x in diag)
    if not units:
        findings.append(f"diagonal {diag} contains non-units")
    return DualityReport(mat, lower_ok, diag, units, all(x == 1 for x in diag), findings)


# -- algebra-law checks --------------------------------------------------------

def associativity_failures(table: MultTable, triples) -> List[Tuple[int, int, int]]:
    bad = []
    m = table.m
    for i, j, k in triples:
        like = table.entries[0][0].coeffs[0]
        ei, ek = _unit(m, i, like), _unit(m, k, like)
        left = table.multiply(list(table.entries[i][j].coeffs), ek)
        right = table.multiply(ei, list(table.entries[j][k].coeffs))
        if left != right:
            bad.append((i, j, k))
    return bad
