"""Exact arithmetic over S = Z[r_1^{+-1}, ..., r_n^{+-1}] and S[x_1..x_d].

Every value carries a mode. In ADDITIVE mode the r-exponents must be
non-negative (the polynomial ring used for cohomology and Chow rings); in
MULTIPLICATIVE mode they may be negative (the Laurent ring used for K-theory,
where each r_i has to be invertible). Mixing modes raises ModeError.
"""

import enum
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Sequence, Tuple

Exp = Tuple[int, ...]


class Mode(str, enum.Enum):
    ADDITIVE = "additive"
    MULTIPLICATIVE = "multiplicative"


class ModeError(ValueError):
    pass


def _check_mode(a, b):
    if a.mode is not b.mode:
        raise ModeError(f"cannot combine {a.mode.value} and {b.mode.value} values")
    if a.nvars != b.nvars:
        raise ValueError(f"variable count mismatch: {a.nvars} vs {b.nvars}")


def _add_exp(a: Exp, b: Exp) -> Exp:
    return tuple(x + y for x, y in zip(a, b))


class Coeff:
    """An element of S: a finitely supported map from r-exponents to ints."""

    __slots__ = ("terms", "nvars", "mode", "_hash")

    def __init__(self, terms: Mapping[Exp, int], nvars: int, mode: Mode = Mode.ADDITIVE,
                 _trusted: bool = False):
        self.nvars = nvars
        self.mode = Mode(mode)
        self._hash = None
        if _trusted:
            self.terms = terms
            return
        clean = {}
        for e, c in terms.items():
            e = tuple(int(x) for x in e)
            if len(e) != nvars:
                raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
            if self.mode is Mode.ADDITIVE and any(x < 0 for x in e):
                raise ModeError(f"negative exponent {e} in additive mode")
            if c:
                clean[e] = clean.get(e, 0) + int(c)
        self.terms = {e: c for e, c in clean.items() if c}

    # constructors
    @classmethod
    def zero(cls, nvars, mode=Mode.ADDITIVE):
        return cls({}, nvars, mode, _trusted=True)

    @classmethod
    def const(cls, c: int, nvars, mode=Mode.ADDITIVE):
        return cls({(0,) * nvars: c} if c else {}, nvars, mode, _trusted=True)

    @classmethod
    def one(cls, nvars, mode=Mode.ADDITIVE):
        return cls.const(1, nvars, mode)

    @classmethod
    def var(cls, i: int, nvars, mode=Mode.ADDITIVE, power: int = 1):
        e = [0] * nvars
        e[i] = power
        return cls({tuple(e): 1}, nvars, mode)

    @classmethod
    def monomial(cls, exp: Sequence[int], nvars, mode=Mode.ADDITIVE, c: int = 1):
        return cls({tuple(exp): c}, nvars, mode)

    def _lift(self, other):
        if isinstance(other, Coeff):
            _check_mode(self, other)
            return other
        if isinstance(other, int):
            return Coeff.const(other, self.nvars, self.mode)
        return NotImplemented

    # arithmetic
    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Coeff(out, self.nvars, self.mode, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return Coeff({e: -c for e, c in self.terms.items()}, self.nvars, self.mode, _trusted=True)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out: Dict[Exp, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _add_exp(e1, e2)
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Coeff(out, self.nvars, self.mode, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials can be raised to negative powers")
            (e, c), = self.terms.items()
            if abs(c) != 1:
                raise ValueError(f"{c} is not a unit")
            return Coeff({tuple(k * x for x in e): c ** (-k)}, self.nvars, self.mode)
        out = Coeff.one(self.nvars, self.mode)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # comparison
    def __eq__(self, other):
        if isinstance(other, int):
            return self.terms == ({(0,) * self.nvars: other} if other else {})
        if not isinstance(other, Coeff):
            return NotImplemented
        return self.mode is other.mode and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.mode, self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def constant(self) -> int:
        return self.terms.get((0,) * self.nvars, 0)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), tuple(-x for x in t[0])))

    def evaluate(self, values: Sequence) -> Fraction:
        """Substitute numbers (ints or Fractions) for r_1..r_n."""
        total = Fraction(0)
        for e, c in self.terms.items():
            t = Fraction(c)
            for v, k in zip(values, e):
                if k:
                    t *= Fraction(v) ** k
            total += t
        return total

    def __repr__(self):
        return f"Coeff({format_coeff(self)!r})"

    def __str__(self):
        return format_coeff(self)


def format_monomial(exp: Exp, name: str) -> str:
    parts = []
    for i, k in enumerate(exp):
        if k == 1:
            parts.append(f"{name}{i + 1}")
        elif k:
            parts.append(f"{name}{i + 1}^{k}")
    return "*".join(parts)


def format_coeff(c: Coeff, name: str = "r") -> str:
    if not c.terms:
        return "0"
    out = []
    for e, v in c.sorted_terms():
        mono = format_monomial(e, name)
        if not mono:
            s = str(abs(v))
        elif abs(v) == 1:
            s = mono
        else:
            s = f"{abs(v)}*{mono}"
        sign = "-" if v < 0 else "+"
        out.append((sign, s))
    text = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, s in out[1:]:
        text += f" {sign} {s}"
    return text


def r_u_additive(a: Sequence[int], mode=Mode.ADDITIVE) -> Coeff:
    """sum_i a_i r_i for u = sum_i a_i u_i."""
    n = len(a)
    return Coeff({tuple(1 if k == i else 0 for k in range(n)): ai for i, ai in enumerate(a)},
                 n, mode)


def r_u_multiplicative(a: Sequence[int]) -> Coeff:
    """prod_i r_i^{a_i} for u = sum_i a_i u_i."""
    return Coeff({tuple(a): 1}, len(a), Mode.MULTIPLICATIVE)


class XPoly:
    """A polynomial in x_1..x_d with coefficients in S."""

    __slots__ = ("terms", "d", "n", "mode")

    def __init__(self, terms: Mapping[Exp, Coeff], d: int, n: int, mode: Mode = Mode.ADDITIVE,
                 _trusted: bool = False):
        self.d, self.n, self.mode = d, n, Mode(mode)
        if _trusted:
            self.terms = terms
            return
        out: Dict[Exp, Coeff] = {}
        for e, c in terms.items():
            e = tuple(int(x) for x in e)
            if len(e) != d or any(x < 0 for x in e):
                raise ValueError(f"bad x-exponent {e} for d={d}")
            if isinstance(c, int):
                c = Coeff.const(c, n, self.mode)
            if c.mode is not self.mode or c.nvars != n:
                raise ModeError("coefficient does not match the polynomial's ring")
            v = out[e] + c if e in out else c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        self.terms = out

    @classmethod
    def zero(cls, d, n, mode=Mode.ADDITIVE):
        return cls({}, d, n, mode, _trusted=True)

    @classmethod
    def const(cls, c, d, n, mode=Mode.ADDITIVE):
        if isinstance(c, int):
            c = Coeff.const(c, n, mode)
        return cls({(0,) * d: c} if c else {}, d, n, mode, _trusted=True)

    @classmethod
    def x(cls, j: int, d, n, mode=Mode.ADDITIVE):
        e = tuple(1 if k == j else 0 for k in range(d))
        return cls({e: Coeff.one(n, mode)}, d, n, mode, _trusted=True)

    @classmethod
    def monomial(cls, exp, d, n, mode=Mode.ADDITIVE, c=1):
        return cls({tuple(exp): c}, d, n, mode)

    @classmethod
    def from_cone(cls, cone: Iterable[int], d, n, mode=Mode.ADDITIVE):
        cone = set(cone)
        return cls.monomial([1 if k in cone else 0 for k in range(d)], d, n, mode)

    def _lift(self, other):
        if isinstance(other, XPoly):
            if other.mode is not self.mode:
                raise ModeError(f"cannot combine {self.mode.value} and {other.mode.value} values")
            if (other.d, other.n) != (self.d, self.n):
                raise ValueError("polynomials over different rings")
            return other
        if isinstance(other, (int, Coeff)):
            return XPoly.const(other, self.d, self.n, self.mode)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out[e] + c if e in out else c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return XPoly(out, self.d, self.n, self.mode, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return XPoly({e: -c for e, c in self.terms.items()}, self.d, self.n, self.mode,
                     _trusted=True)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out: Dict[Exp, Coeff] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _add_exp(e1, e2)
                v = c1 * c2
                if e in out:
                    v = out[e] + v
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return XPoly(out, self.d, self.n, self.mode, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of an x-polynomial")
        out = XPoly.const(1, self.d, self.n, self.mode)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = XPoly.const(other, self.d, self.n, self.mode)
        if not isinstance(other, XPoly):
            return NotImplemented
        return (self.mode, self.d, self.n, self.terms) == (other.mode, other.d, other.n, other.terms)

    def __hash__(self):
        return hash((self.mode, self.d, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def x_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def homogeneous_degrees(self):
        """Set of total degrees deg x + deg r of the terms (additive mode)."""
        return {sum(e) + sum(re) for e, c in self.terms.items() for re in c.terms}

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), tuple(-x for x in t[0])))

    def __repr__(self):
        return f"XPoly({format_xpoly(self)!r})"

    def __str__(self):
        return format_xpoly(self)


def format_xpoly(p: XPoly) -> str:
    if not p.terms:
        return "0"
    parts = []
    for e, c in p.sorted_terms():
        mono = format_monomial(e, "x")
        cs = format_coeff(c)
        if not mono:
            parts.append(f"({cs})" if len(c.terms) > 1 else cs)
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        elif len(c.terms) == 1:
            parts.append(f"{cs}*{mono}")
        else:
            parts.append(f"({cs})*{mono}")
    text = parts[0]
    for s in parts[1:]:
        text += f" - {s[1:]}" if s.startswith("-") else f" + {s}"
    return text
