"""Recursive-descent parser for integer polynomial expressions.

Grammar (no implicit multiplication):

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' ['-'] INT)?
    atom   := INT | NAME INT | '(' expr ')'

NAME is a single letter; which letters are allowed, and what they build,
is up to the caller.
"""

import re
from typing import Callable, Dict

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z])(\d+)|(\*\*|[-+*^()]))")


class ParseError(ValueError):
    def __init__(self, msg, pos):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


def tokenize(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r}",
                             pos + len(text[pos:]) - len(text[pos:].lstrip()))
        raw = mt.group(0).strip()
        start = mt.end() - len(raw)
        if mt.group(1):
            out.append(("int", int(mt.group(1)), start, raw))
        elif mt.group(2):
            out.append(("var", (mt.group(2), int(mt.group(3))), start, raw))
        else:
            op = "^" if mt.group(4) == "**" else mt.group(4)
            out.append((op, op, start, raw))
        pos = mt.end()
    out.append(("end", None, len(text), "end of input"))
    return out


class Parser:
    def __init__(self, text: str, const: Callable[[int], object],
                 variables: Dict[str, Callable[[int, int], object]],
                 power: Callable[[object, int, int], object] = None):
        self.toks = tokenize(text)
        self.i = 0
        self.const = const
        self.variables = variables
        self.power = power or (lambda v, k, pos: v ** k)

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[3]!r}", tok[2])
        self.i += 1
        return tok

    def parse(self):
        v = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[3]!r}", tok[2])
        return v

    def expr(self):
        v = self.term()
        while self.peek()[0] in "+-":
            op = self.take()[0]
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.unary()
        while self.peek()[0] == "*":
            self.take()
            v = v * self.unary()
        return v

    def unary(self):
        if self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            v = self.unary()
            return -v if op == "-" else v
        return self.power_()

    def power_(self):
        v = self.atom()
        if self.peek()[0] == "^":
            tok = self.take()
            neg = False
            if self.peek()[0] == "-":
                self.take()
                neg = True
            k = self.take("int")[1]
            v = self.power(v, -k if neg else k, tok[2])
        return v

    def atom(self):
        tok = self.take()
        kind, val, pos, raw = tok
        if kind == "int":
            return self.const(val)
        if kind == "var":
            name, idx = val
            if name not in self.variables:
                raise ParseError(f"unknown generator {name}{idx}", pos)
            try:
                return self.variables[name](idx, pos)
            except IndexError:
                raise ParseError(f"unknown generator {name}{idx}", pos) from None
        if kind == "(":
            v = self.expr()
            self.take(")")
            return v
        raise ParseError(f"unexpected {raw!r}", pos)


def parse_xpoly(text: str, d: int, n: int, mode):
    """Parse a polynomial in x1..xd with coefficients in r1..rn."""
    from .algebra import Coeff, Mode, XPoly
    mode = Mode(mode)

    def x(i, pos):
        if not 1 <= i <= d:
            raise IndexError
        return XPoly.x(i - 1, d, n, mode)

    def r(i, pos):
        if not 1 <= i <= n:
            raise IndexError
        return XPoly.const(Coeff.var(i - 1, n, mode), d, n, mode)

    def power(v, k, pos):
        if k >= 0:
            return v ** k
        if mode is not Mode.MULTIPLICATIVE:
            raise ParseError("negative exponents need multiplicative mode", pos)
        if set(v.terms) != {(0,) * d}:
            raise ParseError("only r-monomials can have negative exponents", pos)
        try:
            return XPoly.const(v.terms[(0,) * d] ** k, d, n, mode)
        except ValueError as e:
            raise ParseError(str(e), pos) from None

    return Parser(text, lambda c: XPoly.const(c, d, n, mode), {"x": x, "r": r}, power).parse()


def parse_target_value(text: str, nvars: int):
    """Parse an integer polynomial in t1..t_nvars."""
    from .algebra import Coeff

    def t(i, pos):
        if not 1 <= i <= nvars:
            raise IndexError
        return Coeff.var(i - 1, nvars)

    return Parser(text, lambda c: Coeff.const(c, nvars), {"t": t}).parse()
