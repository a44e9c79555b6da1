import pytest
import sympy
from hypothesis import given, settings, strategies as st

from toricbundle.algebra import (Coeff, Mode, ModeError, XPoly, format_coeff, format_xpoly,
                                 r_u_additive, r_u_multiplicative)

N = 2
R = sympy.symbols("r1:3")
X = sympy.symbols("x1:4")


def coeffs(mode, n=N):
    lo = -2 if mode is Mode.MULTIPLICATIVE else 0
    exp = st.tuples(*[st.integers(lo, 2)] * n)
    return st.dictionaries(exp, st.integers(-4, 4), max_size=4).map(
        lambda t: Coeff(t, n, mode))


def xpolys(mode, d=3, n=N):
    exp = st.tuples(*[st.integers(0, 2)] * d)
    return st.dictionaries(exp, coeffs(mode, n), max_size=3).map(
        lambda t: XPoly(t, d, n, mode))


def c_sym(c):
    return sum((v * sympy.Mul(*[R[i] ** k for i, k in enumerate(e)]) for e, v in c.terms.items()),
               sympy.Integer(0))


def x_sym(p):
    return sympy.expand(sum((c_sym(c) * sympy.Mul(*[X[i] ** k for i, k in enumerate(e)])
                             for e, c in p.terms.items()), sympy.Integer(0)))


both = st.sampled_from(list(Mode))


@settings(max_examples=1000, deadline=None)
@given(st.data())
def test_coeff_ring_laws(data):
    mode = data.draw(both)
    a, b, c = (data.draw(coeffs(mode)) for _ in range(3))
    zero, one = Coeff.zero(N, mode), Coeff.one(N, mode)
    assert a + b == b + a and a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + zero == a and a * one == a and a - a == zero
    assert c_sym(a * b) == sympy.expand(c_sym(a) * c_sym(b))


@settings(max_examples=1000, deadline=None)
@given(st.data())
def test_xpoly_ring_laws(data):
    mode = data.draw(both)
    p, q, s = (data.draw(xpolys(mode)) for _ in range(3))
    assert p * q == q * p
    assert (p * q) * s == p * (q * s)
    assert p * (q + s) == p * q + p * s
    assert p - p == XPoly.zero(3, N, mode)
    assert x_sym(p * q) == sympy.expand(x_sym(p) * x_sym(q))


def test_coeff_examples():
    r1, r2 = Coeff.var(0, 2), Coeff.var(1, 2)
    assert r1 + (-r1) == Coeff.zero(2)
    assert r1 * r2 == r2 * r1
    assert (1 - r1) * (1 + r1) == 1 - r1 ** 2


def test_r_u():
    assert r_u_additive((1, 0, 0)) == Coeff.var(0, 3)
    assert r_u_additive((0, 0)) == Coeff.zero(2)
    assert r_u_additive((2, -1)) == 2 * Coeff.var(0, 2) - Coeff.var(1, 2)
    m = Mode.MULTIPLICATIVE
    assert r_u_multiplicative((1, 0)) == Coeff.var(0, 2, m)
    assert r_u_multiplicative((0, 0)) == Coeff.one(2, m)
    assert r_u_multiplicative((-1, 2)) == Coeff.monomial((-1, 2), 2, m)
    assert format_coeff(r_u_multiplicative((-1, 2))) == "r1^-1*r2^2"


def test_xpoly_examples():
    x1, x2 = XPoly.x(0, 2, 1), XPoly.x(1, 2, 1)
    r1 = Coeff.var(0, 1)
    assert x1 * x2 == x2 * x1
    assert (x1 - r1) * 1 == x1 - r1
    assert (1 - x1) ** 2 == 1 - 2 * x1 + x1 * x1
    assert format_xpoly((1 - x1) ** 2) == "1 - 2*x1 + x1^2"


def test_inverse_of_unit_monomials():
    m = Mode.MULTIPLICATIVE
    r = Coeff.monomial((1, -2), 2, m)
    assert r * r ** -1 == 1
    assert (-r) ** -3 == -(r ** -3)
    with pytest.raises(ValueError):
        (2 * r) ** -1
    with pytest.raises(ValueError):
        (r + 1) ** -1


def test_mode_errors():
    with pytest.raises(ModeError):
        Coeff({(-1,): 1}, 1, Mode.ADDITIVE)
    with pytest.raises(ModeError):
        Coeff.var(0, 1) + Coeff.var(0, 1, Mode.MULTIPLICATIVE)
    with pytest.raises(ModeError):
        XPoly.x(0, 2, 1) * XPoly.x(0, 2, 1, Mode.MULTIPLICATIVE)


def test_evaluate_matches_sympy():
    m = Mode.MULTIPLICATIVE
    c = Coeff({(2, -1): 3, (0, 0): -1, (-1, 1): 2}, 2, m)
    want = c_sym(c).subs({R[0]: 3, R[1]: -2})
    assert c.evaluate([3, -2]) == sympy.Rational(want)
