from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given

from cliffordfields.errors import DoesNotDivide, ZeroPolynomialError
from cliffordfields.mpoly import MPoly, coordinate_root_poly, x1, x2, x3, x4
from cliffordfields.parser import parse_poly
from cliffordfields.upoly import UPoly

from conftest import SX, from_sympy, mpolys, to_sympy

F = Fraction


@given(mpolys(), mpolys())
def test_ring_ops_match_sympy(p, q):
    a, b = to_sympy(p), to_sympy(q)
    assert p + q == from_sympy(a + b)
    assert p - q == from_sympy(a - b)
    assert p * q == from_sympy(a * b)


@given(mpolys(max_deg=2, max_terms=3))
def test_power(p):
    assert p ** 3 == p * p * p
    assert p ** 0 == 1


@given(mpolys(), mpolys(), mpolys())
def test_ring_axioms(p, q, r):
    assert (p + q) * r == p * r + q * r
    assert (p * q) * r == p * (q * r)
    assert p - p == 0


def test_grlex_order_and_str():
    p = parse_poly("x4 + x1*x2 + x1^2 + 3 + x2^2*x3")
    assert [e for e, _ in p.terms()] == [(0, 2, 1, 0), (2, 0, 0, 0), (1, 1, 0, 0), (0, 0, 0, 1), (0, 0, 0, 0)]
    assert str(p) == "x2^2*x3 + x1^2 + x1*x2 + x4 + 3"
    assert str(MPoly.const(F(-1, 2)) * x1) == "-1/2*x1"


def test_degrees():
    p = x1 ** 3 * x2 + x4
    assert p.total_degree == 4
    assert p.degree_in(1) == 3 and p.degree_in(3) == 0
    assert MPoly().total_degree == -1
    assert p.variables() == {1, 2, 4}


@given(mpolys())
def test_partials_match_sympy(p):
    for i in range(1, 5):
        assert p.partial(i) == from_sympy(sp.diff(to_sympy(p), SX[i - 1]))


@given(mpolys(), mpolys(max_deg=2, max_terms=3, nonzero=True))
def test_divmod_identity(p, d):
    q, r = p.divmod(d)
    assert q * d + r == p
    le = d.leading_term()[0]
    for e, _ in r.terms():
        assert any(a < b for a, b in zip(e, le))


@given(mpolys(max_deg=2), mpolys(max_deg=2, max_terms=3, nonzero=True))
def test_exact_division_roundtrip(q, d):
    assert (q * d).divide_exact(d) == q
    assert d.divides(q * d)


def test_divide_exact_raises():
    with pytest.raises(DoesNotDivide):
        (x1 + 1).divide_exact(x2)
    with pytest.raises(ZeroDivisionError):
        x1.divmod(MPoly())


@given(mpolys())
def test_rem_monic_in(p):
    f = x1 ** 2 + x2 ** 2 - F(1, 2)
    r = p.rem_monic_in(1, f)
    assert r.degree_in(1) <= 1
    assert f.divides(p - r)


@given(mpolys())
def test_evaluate_matches_sympy(p):
    pt = (F(1, 2), F(-2, 3), F(3), F(0))
    expect = to_sympy(p).subs(dict(zip(SX, [sp.Rational(v.numerator, v.denominator) for v in pt])))
    assert p.evaluate(pt) == F(str(expect))
    assert abs(p.evalf([float(v) for v in pt]) - float(expect)) < 1e-9


@given(mpolys())
def test_substitute_then_evaluate(p):
    pt = (F(1, 3), F(2), F(-1), F(5, 2))
    assert p.substitute(2, pt[1]).evaluate(pt) == p.evaluate(pt)


@given(mpolys())
def test_permute_inverse(p):
    perm = (3, 4, 1, 2)
    assert p.permute(perm).permute(perm) == p
    assert p.permute((2, 3, 4, 1)).permute((4, 1, 2, 3)) == p


def test_collect_and_coefficients():
    p = x1 ** 2 * x2 + 3 * x1 * x3 + x4
    assert p.collect(1) == [(0, x4), (1, 3 * x3), (2, x2)]
    u = (x3 ** 2 - 2 * x3 + 1).to_upoly(3)
    assert u == UPoly([1, -2, 1])
    assert MPoly.from_upoly(u, 3) == x3 ** 2 - 2 * x3 + 1
    with pytest.raises(ValueError):
        (x1 * x2).to_upoly(1)


def test_coordinate_root_poly():
    # x3-roots common to every coefficient: gcd of (x3 - 1)(x3 + 2) and (x3 - 1)^2
    p = (x3 - 1) * (x3 + 2) * x1 + (x3 - 1) ** 2 * x2 * x4
    assert coordinate_root_poly(p, 3) == UPoly([-1, 1])
    assert coordinate_root_poly(x1 + x3, 3) == UPoly([1])
    with pytest.raises(ZeroPolynomialError):
        coordinate_root_poly(MPoly(), 3)


def test_scalar_equality_and_hash():
    assert MPoly.const(3) == 3
    assert MPoly({(0, 0, 0, 0): 0}) == 0
    assert hash(x1 + x2) == hash(x2 + x1)
    assert len({x1 + 0, x1}) == 1


def test_scalar_division():
    assert (2 * x1 + 1) / 2 == x1 + F(1, 2)
    with pytest.raises(ZeroDivisionError):
        x1 / 0
