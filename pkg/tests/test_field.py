from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from cliffordfields.errors import NotInvariant
from cliffordfields.field import (TORUS_F, TORUS_G, CliffordParams, VectorField, clifford_build,
                                  clifford_decompose, degree_vector, hopf_field, invariance_cofactor,
                                  lie_derive, torus_invariant)
from cliffordfields.mpoly import MPoly, x1, x2, x3, x4
from cliffordfields.parser import parse_poly

from conftest import SX, from_sympy, mpolys, to_sympy

F = Fraction
params = st.builds(CliffordParams, *(mpolys(max_deg=2, max_terms=3) for _ in range(6)))


def sympy_lie(X: VectorField, h: MPoly):
    return sp.expand(sum(to_sympy(p) * sp.diff(to_sympy(h), v) for p, v in zip(X.components, SX)))


@given(params, mpolys(max_deg=2))
def test_lie_derivative_matches_sympy(p, h):
    X = clifford_build(p)
    assert lie_derive(X, h) == from_sympy(sympy_lie(X, h))


def test_hopf():
    X = hopf_field()
    assert [str(c) for c in X.components] == ["-2*x2", "2*x1", "-2*x4", "2*x3"]
    kf, kg = torus_invariant(X)
    assert kf.k == 0 and kg.k == 0


@given(params)
def test_cofactors(p):
    X = clifford_build(p)
    kf, kg = torus_invariant(X)
    assert kf.k == 2 * (p.a * x1 + p.b * x2)
    assert kg.k == 2 * (p.d * x3 + p.e * x4)
    # independent check: sympy division leaves no remainder
    q, r = sp.div(sympy_lie(X, TORUS_F), to_sympy(TORUS_F), *SX)
    assert r == 0 and from_sympy(q) == kf.k


def test_not_invariant_reports_which():
    with pytest.raises(NotInvariant) as exc:
        torus_invariant(VectorField(x1, MPoly(), MPoly(), MPoly()))
    assert exc.value.which == "f"
    with pytest.raises(NotInvariant) as exc:
        torus_invariant(VectorField(MPoly(), MPoly(), x4, MPoly()))
    assert exc.value.which == "g"


def test_invariance_cofactor_rejects_constant():
    with pytest.raises(ValueError):
        invariance_cofactor(hopf_field(), MPoly.const(1))


@given(params)
def test_decompose_roundtrip_and_idempotence(p):
    X = clifford_build(p)
    c = clifford_decompose(X)
    assert clifford_build(c) == X
    assert clifford_decompose(clifford_build(c)) == c
    assert c.c.degree_in(1) <= 1 and c.f.degree_in(3) <= 1


@given(params, mpolys(max_deg=2, max_terms=3), mpolys(max_deg=2, max_terms=3))
def test_gauge_orbit_has_one_canonical_form(p, g, h):
    shifted = CliffordParams(p.a + 2 * g * x2, p.b - 2 * g * x1, p.c + g * TORUS_F,
                             p.d + 2 * h * x4, p.e - 2 * h * x3, p.f + h * TORUS_G)
    assert clifford_build(shifted) == clifford_build(p)
    assert clifford_decompose(clifford_build(shifted)) == clifford_decompose(clifford_build(p))


def test_decompose_rejects_noninvariant():
    with pytest.raises(NotInvariant):
        clifford_decompose(VectorField(x1, x2, x3, x4))


@given(params)
def test_circle_swap_symmetry(p):
    # exchanging (x1, x2) with (x3, x4) maps invariant fields to invariant fields
    Y = clifford_build(p).permute((3, 4, 1, 2))
    kf, kg = torus_invariant(Y)
    assert kf.k == (2 * (p.d * x3 + p.e * x4)).permute((3, 4, 1, 2))
    assert kg.k == (2 * (p.a * x1 + p.b * x2)).permute((3, 4, 1, 2))


@given(params, st.builds(F, st.integers(-5, 5).filter(bool), st.integers(1, 4)))
def test_scaling_scales_cofactors(p, c):
    X = clifford_build(p)
    kf, kg = torus_invariant(X)
    sf, sg = torus_invariant(X.scale(c))
    assert sf.k == kf.k * c and sg.k == kg.k * c


def test_degree_vector():
    X = VectorField(x1 ** 3, MPoly(), x3, x4 ** 2)
    assert tuple(degree_vector(X)) == (3, 0, 1, 2)


def test_exceptional_sign_is_forced():
    # D = 2k x3, E = -2k x4, F = k x3 x4 give P4 = -2k x4 (x4^2 - 1/2); the
    # opposite sign breaks invariance of g
    k = 1
    X = clifford_build(CliffordParams.of(d=2 * k * x3, e=-2 * k * x4, f=k * x3 * x4))
    assert X.p3 == parse_poly("2*x3^3 - x3")
    assert X.p4 == parse_poly("-2*x4^3 + x4")
    _, kg = torus_invariant(X)
    assert kg.k == 4 * k * (x3 ** 2 - x4 ** 2)
    flipped = VectorField(X.p1, X.p2, X.p3, -X.p4)
    with pytest.raises(NotInvariant) as exc:
        torus_invariant(flipped)
    assert exc.value.which == "g"
    assert lie_derive(flipped, TORUS_G).divmod(TORUS_G)[1] == 8 * x4 ** 4 - 4 * x4 ** 2
