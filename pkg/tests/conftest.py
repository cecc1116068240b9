from fractions import Fraction

import sympy as sp
from hypothesis import HealthCheck, settings, strategies as st

from cliffordfields import MPoly, UPoly

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

SX = sp.symbols("x1:5")
ST = sp.Symbol("t")

small_fracs = st.builds(Fraction, st.integers(-6, 6), st.sampled_from([1, 1, 2, 3, 4]))
nonzero_fracs = small_fracs.filter(bool)


@st.composite
def upolys(draw, max_deg=5, nonzero=False):
    n = draw(st.integers(0, max_deg))
    cs = draw(st.lists(small_fracs, min_size=n + 1, max_size=n + 1))
    if nonzero:
        cs[-1] = draw(nonzero_fracs)
    return UPoly(cs)


@st.composite
def mpolys(draw, max_deg=3, max_terms=5, nonzero=False):
    n = draw(st.integers(1 if nonzero else 0, max_terms))
    terms = {}
    for _ in range(n):
        budget = draw(st.integers(0, max_deg))
        e = []
        for _ in range(3):
            k = draw(st.integers(0, budget))
            e.append(k)
            budget -= k
        e.append(budget)
        terms[tuple(e)] = terms.get(tuple(e), 0) + draw(nonzero_fracs)
    p = MPoly(terms)
    if nonzero and p.is_zero():
        p = MPoly.const(1)
    return p


def to_sympy(p: MPoly):
    return sp.Add(*[sp.Rational(c.numerator, c.denominator) * sp.Mul(*[v ** k for v, k in zip(SX, e)])
                    for e, c in p.terms()])


def from_sympy(expr) -> MPoly:
    poly = sp.Poly(sp.expand(expr), *SX)
    return MPoly({e: Fraction(int(c.p), int(c.q)) for e, c in poly.terms()})


def up_to_sympy(p: UPoly):
    return sp.Poly([sp.Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)] or [0], ST)


def up_from_sympy(poly) -> UPoly:
    return UPoly([Fraction(int(c.p), int(c.q)) for c in reversed(sp.Poly(poly, ST).all_coeffs())])
