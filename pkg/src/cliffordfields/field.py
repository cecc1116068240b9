"""Polynomial vector fields in R^4 and fields tangent to the Clifford torus.

A field leaves the torus ``f = g = 0`` invariant, with

    f = x1^2 + x2^2 - 1/2,    g = x3^2 + x4^2 - 1/2,

exactly when it can be written as

    P1 = A f - 2 C x2,   P2 = B f + 2 C x1,
    P3 = D g - 2 F x4,   P4 = E g + 2 F x3

for polynomials A..F. :func:`clifford_build` evaluates this form and
:func:`clifford_decompose` recovers a canonical choice of A..F.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from fractions import Fraction

from .errors import DoesNotDivide, NotInvariant
from .mpoly import MPoly, x1, x2, x3, x4

__all__ = [
    "TORUS_F",
    "TORUS_G",
    "VectorField",
    "DegreeVector",
    "CliffordParams",
    "Cofactor",
    "lie_derive",
    "degree_vector",
    "invariance_cofactor",
    "torus_invariant",
    "clifford_build",
    "clifford_decompose",
    "hopf_field",
]

HALF = Fraction(1, 2)
TORUS_F = x1 ** 2 + x2 ** 2 - HALF
TORUS_G = x3 ** 2 + x4 ** 2 - HALF


@dataclass(frozen=True)
class VectorField:
    p1: MPoly
    p2: MPoly
    p3: MPoly
    p4: MPoly

    @property
    def components(self) -> tuple[MPoly, MPoly, MPoly, MPoly]:
        return (self.p1, self.p2, self.p3, self.p4)

    def __getitem__(self, i: int) -> MPoly:
        """Component ``P_i`` for ``i`` in 1..4."""
        return self.components[i - 1]

    @property
    def degree(self) -> int:
        return max(p.total_degree for p in self.components)

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.components)

    def scale(self, c) -> "VectorField":
        c = Fraction(c)
        return VectorField(*(p * c for p in self.components))

    def permute(self, perm) -> "VectorField":
        """Relabel variables: old ``x_j`` becomes ``x_perm[j-1]``. Components
        move along with their variables."""
        comps = [None] * 4
        for j, p in enumerate(self.components):
            comps[perm[j] - 1] = p.permute(perm)
        return VectorField(*comps)

    def __str__(self) -> str:
        return "\n".join(f"P{i} = {p}" for i, p in enumerate(self.components, 1))


@dataclass(frozen=True)
class DegreeVector:
    m1: int
    m2: int
    m3: int
    m4: int
    zero: tuple[bool, bool, bool, bool]

    def __iter__(self):
        return iter((self.m1, self.m2, self.m3, self.m4))

    def __getitem__(self, i: int) -> int:
        return (self.m1, self.m2, self.m3, self.m4)[i - 1]


@dataclass(frozen=True)
class CliffordParams:
    a: MPoly
    b: MPoly
    c: MPoly
    d: MPoly
    e: MPoly
    f: MPoly

    @classmethod
    def of(cls, **kw) -> "CliffordParams":
        """Keyword constructor; missing entries default to zero, ints and
        Fractions are promoted to constants."""
        vals = {}
        for fld in fields(cls):
            v = kw.pop(fld.name, kw.pop(fld.name.upper(), 0))
            vals[fld.name] = v if isinstance(v, MPoly) else MPoly.const(v)
        if kw:
            raise TypeError(f"unknown parameters {sorted(kw)}")
        return cls(**vals)

    def as_tuple(self) -> tuple[MPoly, ...]:
        return (self.a, self.b, self.c, self.d, self.e, self.f)

    def __str__(self) -> str:
        return "\n".join(f"{n} = {p}" for n, p in zip("ABCDEF", self.as_tuple()))


@dataclass(frozen=True)
class Cofactor:
    k: MPoly


def lie_derive(X: VectorField, h: MPoly) -> MPoly:
    """``X h = sum_i P_i dh/dx_i``."""
    out = MPoly()
    for i, p in enumerate(X.components, 1):
        if p:
            dh = h.partial(i)
            if dh:
                out = out + p * dh
    return out


def degree_vector(X: VectorField) -> DegreeVector:
    comps = X.components
    return DegreeVector(*(max(p.total_degree, 0) for p in comps),
                        zero=tuple(p.is_zero() for p in comps))


def invariance_cofactor(X: VectorField, h: MPoly) -> Cofactor:
    """Cofactor ``K`` with ``X h = K h``; raises :class:`NotInvariant`."""
    if h.is_constant():
        raise ValueError("invariance of a constant polynomial is meaningless")
    try:
        return Cofactor(lie_derive(X, h).divide_exact(h))
    except DoesNotDivide:
        raise NotInvariant(f"{h} = 0 is not invariant", which=str(h)) from None


def torus_invariant(X: VectorField) -> tuple[Cofactor, Cofactor]:
    """Cofactors of both torus equations; :class:`NotInvariant` carries
    ``which`` = ``"f"`` or ``"g"``."""
    out = []
    for name, h in (("f", TORUS_F), ("g", TORUS_G)):
        try:
            out.append(invariance_cofactor(X, h))
        except NotInvariant:
            raise NotInvariant(f"{name} = {h} is not invariant", which=name) from None
    return out[0], out[1]


def clifford_build(params: CliffordParams) -> VectorField:
    a, b, c, d, e, f = params.as_tuple()
    return VectorField(
        a * TORUS_F - 2 * c * x2,
        b * TORUS_F + 2 * c * x1,
        d * TORUS_G - 2 * f * x4,
        e * TORUS_G + 2 * f * x3,
    )


def _decompose_pair(p, q, u, v, torus, i):
    # u*q - v*p = (u*B - v*A + 2C) * torus + C, so reducing it modulo the
    # torus equation (monic in u) yields the canonical C directly
    c = (u * q - v * p).rem_monic_in(i, torus)
    a = (p + 2 * c * v).divide_exact(torus)
    b = (q - 2 * c * u).divide_exact(torus)
    return a, b, c


def clifford_decompose(X: VectorField) -> CliffordParams:
    """Canonical parameters, with C of x1-degree <= 1 and F of x3-degree <= 1.

    Raises :class:`NotInvariant` when the field does not have this form.
    """
    try:
        a, b, c = _decompose_pair(X.p1, X.p2, x1, x2, TORUS_F, 1)
    except DoesNotDivide:
        raise NotInvariant("x1^2 + x2^2 = 1/2 is not invariant", which="f") from None
    try:
        d, e, f = _decompose_pair(X.p3, X.p4, x3, x4, TORUS_G, 3)
    except DoesNotDivide:
        raise NotInvariant("x3^2 + x4^2 = 1/2 is not invariant", which="g") from None
    return CliffordParams(a, b, c, d, e, f)


def hopf_field() -> VectorField:
    """The linear field rotating both circles, ``(-2x2, 2x1, -2x4, 2x3)``."""
    return clifford_build(CliffordParams.of(c=1, f=1))
