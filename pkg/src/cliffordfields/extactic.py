"""Extactic polynomials and invariant-hypersurface multiplicities.

For a basis v_1..v_l of a polynomial subspace W, the extactic polynomial is
the determinant of the l x l matrix whose row j holds the j-fold Lie
derivatives X^j(v_1), ..., X^j(v_l). Any invariant hypersurface h = 0 with
h in W divides it, and the largest power of h that divides it is the
multiplicity of that hypersurface. Multiplicity k means k invariant
hypersurfaces of nearby fields collapse onto h = 0; that deformation
statement is not computed here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .arith import AlgebraicReal, up_real_roots
from .errors import DoesNotDivide, ExtacticIdenticallyZero
from .field import VectorField, lie_derive
from .linalg import det_bareiss, det_laplace
from .mpoly import MPoly, coordinate_root_poly

__all__ = [
    "Basis",
    "Hyperplane",
    "iterated_lie",
    "extactic_poly",
    "hypersurface_multiplicity",
    "invariant_members",
]


@dataclass(frozen=True)
class Basis:
    elements: tuple[MPoly, ...]

    def __init__(self, elements: Sequence[MPoly]):
        elems = tuple(e if isinstance(e, MPoly) else MPoly.const(e) for e in elements)
        if len(elems) < 2:
            raise ValueError("a basis needs at least two elements")
        if any(e.is_zero() for e in elems):
            raise ValueError("basis elements must be nonzero")
        object.__setattr__(self, "elements", elems)

    @classmethod
    def coordinate(cls, i: int) -> "Basis":
        """``{1, xi}``."""
        return cls([MPoly.const(1), MPoly.var(i)])

    @classmethod
    def hyperplanes(cls) -> "Basis":
        """``{1, x1, x2, x3, x4}``."""
        return cls([MPoly.const(1)] + [MPoly.var(i) for i in range(1, 5)])

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


@dataclass(frozen=True)
class Hyperplane:
    """``xi = root``; ``root`` may be irrational, so the defining polynomial
    over Q is the minimal polynomial of ``root`` evaluated at ``xi``."""

    var: int
    root: AlgebraicReal

    def rational_poly(self) -> MPoly:
        return MPoly.from_upoly(self.root.minpoly, self.var)

    def __str__(self) -> str:
        if self.root.is_rational():
            return str(MPoly.var(self.var) - self.root.as_rational())
        return f"x{self.var} - ({self.root})"


def iterated_lie(X: VectorField, v: MPoly, j: int) -> MPoly:
    if j < 0:
        raise ValueError("order must be non-negative")
    for _ in range(j):
        if v.is_zero():
            break
        v = lie_derive(X, v)
    return v


def extactic_poly(X: VectorField, W: Basis | Sequence[MPoly]) -> MPoly:
    if not isinstance(W, Basis):
        W = Basis(W)
    rows = [list(W.elements)]
    for _ in range(len(W) - 1):
        rows.append([lie_derive(X, v) for v in rows[-1]])
    if len(W) <= 5:
        return det_laplace(rows)
    return det_bareiss(rows, lambda a, b: a.divide_exact(b))


def _power_multiplicity(e: MPoly, h: MPoly) -> int:
    k = 0
    while True:
        try:
            e = e.divide_exact(h)
        except DoesNotDivide:
            return k
        k += 1


def hypersurface_multiplicity(X: VectorField, h: MPoly, W: Basis | Sequence[MPoly]) -> int:
    """Largest ``k`` with ``h**k`` dividing the extactic polynomial."""
    if h.is_constant():
        raise ValueError("h must be non-constant")
    e = extactic_poly(X, W)
    if e.is_zero():
        raise ExtacticIdenticallyZero("extactic polynomial vanishes identically")
    return _power_multiplicity(e, h)


def invariant_members(X: VectorField, W: Basis | Sequence[MPoly]) -> list[tuple[Hyperplane, int]]:
    """Real coordinate hyperplanes ``xi = a`` in the span of ``W`` that divide
    the extactic polynomial, with multiplicities.

    Only bases whose non-constant members are single coordinates are
    supported, which covers ``{1, xi}`` and ``{1, x1, x2, x3, x4}``; oblique
    hyperplanes in the latter are not searched.
    """
    if not isinstance(W, Basis):
        W = Basis(W)
    if not any(v.is_constant() for v in W):
        raise ValueError("basis must contain a constant to host xi - a")
    coords = []
    for v in W:
        if v.is_constant():
            continue
        if len(v) != 1 or v.total_degree != 1:
            raise ValueError(f"unsupported basis element {v}; expected a coordinate")
        coords.append(next(iter(v.variables())))
    e = extactic_poly(X, W)
    if e.is_zero():
        raise ExtacticIdenticallyZero("extactic polynomial vanishes identically")
    out = []
    for i in sorted(set(coords)):
        roots_poly = coordinate_root_poly(e, i)
        if roots_poly.degree < 1:
            continue
        for a in up_real_roots(roots_poly):
            k = _power_multiplicity(e, MPoly.from_upoly(a.minpoly, i))
            out.append((Hyperplane(i, a), k))
    return out
