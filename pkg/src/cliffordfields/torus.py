"""Invariant meridians and parallels of fields tangent to the Clifford torus.

A meridian ``M(a, b)`` is the circle ``x1^2 + x2^2 = 1/2, x3 = a, x4 = b``
with ``a^2 + b^2 = 1/2``. It counts as invariant when the hyperplanes
``x3 = a`` and ``x4 = b`` are, i.e. when ``x3 - a`` divides P3 and ``x4 - b``
divides P4. Its multiplicity is the smaller of the two divisibility
multiplicities. Parallels swap the roles of (x1, x2) and (x3, x4).

The reported bound for meridians is ``min(deg P3, deg P4) - 2`` (clamped at
zero), or 4 when that minimum degree is 3. The bound is checked, not
assumed: some fields exceed it (see ``tests/test_torus.py``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .arith import AlgebraicReal, Interval, alg_refine, alg_sign_at, up_real_roots
from .errors import DoesNotDivide
from .field import CliffordParams, VectorField, clifford_build, torus_invariant
from .mpoly import MPoly, coordinate_root_poly, x3, x4
from .upoly import UPoly, isolate_real_roots, resultant, up_resultant

__all__ = [
    "RADIUS_SQ",
    "CirclePoint",
    "MeridianRecord",
    "ParallelRecord",
    "DetectionReport",
    "coordinate_root_poly",
    "on_circle",
    "pair_on_circle",
    "find_meridians",
    "find_parallels",
    "circle_bound",
    "rational_circle_points",
    "build_extremal_meridian_field",
    "build_extremal_parallel_field",
    "build_exceptional_field",
]

RADIUS_SQ = Fraction(1, 2)
SWAP_PAIRS = (3, 4, 1, 2)


@dataclass(frozen=True)
class CirclePoint:
    a: AlgebraicReal
    b: AlgebraicReal

    def __str__(self) -> str:
        return f"({self.a}, {self.b})"

    def approx(self) -> tuple[float, float]:
        return float(self.a), float(self.b)


@dataclass(frozen=True)
class MeridianRecord:
    """``k1`` is the multiplicity of ``x3 - a`` in P3, ``k2`` of ``x4 - b`` in P4."""

    point: CirclePoint
    k1: int
    k2: int

    @property
    def multiplicity(self) -> int:
        return min(self.k1, self.k2)


@dataclass(frozen=True)
class ParallelRecord:
    """``k1`` is the multiplicity of ``x1 - a`` in P1, ``k2`` of ``x2 - b`` in P2."""

    point: CirclePoint
    k1: int
    k2: int

    @property
    def multiplicity(self) -> int:
        return min(self.k1, self.k2)


@dataclass(frozen=True)
class DetectionReport:
    kind: str
    records: tuple = ()
    bound: int = 0
    bound_rule: str = "generic"
    degrees: tuple[int, int] = (0, 0)
    degenerate: bool = False

    @property
    def total_with_multiplicity(self) -> int:
        return sum(r.multiplicity for r in self.records)

    @property
    def count(self) -> int:
        return len(self.records)

    @property
    def verdict(self) -> bool | None:
        """Whether the total respects the bound; ``None`` when degenerate."""
        if self.degenerate:
            return None
        return self.total_with_multiplicity <= self.bound

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "degenerate": self.degenerate,
            "degrees": list(self.degrees),
            "count": self.count,
            "total_with_multiplicity": self.total_with_multiplicity,
            "bound": self.bound,
            "bound_rule": self.bound_rule,
            "verdict": self.verdict,
            "records": [
                {"a": r.point.a.to_dict(), "b": r.point.b.to_dict(),
                 "k1": r.k1, "k2": r.k2, "multiplicity": r.multiplicity}
                for r in self.records
            ],
        }


def circle_bound(min_degree: int) -> tuple[int, str]:
    """``(bound, rule)`` for the smaller degree of the two relevant components."""
    if min_degree == 3:
        return 4, "exceptional"
    return max(min_degree - 2, 0), "generic"


# exact pairing on the circle a^2 + b^2 = 1/2 ------------------------------

def _shifted_square_resultant(m: UPoly, radius_sq: Fraction) -> UPoly:
    """``S(u) = Res_s(m(s), s^2 + u - radius_sq)``; its roots are
    ``radius_sq - s0^2`` over the roots ``s0`` of ``m``."""
    lift = UPoly([UPoly.const(c, "u") for c in m.coeffs], "s")
    elim = UPoly([UPoly((-radius_sq, Fraction(1)), "u"), UPoly((), "u"), UPoly.const(1, "u")], "s")
    res = resultant(lift, elim)
    return res if isinstance(res, UPoly) else UPoly.const(res, "u")


def _enclose_square(iv: Interval) -> Interval:
    return iv.square()


def _locate(alpha: AlgebraicReal, transform, slots: list[Interval]) -> int:
    """Index of the slot whose interior contains ``transform(alpha)``.

    The caller guarantees that the transformed value is a root of the
    polynomial the slots isolate, so refinement terminates.
    """
    a = alpha
    while True:
        enc = transform(a.isolator)
        for idx, s in enumerate(slots):
            if s.lo < enc.lo and enc.hi < s.hi:
                return idx
        a = alg_refine(a, a.isolator.width / 2 or 1)


def on_circle(a: AlgebraicReal, b: AlgebraicReal, radius_sq=RADIUS_SQ) -> bool:
    """Exact test of ``a^2 + b^2 == radius_sq``."""
    radius_sq = Fraction(radius_sq)
    if a.is_rational() and b.is_rational():
        return a.as_rational() ** 2 + b.as_rational() ** 2 == radius_sq
    # b must be a root of Res_s(m_a(s), s^2 + t^2 - r), i.e. pair with some
    # conjugate of a; this also makes b^2 a root of S below
    if alg_sign_at(up_resultant(a.minpoly, radius_sq), b) != 0:
        return False
    # then decide whether that conjugate is a itself (up to sign) by
    # locating r - a^2 and b^2 among the isolated real roots of S
    s = _shifted_square_resultant(a.minpoly, radius_sq)
    slots = [Interval(lo, hi) for lo, hi in isolate_real_roots(s)]
    ia = _locate(a, lambda iv: radius_sq - iv.square(), slots)
    ib = _locate(b, _enclose_square, slots)
    return ia == ib


def pair_on_circle(as_: Sequence[tuple[AlgebraicReal, int]],
                   bs: Sequence[tuple[AlgebraicReal, int]],
                   radius_sq=RADIUS_SQ) -> list[tuple[CirclePoint, int, int]]:
    """All ``(a, b)`` combinations lying on the circle, carrying both
    multiplicities along."""
    out = []
    for (a, ka), (b, kb) in itertools.product(as_, bs):
        if on_circle(a, b, radius_sq):
            out.append((CirclePoint(a, b), ka, kb))
    return out


# detection ---------------------------------------------------------------

def _divisor_multiplicity(p: MPoly, d: MPoly) -> int:
    k = 0
    while True:
        try:
            p = p.divide_exact(d)
        except DoesNotDivide:
            return k
        k += 1


def _coordinate_roots(p: MPoly, i: int) -> list[tuple[AlgebraicReal, int]]:
    rp = coordinate_root_poly(p, i)
    if rp.degree < 1:
        return []
    out = []
    for a in up_real_roots(rp):
        k = _divisor_multiplicity(p, MPoly.from_upoly(a.minpoly, i))
        out.append((a, k))
    return out


def _find_circles(X: VectorField, i: int, j: int, kind: str, record_cls,
                  check_invariant: bool) -> DetectionReport:
    if check_invariant:
        torus_invariant(X)
    pi, pj = X[i], X[j]
    degs = (max(pi.total_degree, 0), max(pj.total_degree, 0))
    bound, rule = circle_bound(min(degs))
    if pi.is_zero() or pj.is_zero():
        return DetectionReport(kind, (), bound, rule, degs, degenerate=True)
    as_ = _coordinate_roots(pi, i)
    bs = _coordinate_roots(pj, j) if as_ else []
    records = tuple(record_cls(pt, ka, kb) for pt, ka, kb in pair_on_circle(as_, bs))
    return DetectionReport(kind, records, bound, rule, degs)


def find_meridians(X: VectorField, check_invariant: bool = True) -> DetectionReport:
    """Invariant meridians from divisibility of P3 by ``x3 - a`` and of P4 by
    ``x4 - b``. Raises :class:`~cliffordfields.errors.NotInvariant` if the
    torus is not invariant; reports ``degenerate`` when P3 or P4 vanishes."""
    return _find_circles(X, 3, 4, "meridians", MeridianRecord, check_invariant)


def find_parallels(X: VectorField, check_invariant: bool = True) -> DetectionReport:
    return _find_circles(X, 1, 2, "parallels", ParallelRecord, check_invariant)


# constructions -----------------------------------------------------------

def _slopes() -> Iterator[Fraction]:
    for h in itertools.count(1):
        for num in range(-h, h + 1):
            for den in range(1, h + 1):
                if max(abs(num), den) == h and Fraction(num, den).denominator == den:
                    yield Fraction(num, den)


def rational_circle_points(n: int) -> list[tuple[Fraction, Fraction]]:
    """``n`` rational points with non-negative coordinates on
    ``x^2 + y^2 = 1/2``, with pairwise distinct ``|x|`` and pairwise distinct
    ``|y|``. Lines of rational slope through (1/2, 1/2) meet the circle again
    at a rational point; signs are then dropped."""
    half = Fraction(1, 2)
    pts = [(half, half)]
    xs, ys = {half}, {half}
    for s in _slopes():
        if len(pts) >= n:
            break
        u = -(1 + s) / (1 + s * s)
        x, y = abs(half + u), abs(half + s * u)
        if x in xs or y in ys:
            continue
        pts.append((x, y))
        xs.add(x)
        ys.add(y)
    return pts[:n]


def _check_points(points, radius_sq=RADIUS_SQ, strict=True):
    pts = [(Fraction(a), Fraction(b)) for a, b in points]
    for a, b in pts:
        if a * a + b * b != radius_sq:
            raise ValueError(f"({a}, {b}) is not on the circle x^2 + y^2 = {radius_sq}")
    if strict:
        distinct = sorted(set(pts))
        for (a1, b1), (a2, b2) in itertools.combinations(distinct, 2):
            if abs(a1) == abs(a2) or abs(b1) == abs(b2):
                raise ValueError(
                    f"points ({a1}, {b1}) and ({a2}, {b2}) share |a| or |b|, which creates "
                    "extra meridians at the cross pairs; pass strict=False to allow it")
    return pts


def build_extremal_meridian_field(points: Iterable[tuple], k3=1, k4=1, *,
                                  a: MPoly | int = 0, b: MPoly | int = 0, c: MPoly | int = 0,
                                  strict: bool = True) -> VectorField:
    """Field with D = k3 prod(x3 - a_i), E = k4 prod(x4 - b_i), F = 0.

    Repeating a point raises the multiplicity of that meridian. With
    ``strict`` the points must not share ``|a|`` or ``|b|`` unless equal, so
    the field has exactly the listed meridians.
    """
    k3, k4 = Fraction(k3), Fraction(k4)
    if not k3 or not k4:
        raise ValueError("k3 and k4 must be nonzero")
    pts = _check_points(points, strict=strict)
    d = MPoly.const(k3)
    e = MPoly.const(k4)
    for pa, pb in pts:
        d = d * (x3 - pa)
        e = e * (x4 - pb)
    return clifford_build(CliffordParams.of(a=a, b=b, c=c, d=d, e=e, f=0))


def build_extremal_parallel_field(points: Iterable[tuple], k1=1, k2=1, *,
                                  strict: bool = True) -> VectorField:
    """Mirror of :func:`build_extremal_meridian_field` for parallels."""
    return build_extremal_meridian_field(points, k1, k2, strict=strict).permute(SWAP_PAIRS)


def build_exceptional_field(k=1, *, a: MPoly | int = 0, b: MPoly | int = 0,
                            c: MPoly | int = 0) -> VectorField:
    """D = 2k x3, E = -2k x4, F = k x3 x4, which gives
    P3 = 2k x3 (x3^2 - 1/2) and P4 = -2k x4 (x4^2 - 1/2), with the four
    meridians at (0, +-1/sqrt 2) and (+-1/sqrt 2, 0)."""
    k = Fraction(k)
    if not k:
        raise ValueError("k must be nonzero")
    return clifford_build(CliffordParams.of(
        a=a, b=b, c=c, d=2 * k * x3, e=-2 * k * x4, f=k * x3 * x4))
