"""Exact scalars: rationals, rational-endpoint intervals and real algebraic
numbers.

Rationals are :class:`fractions.Fraction`, which already keeps
``gcd(|num|, den) == 1`` and ``den > 0`` after every operation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key, total_ordering

from .upoly import (
    UPoly,
    count_real_roots,
    count_roots_closed,
    irreducible_factors,
    isolate_real_roots,
    up_gcd,
)

__all__ = [
    "Rational",
    "Interval",
    "AlgebraicReal",
    "alg_from_rational",
    "alg_refine",
    "alg_equals",
    "alg_compare",
    "alg_sign_at",
    "up_real_roots",
    "up_root_multiplicity",
]

Rational = Fraction


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def contains(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def strictly_contains(self, other: "Interval") -> bool:
        return self.lo < other.lo and other.hi < self.hi

    def overlaps(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def intersect(self, other: "Interval") -> "Interval | None":
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        return Interval(lo, hi) if lo <= hi else None

    def __add__(self, other):
        if isinstance(other, Interval):
            return Interval(self.lo + other.lo, self.hi + other.hi)
        return Interval(self.lo + other, self.hi + other)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Interval):
            other = Interval(other, other)
        p = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return Interval(min(p), max(p))

    __rmul__ = __mul__

    def square(self) -> "Interval":
        if self.lo >= 0:
            return Interval(self.lo ** 2, self.hi ** 2)
        if self.hi <= 0:
            return Interval(self.hi ** 2, self.lo ** 2)
        return Interval(0, max(self.lo ** 2, self.hi ** 2))

    def __pow__(self, n: int):
        out = Interval(1, 1)
        for _ in range(n):
            out = out * self
        return out

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


def eval_interval(p: UPoly, iv: Interval) -> Interval:
    """Horner evaluation in interval arithmetic (an enclosure of the range)."""
    acc = Interval(0, 0)
    for c in reversed(p.coeffs):
        acc = acc * iv + c
    return acc


@total_ordering
@dataclass(frozen=True, eq=False)
class AlgebraicReal:
    """A real root of an irreducible rational polynomial, pinned down by an
    isolating interval with rational endpoints.

    The constructor normalizes ``minpoly`` to be monic and checks that it is
    square-free with exactly one root in the closed isolator. Irreducibility
    is the caller's responsibility; :meth:`root_of` and :func:`up_real_roots`
    guarantee it.
    """

    minpoly: UPoly
    isolator: Interval

    def __post_init__(self):
        m = self.minpoly
        if m.degree < 1:
            raise ValueError("minimal polynomial must be non-constant")
        object.__setattr__(self, "minpoly", m.monic().with_var("t"))
        if up_gcd(self.minpoly, self.minpoly.derivative()).degree > 0:
            raise ValueError(f"minimal polynomial {m} is not square-free")
        if count_roots_closed(self.minpoly, self.isolator.lo, self.isolator.hi) != 1:
            raise ValueError(f"{self.isolator} does not isolate a single root of {m}")

    @classmethod
    def root_of(cls, p: UPoly, isolator: Interval) -> "AlgebraicReal":
        """The unique real root of ``p`` in ``isolator``, with its minimal
        polynomial extracted by factoring."""
        hits = [f for f in irreducible_factors(p)
                if count_roots_closed(f, isolator.lo, isolator.hi)]
        if len(hits) != 1:
            raise ValueError(f"{isolator} does not isolate a single root of {p}")
        return cls(hits[0], isolator)

    @property
    def degree(self) -> int:
        return self.minpoly.degree

    def is_rational(self) -> bool:
        return self.minpoly.degree == 1

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return -self.minpoly.coeffs[0]

    def __float__(self) -> float:
        if self.is_rational():
            return float(self.as_rational())
        return float(alg_refine(self, Fraction(1, 2 ** 60)).isolator.mid)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = alg_from_rational(Fraction(other))
        if not isinstance(other, AlgebraicReal):
            return NotImplemented
        return alg_equals(self, other)

    def __lt__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = alg_from_rational(Fraction(other))
        return alg_compare(self, other) < 0

    def __hash__(self) -> int:
        # equal numbers share a minpoly; the isolator may differ
        return hash(self.minpoly)

    def __str__(self) -> str:
        if self.is_rational():
            return str(self.as_rational())
        return f"root of {self.minpoly} in {self.isolator}"

    def __repr__(self) -> str:
        return f"AlgebraicReal({self.minpoly}, {self.isolator})"

    def to_dict(self) -> dict:
        return {
            "minpoly": [str(c) for c in self.minpoly.coeffs],
            "isolator": [str(self.isolator.lo), str(self.isolator.hi)],
            "approx": float(self),
        }


def alg_from_rational(q) -> AlgebraicReal:
    q = Fraction(q)
    return AlgebraicReal(UPoly((-q, Fraction(1))), Interval(q, q))


def alg_refine(alpha: AlgebraicReal, width) -> AlgebraicReal:
    """Bisect the isolator until it is no wider than ``width``."""
    width = Fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    m = alpha.minpoly
    lo, hi = alpha.isolator.lo, alpha.isolator.hi
    if m.degree == 1:
        q = -m.coeffs[0]
        return alpha if lo == hi else AlgebraicReal(m, Interval(q, q))
    if hi - lo <= width:
        return alpha
    # irreducible of degree >= 2: no rational roots, so endpoints and
    # midpoints never vanish and the sign changes across the root
    s_lo = m.sign_at(lo)
    while hi - lo > width:
        mid = (lo + hi) / 2
        s = m.sign_at(mid)
        if s == 0:  # pragma: no cover - excluded by irreducibility
            if count_real_roots(m, lo, mid):
                hi = mid
            else:
                lo = mid
            continue
        if s == s_lo:
            lo = mid
        else:
            hi = mid
    return AlgebraicReal(m, Interval(lo, hi))


def alg_equals(alpha: AlgebraicReal, beta: AlgebraicReal) -> bool:
    if alpha.minpoly != beta.minpoly:
        return False
    common = alpha.isolator.intersect(beta.isolator)
    if common is None:
        return False
    return count_roots_closed(alpha.minpoly, common.lo, common.hi) == 1


def alg_compare(alpha: AlgebraicReal, beta: AlgebraicReal) -> int:
    """-1, 0 or +1. Distinct numbers are separated by refinement."""
    if alg_equals(alpha, beta):
        return 0
    a, b = alpha, beta
    while a.isolator.overlaps(b.isolator):
        a = alg_refine(a, a.isolator.width / 2 or 1)
        b = alg_refine(b, b.isolator.width / 2 or 1)
    return -1 if a.isolator.hi < b.isolator.lo else 1


alg_sort_key = cmp_to_key(alg_compare)


def alg_sign_at(p: UPoly, alpha: AlgebraicReal) -> int:
    """Sign of ``p(alpha)``. Zero exactly when the minimal polynomial divides
    ``p``; otherwise the remainder has no root at ``alpha`` and the isolator
    is shrunk until the remainder has constant sign on it."""
    m = alpha.minpoly
    r = p.with_var("t") % m
    if r.is_zero():
        return 0
    if alpha.is_rational():
        return r.sign_at(alpha.as_rational())
    a = alpha
    while count_roots_closed(r, a.isolator.lo, a.isolator.hi):
        a = alg_refine(a, a.isolator.width / 2)
    return r.sign_at(a.isolator.lo)


def up_real_roots(p: UPoly) -> list[AlgebraicReal]:
    """Distinct real roots of ``p``, ascending, each with its irreducible
    minimal polynomial and a certified isolator."""
    if p.is_zero():
        raise ValueError("real roots of the zero polynomial")
    roots: list[AlgebraicReal] = []
    for f in irreducible_factors(p):
        if f.degree == 1:
            roots.append(alg_from_rational(-f.coeffs[0]))
            continue
        for lo, hi in isolate_real_roots(f):
            roots.append(AlgebraicReal(f, Interval(lo, hi)))
    roots.sort(key=alg_sort_key)
    return roots


def up_root_multiplicity(p: UPoly, alpha: AlgebraicReal) -> int:
    """Largest ``k`` such that ``minpoly(alpha)**k`` divides ``p``."""
    if p.is_zero():
        raise ValueError("multiplicity in the zero polynomial")
    m = alpha.minpoly
    q = p.with_var("t")
    k = 0
    while True:
        quo, rem = divmod(q, m)
        if not rem.is_zero():
            return k
        q = quo
        k += 1
