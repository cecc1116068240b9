"""Univariate polynomials over the rationals.

Dense coefficient tuples, lowest degree first. This is the kernel used for
root detection: gcd, square-free part, Sturm sequences, real-root isolation,
factorization into irreducibles and resultants.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm
from typing import Iterable, Sequence

from .linalg import det_bareiss

__all__ = [
    "UPoly",
    "up_gcd",
    "up_squarefree",
    "up_resultant",
    "resultant",
    "sturm_sequence",
    "count_real_roots",
    "isolate_real_roots",
    "rational_roots",
    "irreducible_factors",
    "root_bound",
]


def _strip(coeffs: Iterable) -> tuple:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class UPoly:
    """Dense univariate polynomial; ``coeffs[i]`` multiplies ``var**i``.

    Coefficients are usually :class:`~fractions.Fraction`, but any exact ring
    element works for the arithmetic operators (the resultant code stores
    ``UPoly`` coefficients inside ``UPoly``).
    """

    coeffs: tuple = ()
    var: str = field(default="t", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _strip(
            Fraction(c) if isinstance(c, int) else c for c in self.coeffs))

    # construction -----------------------------------------------------

    @classmethod
    def from_roots(cls, roots: Iterable, lc=1, var: str = "t") -> "UPoly":
        p = cls((Fraction(lc),), var)
        for r in roots:
            p = p * cls((-Fraction(r), Fraction(1)), var)
        return p

    @classmethod
    def const(cls, c, var: str = "t") -> "UPoly":
        return cls((Fraction(c),), var)

    @classmethod
    def x(cls, var: str = "t") -> "UPoly":
        return cls((Fraction(0), Fraction(1)), var)

    # basic queries ----------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, UPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == _strip((Fraction(other),))
        return NotImplemented

    # arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "UPoly":
        if isinstance(other, UPoly):
            return other
        return UPoly((other,), self.var)

    def __add__(self, other):
        o = self._coerce(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return UPoly((self[i] + o[i] for i in range(n)), self.var)

    __radd__ = __add__

    def __neg__(self):
        return UPoly((-c for c in self.coeffs), self.var)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        if not self.coeffs or not o.coeffs:
            return UPoly((), self.var)
        out = [0] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] = out[i + j] + a * b
        return UPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = UPoly.const(1, self.var)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other):
        d = self._coerce(other)
        if d.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        dd = d.degree
        inv = d.lc
        q = [0] * max(len(r) - dd, 0)
        for k in range(len(r) - 1, dd - 1, -1):
            c = r[k]
            if c == 0:
                continue
            c = c / inv if isinstance(c, Fraction) else _exact_div(c, inv)
            q[k - dd] = c
            for j, b in enumerate(d.coeffs):
                r[k - dd + j] = r[k - dd + j] - c * b
        return UPoly(q, self.var), UPoly(r[:dd] if dd > 0 else (), self.var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other: "UPoly") -> bool:
        return (other % self).is_zero()

    def exact_div(self, other) -> "UPoly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    # calculus / evaluation -------------------------------------------

    def derivative(self) -> "UPoly":
        return UPoly((i * c for i, c in enumerate(self.coeffs) if i), self.var)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def sign_at(self, x: Fraction) -> int:
        v = self(x)
        return (v > 0) - (v < 0)

    def monic(self) -> "UPoly":
        if self.is_zero():
            return self
        lc = self.lc
        return UPoly((c / lc for c in self.coeffs), self.var)

    def primitive(self) -> tuple[Fraction, tuple[int, ...]]:
        """Split into ``content * integer_primitive`` with positive leading term."""
        if self.is_zero():
            return Fraction(0), ()
        den = lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if ints[-1] < 0:
            g = -g
        return Fraction(g, den), tuple(v // g for v in ints)

    def with_var(self, var: str) -> "UPoly":
        return UPoly(self.coeffs, var)

    @cached_property
    def sturm(self) -> tuple["UPoly", ...]:
        return sturm_sequence(self)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            neg = c < 0
            a = -c if neg else c
            if i == 0:
                body = str(a)
            else:
                mono = self.var if i == 1 else f"{self.var}^{i}"
                body = mono if a == 1 else f"{a}*{mono}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"UPoly({self})"


def _exact_div(a, b):
    if isinstance(a, UPoly):
        return a.exact_div(b)
    return a / b


# gcd and square-free part -----------------------------------------------

def _int_prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of integer coefficient lists (low first)."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(r) - 1 >= db and r:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [lb * c for c in r]
        for j, c in enumerate(b):
            r[shift + j] -= lr * c
        while r and r[-1] == 0:
            r.pop()
    return r


def _int_primitive(a: list[int]) -> list[int]:
    g = 0
    for v in a:
        g = gcd(g, v)
    if g == 0:
        return []
    if a[-1] < 0:
        g = -g
    return [v // g for v in a]


def up_gcd(p: UPoly, q: UPoly) -> UPoly:
    """Monic gcd, via the primitive remainder sequence over the integers."""
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    if p.is_zero():
        return q.monic()
    if q.is_zero():
        return p.monic()
    a = list(p.primitive()[1])
    b = list(q.primitive()[1])
    if len(a) < len(b):
        a, b = b, a
    while b:
        a, b = b, _int_primitive(_int_prem(a, b))
    return UPoly((Fraction(v) for v in a), p.var).monic()


def up_squarefree(p: UPoly) -> UPoly:
    """Monic square-free part ``p / gcd(p, p')``."""
    if p.is_zero():
        raise ValueError("square-free part of the zero polynomial")
    if p.degree == 0:
        return UPoly.const(1, p.var)
    return (p // up_gcd(p, p.derivative())).monic()


# Sturm sequences and isolation -------------------------------------------

def sturm_sequence(p: UPoly) -> tuple[UPoly, ...]:
    """Sturm chain ``p, p', -rem(...)``. Each entry is scaled positively, which
    leaves sign variation counts unchanged."""
    if p.is_zero():
        return ()
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        r = -(seq[-2] % seq[-1])
        seq.append(UPoly((c / abs(r.lc) for c in r.coeffs), p.var) if r else r)
    seq.pop()
    return tuple(seq)


def _variations(signs: Sequence[int]) -> int:
    s = [v for v in signs if v]
    return sum(1 for a, b in zip(s, s[1:]) if a != b)


def _variations_at(seq: Sequence[UPoly], x) -> int:
    if x == "+inf":
        return _variations([(q.lc > 0) - (q.lc < 0) for q in seq])
    if x == "-inf":
        return _variations([((q.lc > 0) - (q.lc < 0)) * (-1) ** q.degree for q in seq])
    return _variations([q.sign_at(x) for q in seq])


def count_real_roots(p: UPoly, lo=None, hi=None) -> int:
    """Number of distinct real roots in ``(lo, hi]``; ``None`` means infinite."""
    seq = p.sturm
    a = "-inf" if lo is None else Fraction(lo)
    b = "+inf" if hi is None else Fraction(hi)
    return _variations_at(seq, a) - _variations_at(seq, b)


def count_roots_closed(p: UPoly, lo: Fraction, hi: Fraction) -> int:
    """Distinct real roots in the closed interval ``[lo, hi]``."""
    n = count_real_roots(p, lo, hi)
    return n + (1 if p(lo) == 0 else 0)


def root_bound(p: UPoly) -> Fraction:
    """Cauchy bound: every root has absolute value strictly below it."""
    lc = abs(p.lc)
    return 1 + max((abs(c) / lc for c in p.coeffs[:-1]), default=Fraction(0))


def _split_point(p: UPoly, lo: Fraction, hi: Fraction) -> Fraction:
    m = (lo + hi) / 2
    k = 3
    while p(m) == 0:
        m = lo + (hi - lo) * Fraction(k // 2 + 1, k + 2)
        k += 1
    return m


def isolate_real_roots(p: UPoly) -> list[tuple[Fraction, Fraction]]:
    """Disjoint isolating intervals ``[lo, hi]``, one per distinct real root,
    sorted ascending. Endpoints are never roots and ``lo < hi``."""
    if p.is_zero():
        raise ValueError("cannot isolate roots of the zero polynomial")
    sqf = up_squarefree(p)
    if sqf.degree < 1:
        return []
    b = root_bound(sqf)
    out: list[tuple[Fraction, Fraction]] = []
    stack = [(-b, b)]
    while stack:
        lo, hi = stack.pop()
        n = count_real_roots(sqf, lo, hi)
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        m = _split_point(sqf, lo, hi)
        stack.append((m, hi))
        stack.append((lo, m))
    out.sort()
    return out


def rational_roots(p: UPoly) -> list[Fraction]:
    """All distinct rational roots, ascending.

    A root u/v in lowest terms of the primitive integer form has v dividing
    the leading coefficient, so once an isolating interval is narrower than
    ``1/lc**2`` it holds at most one candidate, found by best approximation.
    """
    sqf = up_squarefree(p)
    if sqf.degree < 1:
        return []
    _, ints = sqf.primitive()
    lc = abs(ints[-1])
    tol = Fraction(1, 2 * lc * lc)
    roots = []
    for lo, hi in isolate_real_roots(sqf):
        while hi - lo > tol:
            m = _split_point(sqf, lo, hi)
            if count_real_roots(sqf, lo, m):
                hi = m
            else:
                lo = m
        cand = ((lo + hi) / 2).limit_denominator(lc)
        if lo <= cand <= hi and sqf(cand) == 0:
            roots.append(cand)
    return roots


# factorization -------------------------------------------------------

def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _lagrange(xs: Sequence[int], ys: Sequence[int], var: str) -> UPoly:
    out = UPoly((), var)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        term = UPoly.const(yi, var)
        for j, xj in enumerate(xs):
            if j != i:
                term = term * UPoly((Fraction(-xj, xi - xj), Fraction(1, xi - xj)), var)
        out = out + term
    return out


def _kronecker_split(p: UPoly) -> UPoly | None:
    """Find a proper factor of a primitive integer polynomial with no rational
    roots by Kronecker's interpolation search; ``None`` if irreducible."""
    n = p.degree
    pts: list[int] = []
    x = 0
    while len(pts) < n // 2 + 1:
        for cand in (x, -x) if x else (0,):
            if p(cand) != 0 and cand not in pts:
                pts.append(cand)
        x += 1
    # cheapest points first: fewest divisors
    pts.sort(key=lambda v: len(_divisors(int(p(v)))))
    for d in range(2, n // 2 + 1):
        xs = pts[: d + 1]
        choices = []
        for v in xs:
            divs = _divisors(int(p(v)))
            choices.append(divs + [-q for q in divs])
        # fix the sign of the first value: factors are determined up to sign
        choices[0] = choices[0][: len(choices[0]) // 2]
        for ys in itertools.product(*choices):
            cand = _lagrange(xs, ys, p.var)
            if cand.degree != d or any(c.denominator != 1 for c in cand.coeffs):
                continue
            if (p % cand).is_zero():
                return cand
    return None


def irreducible_factors(p: UPoly) -> list[UPoly]:
    """Monic irreducible factors over Q of the square-free part of ``p``,
    each listed once, sorted by degree then coefficients."""
    sqf = up_squarefree(p)
    if sqf.degree < 1:
        return []
    factors: list[UPoly] = []
    rest = sqf
    for r in rational_roots(sqf):
        lin = UPoly((-r, Fraction(1)), p.var)
        factors.append(lin)
        rest = rest // lin
    pending = [rest] if rest.degree >= 1 else []
    while pending:
        q = pending.pop()
        if q.degree <= 3:
            # no rational roots left, so degree 2 and 3 pieces are irreducible
            factors.append(q.monic())
            continue
        _, ints = q.primitive()
        qi = UPoly((Fraction(v) for v in ints), p.var)
        f = _kronecker_split(qi)
        if f is None:
            factors.append(q.monic())
        else:
            pending.append(f.monic())
            pending.append((qi // f).monic())
    factors.sort(key=lambda f: (f.degree, f.coeffs))
    return factors


# resultants --------------------------------------------------------

def _sylvester(p: Sequence, q: Sequence, zero) -> list[list]:
    """Sylvester matrix from coefficient lists given highest degree first."""
    m, n = len(p) - 1, len(q) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([zero] * i + list(p) + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + list(q) + [zero] * (size - n - 1 - i))
    return rows


def resultant(p: UPoly, q: UPoly):
    """Resultant of two polynomials by the Sylvester determinant.

    Coefficients may themselves be ``UPoly`` (polynomials in another
    variable); the result then lives in that coefficient ring.
    """
    if p.is_zero() or q.is_zero():
        return 0
    if p.degree == 0 and q.degree == 0:
        return 1
    zero = p.coeffs[0] * 0
    if p.degree == 0:
        return p.lc ** q.degree
    if q.degree == 0:
        return q.lc ** p.degree
    mat = _sylvester(p.coeffs[::-1], q.coeffs[::-1], zero)
    return det_bareiss(mat, _exact_div)


def up_resultant(p: UPoly, radius_sq=Fraction(1, 2), var: str = "t") -> UPoly:
    """``Res_s(p(s), s^2 + t^2 - radius_sq)`` as a polynomial in ``t``.

    Its real roots are exactly the ``t`` with ``s0^2 + t^2 = radius_sq`` for
    some (possibly complex) root ``s0`` of ``p``.
    """
    if p.is_zero():
        raise ValueError("resultant with the zero polynomial")
    lift = [UPoly.const(c, var) for c in p.coeffs]
    circle = [UPoly((-Fraction(radius_sq), Fraction(0), Fraction(1)), var),
              UPoly((), var), UPoly.const(1, var)]
    res = resultant(UPoly(lift, "s"), UPoly(circle, "s"))
    if not isinstance(res, UPoly):
        res = UPoly.const(res, var)
    return res.with_var(var)
