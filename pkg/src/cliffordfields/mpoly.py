"""Sparse polynomials in x1..x4 with rational coefficients."""

from __future__ import annotations

import heapq
import math
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import DoesNotDivide, ZeroPolynomialError
from .upoly import UPoly, up_gcd

__all__ = ["MPoly", "Exponent", "NVARS", "x1", "x2", "x3", "x4", "coordinate_root_poly"]

NVARS = 4
Exponent = tuple[int, int, int, int]
_ZERO_EXP: Exponent = (0, 0, 0, 0)


def _grlex_key(e: Exponent):
    return (sum(e), e)


def _heap_key(e: Exponent):
    # min-heap on the negated graded-lex key pops the leading monomial first
    return (-sum(e), -e[0], -e[1], -e[2], -e[3])


def _check_var(i: int) -> int:
    if not 1 <= i <= NVARS:
        raise ValueError(f"variable index must be in 1..{NVARS}, got {i}")
    return i - 1


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


class MPoly:
    """Immutable sparse polynomial: a map from exponent 4-tuples to nonzero
    :class:`~fractions.Fraction` coefficients.

    Variables are addressed 1-based (``1`` is x1). Iteration and printing use
    graded lexicographic order with x1 > x2 > x3 > x4.
    """

    __slots__ = ("_t", "_hash")

    def __init__(self, terms: Mapping[Sequence[int], object] | None = None):
        t: dict[Exponent, Fraction] = {}
        if terms:
            for e, c in terms.items():
                e = tuple(int(v) for v in e)
                if len(e) != NVARS or min(e) < 0:
                    raise ValueError(f"bad exponent {e}")
                c = _as_fraction(c)
                if c:
                    t[e] = t.get(e, 0) + c
                    if not t[e]:
                        del t[e]
        self._t = t
        self._hash = None

    @classmethod
    def _raw(cls, t: dict) -> "MPoly":
        obj = cls.__new__(cls)
        obj._t = t
        obj._hash = None
        return obj

    # constructors -----------------------------------------------------

    @classmethod
    def const(cls, c) -> "MPoly":
        c = _as_fraction(c)
        return cls._raw({_ZERO_EXP: c} if c else {})

    @classmethod
    def var(cls, i: int) -> "MPoly":
        e = [0] * NVARS
        e[_check_var(i)] = 1
        return cls._raw({tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1) -> "MPoly":
        return cls({tuple(exps): c})

    @classmethod
    def from_upoly(cls, u: UPoly, i: int) -> "MPoly":
        k = _check_var(i)
        t = {}
        for j, c in enumerate(u.coeffs):
            if c:
                e = [0] * NVARS
                e[k] = j
                t[tuple(e)] = Fraction(c)
        return cls._raw(t)

    # queries ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self) -> bool:
        return bool(self._t)

    def __len__(self) -> int:
        return len(self._t)

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and _ZERO_EXP in self._t)

    def constant_value(self) -> Fraction:
        return self._t.get(_ZERO_EXP, Fraction(0))

    def coeff(self, e: Sequence[int]) -> Fraction:
        return self._t.get(tuple(e), Fraction(0))

    def terms(self) -> list[tuple[Exponent, Fraction]]:
        """Terms in canonical (graded-lex, descending) order."""
        return sorted(self._t.items(), key=lambda it: _grlex_key(it[0]), reverse=True)

    def as_dict(self) -> dict[Exponent, Fraction]:
        return dict(self._t)

    @property
    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._t), default=-1)

    def degree_in(self, i: int) -> int:
        k = _check_var(i)
        return max((e[k] for e in self._t), default=-1)

    def variables(self) -> set[int]:
        return {k + 1 for e in self._t for k in range(NVARS) if e[k]}

    def leading_term(self) -> tuple[Exponent, Fraction]:
        if not self._t:
            raise ZeroPolynomialError("zero polynomial has no leading term")
        e = max(self._t, key=_grlex_key)
        return e, self._t[e]

    # arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "MPoly | None":
        if isinstance(other, MPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return MPoly.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        t = dict(self._t)
        for e, c in o._t.items():
            v = t.get(e)
            if v is None:
                t[e] = c
            else:
                v = v + c
                if v:
                    t[e] = v
                else:
                    del t[e]
        return MPoly._raw(t)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._raw({e: -c for e, c in self._t.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return MPoly._raw({})
            return MPoly._raw({e: c * other for e, c in self._t.items()})
        if not isinstance(other, MPoly):
            return NotImplemented
        t: dict[Exponent, Fraction] = {}
        for e1, c1 in self._t.items():
            a0, a1, a2, a3 = e1
            for e2, c2 in other._t.items():
                e = (a0 + e2[0], a1 + e2[1], a2 + e2[2], a3 + e2[3])
                v = t.get(e)
                t[e] = c1 * c2 if v is None else v + c1 * c2
        return MPoly._raw({e: c for e, c in t.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Division by a nonzero rational scalar."""
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        if not other:
            raise ZeroDivisionError("division by zero")
        return self * (Fraction(1) / other)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = MPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._t == o._t

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    # calculus ---------------------------------------------------------

    def partial(self, i: int) -> "MPoly":
        k = _check_var(i)
        t = {}
        for e, c in self._t.items():
            if e[k]:
                ne = list(e)
                ne[k] -= 1
                t[tuple(ne)] = c * e[k]
        return MPoly._raw(t)

    def collect(self, i: int) -> list[tuple[int, "MPoly"]]:
        """``[(j, c_j), ...]`` ascending in ``j`` with ``self == sum c_j * xi**j``
        and no ``c_j`` involving ``xi``."""
        k = _check_var(i)
        groups: dict[int, dict] = {}
        for e, c in self._t.items():
            ne = list(e)
            j = ne[k]
            ne[k] = 0
            groups.setdefault(j, {})[tuple(ne)] = c
        return [(j, MPoly._raw(groups[j])) for j in sorted(groups)]

    def coefficients_in(self, i: int) -> dict[Exponent, UPoly]:
        """Group by the monomial in the other three variables; each group is a
        univariate polynomial in ``xi``."""
        k = _check_var(i)
        groups: dict[Exponent, dict[int, Fraction]] = {}
        for e, c in self._t.items():
            key = list(e)
            key[k] = 0
            groups.setdefault(tuple(key), {})[e[k]] = c
        out = {}
        for key, g in groups.items():
            coeffs = [Fraction(0)] * (max(g) + 1)
            for j, c in g.items():
                coeffs[j] = c
            out[key] = UPoly(coeffs, f"x{i}")
        return out

    def to_upoly(self, i: int) -> UPoly:
        """View as univariate in ``xi``; fails if other variables occur."""
        groups = self.coefficients_in(i)
        if not groups:
            return UPoly((), f"x{i}")
        if set(groups) != {_ZERO_EXP}:
            raise ValueError(f"{self} is not univariate in x{i}")
        return groups[_ZERO_EXP]

    # division ---------------------------------------------------------

    def divmod(self, d: "MPoly") -> tuple["MPoly", "MPoly"]:
        """Division with remainder by a single divisor under graded-lex order.

        For one divisor the remainder is zero exactly when ``d`` divides
        ``self`` (a single polynomial is a Groebner basis of its ideal).
        """
        if not d._t:
            raise ZeroDivisionError("division by the zero polynomial")
        le, lc = d.leading_term()
        d_rest = [(e, c) for e, c in d._t.items() if e != le]
        r = dict(self._t)
        heap = [_heap_key(e) + (e,) for e in r]
        heapq.heapify(heap)
        q: dict[Exponent, Fraction] = {}
        rem: dict[Exponent, Fraction] = {}
        while heap:
            e = heapq.heappop(heap)[-1]
            c = r.pop(e, None)
            if c is None:
                continue
            s = (e[0] - le[0], e[1] - le[1], e[2] - le[2], e[3] - le[3])
            if min(s) < 0:
                rem[e] = c
                continue
            qc = c / lc
            q[s] = q.get(s, 0) + qc
            for de, dc in d_rest:
                ne = (s[0] + de[0], s[1] + de[1], s[2] + de[2], s[3] + de[3])
                v = r.get(ne)
                if v is None:
                    r[ne] = -qc * dc
                    heapq.heappush(heap, _heap_key(ne) + (ne,))
                else:
                    v = v - qc * dc
                    if v:
                        r[ne] = v
                    else:
                        del r[ne]
        return MPoly._raw({e: c for e, c in q.items() if c}), MPoly._raw(rem)

    def divide_exact(self, d: "MPoly") -> "MPoly":
        q, r = self.divmod(d)
        if r:
            raise DoesNotDivide(f"{d} does not divide {self}")
        return q

    def divides(self, other: "MPoly") -> bool:
        return not other.divmod(self)[1]

    def rem_monic_in(self, i: int, d: "MPoly") -> "MPoly":
        """Remainder of division by ``d`` viewed as a polynomial in ``xi``
        whose leading coefficient is a nonzero constant. The result has
        ``xi``-degree below that of ``d``."""
        k = _check_var(i)
        n = d.degree_in(i)
        lead = dict(d.collect(i))[n] if n >= 0 else None
        if n < 1 or not lead.is_constant():
            raise ValueError(f"{d} is not monic-like in x{i}")
        lc = lead.constant_value()
        tail = d - lead * MPoly.var(i) ** n
        r = self
        while r.degree_in(i) >= n:
            hi = MPoly._raw({e: c for e, c in r._t.items() if e[k] >= n})
            shifted = {}
            for e, c in hi._t.items():
                ne = list(e)
                ne[k] -= n
                shifted[tuple(ne)] = c / lc
            q = MPoly._raw(shifted)
            r = (r - hi) - q * tail
        return r

    # evaluation -------------------------------------------------------

    def evaluate(self, point: Sequence) -> Fraction:
        """Exact value at a rational point."""
        total = Fraction(0)
        for e, c in self._t.items():
            v = c
            for xv, k in zip(point, e):
                if k:
                    v = v * Fraction(xv) ** k
            total += v
        return total

    def evalf(self, point: Sequence[float]) -> float:
        """Floating-point value using compensated summation."""
        return math.fsum(float(c) * math.prod(xv ** k for xv, k in zip(point, e) if k)
                         for e, c in self._t.items())

    def substitute(self, i: int, value) -> "MPoly":
        """Replace ``xi`` by a rational constant."""
        k = _check_var(i)
        value = Fraction(value)
        t: dict[Exponent, Fraction] = {}
        for e, c in self._t.items():
            ne = list(e)
            ne[k] = 0
            ne = tuple(ne)
            t[ne] = t.get(ne, 0) + c * value ** e[k]
        return MPoly._raw({e: c for e, c in t.items() if c})

    def permute(self, perm: Sequence[int]) -> "MPoly":
        """Rename variables: old variable ``j+1`` becomes ``perm[j]``."""
        t = {}
        for e, c in self._t.items():
            ne = [0] * NVARS
            for j in range(NVARS):
                ne[perm[j] - 1] = e[j]
            t[tuple(ne)] = c
        return MPoly._raw(t)

    # printing ---------------------------------------------------------

    def __str__(self) -> str:
        if not self._t:
            return "0"
        out = []
        for e, c in self.terms():
            neg = c < 0
            a = -c if neg else c
            mono = "*".join(
                f"x{k + 1}" if p == 1 else f"x{k + 1}^{p}" for k, p in enumerate(e) if p)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if not out:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __repr__(self) -> str:
        return f"MPoly({str(self)!r})"


x1, x2, x3, x4 = (MPoly.var(i) for i in range(1, NVARS + 1))


def coordinate_root_poly(p: MPoly, i: int) -> UPoly:
    """Monic polynomial in ``t`` whose roots are exactly the ``a`` with
    ``(xi - a)`` dividing ``p``: the gcd of the coefficient polynomials of
    ``p`` grouped by monomials in the remaining variables."""
    if p.is_zero():
        raise ZeroPolynomialError(f"x{i}-root polynomial of the zero polynomial")
    g: UPoly | None = None
    for u in p.coefficients_in(i).values():
        g = u if g is None else up_gcd(g, u)
        if g.degree == 0:
            break
    return g.monic().with_var("t")
