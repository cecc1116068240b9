"""Seeded random fields and the bound-verification sweep.

Every trial draws from its own generator seeded with ``(seed, trial)``, so
results do not depend on trial order or on how trials are split up.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .field import CliffordParams, VectorField, clifford_build
from .mpoly import MPoly, x1, x2, x3, x4
from .torus import DetectionReport, build_exceptional_field, find_meridians, find_parallels, rational_circle_points

__all__ = [
    "trial_rng",
    "random_poly",
    "random_params",
    "random_field",
    "BoundSweep",
    "verify_bounds",
]

_DENOMS = (1, 1, 1, 2, 3)


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.default_rng([seed, trial])


def random_poly(rng: np.random.Generator, max_deg: int, max_terms: int = 5,
                allow_zero: bool = True) -> MPoly:
    """Sparse polynomial with small rational coefficients and total degree
    at most ``max_deg``."""
    n_terms = int(rng.integers(0 if allow_zero else 1, max_terms + 1))
    terms: dict[tuple, Fraction] = {}
    for _ in range(n_terms):
        deg = int(rng.integers(0, max_deg + 1))
        # random composition of deg into four parts
        cuts = sorted(int(v) for v in rng.integers(0, deg + 1, size=3))
        e = (cuts[0], cuts[1] - cuts[0], cuts[2] - cuts[1], deg - cuts[2])
        num = int(rng.integers(1, 6)) * (1 if rng.random() < 0.5 else -1)
        den = _DENOMS[int(rng.integers(0, len(_DENOMS)))]
        terms[e] = terms.get(e, 0) + Fraction(num, den)
    return MPoly(terms)


def random_params(rng: np.random.Generator, max_deg: int, max_terms: int = 5) -> CliffordParams:
    return CliffordParams(*(random_poly(rng, max_deg, max_terms) for _ in range(6)))


def _planted_side(rng, max_deg: int, u: MPoly, v: MPoly):
    """Products over rational circle points, as in the extremal construction,
    for the pair of coordinates ``(u, v)``; optionally one point repeated."""
    n = int(rng.integers(1, max_deg + 1))
    pool = rational_circle_points(8)
    idx = rng.permutation(len(pool))[:n]
    pts = [pool[i] for i in idx]
    pts = [(a * (1 if rng.random() < 0.5 else -1), b * (1 if rng.random() < 0.5 else -1)) for a, b in pts]
    if n >= 2 and rng.random() < 0.3:
        pts[-1] = pts[0]
    ku = Fraction(int(rng.integers(1, 4)), int(rng.integers(1, 3))) * (1 if rng.random() < 0.5 else -1)
    kv = Fraction(int(rng.integers(1, 4)), int(rng.integers(1, 3))) * (1 if rng.random() < 0.5 else -1)
    pu, pv = MPoly.const(ku), MPoly.const(kv)
    for a, b in pts:
        pu = pu * (u - a)
        pv = pv * (v - b)
    return pu, pv


def random_field(rng: np.random.Generator, max_deg: int, kind: str = "random") -> tuple[VectorField, str]:
    """A nondegenerate torus-invariant field (all four components nonzero).

    ``kind`` is ``"random"`` (all six parameters random), ``"planted"``
    (extremal products on one or both circle pairs, the rest random),
    ``"exceptional"`` (the four-meridian field with random A, B, C) or
    ``"mixed"`` (one of these, chosen at random).
    """
    if kind == "mixed":
        kind = ("random", "random", "planted", "exceptional")[int(rng.integers(0, 4))]
    while True:
        p = random_params(rng, max_deg)
        a, b, c, d, e, f = p.as_tuple()
        if kind == "planted":
            side = int(rng.integers(0, 3))
            if side in (0, 2):
                d, e = _planted_side(rng, max_deg, x3, x4)
                f = MPoly()
            if side in (1, 2):
                a, b = _planted_side(rng, max_deg, x1, x2)
                c = MPoly()
            X = clifford_build(CliffordParams(a, b, c, d, e, f))
        elif kind == "exceptional":
            k = Fraction(int(rng.integers(1, 5)), int(rng.integers(1, 3))) * (1 if rng.random() < 0.5 else -1)
            X = build_exceptional_field(k, a=a, b=b, c=c)
        elif kind == "random":
            X = clifford_build(p)
        else:
            raise ValueError(f"unknown kind {kind!r}")
        if not any(q.is_zero() for q in X.components):
            return X, kind


@dataclass
class BoundSweep:
    trials: int
    max_deg: int
    seed: int
    kind: str
    violations: list[dict] = field(default_factory=list)
    by_kind: dict[str, int] = field(default_factory=dict)
    max_meridians: int = 0
    max_parallels: int = 0
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "max_deg": self.max_deg,
            "seed": self.seed,
            "kind": self.kind,
            "violations": len(self.violations),
            "violation_details": self.violations,
            "fields_by_kind": self.by_kind,
            "max_meridian_total": self.max_meridians,
            "max_parallel_total": self.max_parallels,
            "elapsed_seconds": round(self.elapsed, 3),
        }


def _violation(trial: int, rep: DetectionReport, X: VectorField) -> dict:
    return {"trial": trial, "kind": rep.kind, "total": rep.total_with_multiplicity,
            "bound": rep.bound, "field": [str(p) for p in X.components]}


def verify_bounds(trials: int = 1000, max_deg: int = 4, seed: int = 0,
                  kind: str = "mixed") -> BoundSweep:
    """Detect meridians and parallels on random invariant fields and count
    the fields whose totals exceed the bound."""
    out = BoundSweep(trials, max_deg, seed, kind)
    t0 = time.perf_counter()
    for t in range(trials):
        X, k = random_field(trial_rng(seed, t), max_deg, kind)
        out.by_kind[k] = out.by_kind.get(k, 0) + 1
        mer = find_meridians(X)
        par = find_parallels(X, check_invariant=False)
        out.max_meridians = max(out.max_meridians, mer.total_with_multiplicity)
        out.max_parallels = max(out.max_parallels, par.total_with_multiplicity)
        for rep in (mer, par):
            if rep.verdict is False:
                out.violations.append(_violation(t, rep, X))
    out.elapsed = time.perf_counter() - t0
    return out
