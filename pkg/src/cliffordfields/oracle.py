"""Floating-point cross-checks, independent of the exact pipeline.

Nothing here feeds back into exact results. These checks only confirm them
by other means: residual sampling on the torus, constraint drift along RK4
orbits, and an angular scan for meridians.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import StepTooLarge
from .field import VectorField
from .mpoly import MPoly

__all__ = [
    "TOL_RESIDUAL",
    "DRIFT_LIMIT",
    "TorusPoint",
    "ResidualReport",
    "ScanHit",
    "sample_residual",
    "rk4_orbit_drift",
    "rk4_convergence_ratio",
    "numeric_meridian_scan",
    "numeric_parallel_scan",
]

TOL_RESIDUAL = 1e-9
DRIFT_LIMIT = 1e-3
_R = 1 / math.sqrt(2)


@dataclass(frozen=True)
class TorusPoint:
    theta: float
    phi: float

    def embed(self) -> np.ndarray:
        return np.array([_R * math.cos(self.theta), _R * math.sin(self.theta),
                         _R * math.cos(self.phi), _R * math.sin(self.phi)])


class _Compiled:
    """Vectorized float evaluation of an MPoly over an ``(N, 4)`` array."""

    def __init__(self, p: MPoly):
        items = p.terms()
        self.exps = np.array([e for e, _ in items], dtype=float).reshape(-1, 4)
        self.coeffs = np.array([float(c) for _, c in items])

    def __call__(self, pts: np.ndarray) -> np.ndarray:
        if not len(self.coeffs):
            return np.zeros(len(pts))
        mons = np.prod(pts[:, None, :] ** self.exps[None, :, :], axis=2)
        return mons @ self.coeffs


def _rhs(X: VectorField):
    comps = [_Compiled(p) for p in X.components]

    def f(y: np.ndarray) -> np.ndarray:
        return np.stack([c(y) for c in comps], axis=1)

    return f


@dataclass(frozen=True)
class ResidualReport:
    max_xf: float
    max_xg: float
    n: int
    seed: int
    tol: float

    @property
    def passed(self) -> bool:
        return self.max_xf <= self.tol and self.max_xg <= self.tol


def sample_residual(X: VectorField, n: int = 100, seed: int = 0,
                    tol: float = TOL_RESIDUAL) -> ResidualReport:
    """Largest ``|Xf|`` and ``|Xg|`` over ``n`` random torus points.

    ``Xf = 2 x1 P1 + 2 x2 P2`` is assembled numerically from the components
    (not from the exact Lie derivative), with compensated summation.
    """
    if n < 1:
        raise ValueError("n must be positive")
    rng = np.random.default_rng(seed)
    angles = rng.uniform(0.0, 2 * math.pi, size=(n, 2))
    mf = mg = 0.0
    for th, ph in angles:
        pt = TorusPoint(th, ph).embed().tolist()
        p = [c.evalf(pt) for c in X.components]
        xf = math.fsum((2 * pt[0] * p[0], 2 * pt[1] * p[1]))
        xg = math.fsum((2 * pt[2] * p[2], 2 * pt[3] * p[3]))
        mf, mg = max(mf, abs(xf)), max(mg, abs(xg))
    return ResidualReport(mf, mg, n, seed, tol)


def _constraint(y: np.ndarray) -> np.ndarray:
    f = y[:, 0] ** 2 + y[:, 1] ** 2 - 0.5
    g = y[:, 2] ** 2 + y[:, 3] ** 2 - 0.5
    return np.maximum(np.abs(f), np.abs(g))


def rk4_orbit_drift(X: VectorField, start: TorusPoint | Sequence[TorusPoint], T: float,
                    h: float, raise_on_drift: bool = True) -> float:
    """Worst ``max(|f|, |g|)`` along classic RK4 orbits from the given start(s).

    Several starts are integrated together. Raises :class:`StepTooLarge`
    when the drift exceeds ``DRIFT_LIMIT``; that is a diagnostic only.
    """
    if h <= 0 or T <= 0:
        raise ValueError("h and T must be positive")
    starts = [start] if isinstance(start, TorusPoint) else list(start)
    y = np.stack([s.embed() for s in starts])
    rhs = _rhs(X)
    steps = int(round(T / h))
    worst = float(_constraint(y).max())
    for _ in range(steps):
        k1 = rhs(y)
        k2 = rhs(y + 0.5 * h * k1)
        k3 = rhs(y + 0.5 * h * k2)
        k4 = rhs(y + h * k3)
        y = y + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        d = float(_constraint(y).max())
        if not d <= worst:
            worst = d if math.isfinite(d) else math.inf
        if worst > DRIFT_LIMIT and raise_on_drift:
            raise StepTooLarge(f"constraint drift {worst:.3g} exceeds {DRIFT_LIMIT}", worst)
        if not math.isfinite(worst):
            break
    return worst


def rk4_convergence_ratio(X: VectorField, starts: Sequence[TorusPoint], T: float, h: float) -> float:
    """``drift(h) / drift(h/2)``; close to 16 for a fourth-order method."""
    return rk4_orbit_drift(X, starts, T, h) / rk4_orbit_drift(X, starts, T, h / 2)


@dataclass(frozen=True)
class ScanHit:
    psi: float
    a: float
    b: float
    residual: float


def _refine_min(fun, center: float, half_width: float) -> float:
    # the bounded method's tolerance is relative to |x|, so minimize over
    # the offset from the current center and recenter for a second pass
    for w in (half_width, 1e-7):
        res = minimize_scalar(lambda d: fun(center + d), bounds=(-w, w),
                              method="bounded", options={"xatol": 1e-15})
        center = center + float(res.x)
    return center % (2 * math.pi)


def _scan(pa: MPoly, pb: MPoly, ia: int, ib: int, grid: int, tol: float, seed: int,
          n_samples: int) -> list[ScanHit]:
    if grid < 8:
        raise ValueError("grid must be at least 8")
    ca, cb = _Compiled(pa), _Compiled(pb)
    rng = np.random.default_rng(seed)
    base_a = rng.uniform(-1.0, 1.0, size=(n_samples, 4))
    base_b = rng.uniform(-1.0, 1.0, size=(n_samples, 4))

    def residual(psi: float) -> float:
        a, b = _R * math.cos(psi), _R * math.sin(psi)
        pts_a = base_a.copy()
        pts_a[:, ia - 1] = a
        pts_b = base_b.copy()
        pts_b[:, ib - 1] = b
        return float(np.max(np.abs(ca(pts_a)) + np.abs(cb(pts_b))))

    psis = np.linspace(0.0, 2 * math.pi, grid, endpoint=False)
    vals = np.array([residual(p) for p in psis])
    step = 2 * math.pi / grid
    hits: list[ScanHit] = []
    for k in range(grid):
        if vals[k] > vals[k - 1] or vals[k] > vals[(k + 1) % grid]:
            continue
        psi = _refine_min(residual, float(psis[k]), step)
        r = residual(psi)
        if r > tol:
            continue
        if any(abs(math.remainder(psi - h.psi, 2 * math.pi)) < 1e-7 for h in hits):
            continue
        hits.append(ScanHit(psi, _R * math.cos(psi), _R * math.sin(psi), r))
    hits.sort(key=lambda h: h.psi)
    return hits


def numeric_meridian_scan(X: VectorField, grid: int = 720, tol: float = TOL_RESIDUAL,
                          seed: int = 0, n_samples: int = 8) -> list[ScanHit]:
    """Angles ``psi`` where ``(a, b) = (cos psi, sin psi) / sqrt 2`` makes
    both ``P3(., ., a, .)`` and ``P4(., ., ., b)`` vanish at random sample
    points. The free coordinates are sampled off the torus, matching the
    divisibility notion used by the exact detector."""
    return _scan(X.p3, X.p4, 3, 4, grid, tol, seed, n_samples)


def numeric_parallel_scan(X: VectorField, grid: int = 720, tol: float = TOL_RESIDUAL,
                          seed: int = 0, n_samples: int = 8) -> list[ScanHit]:
    return _scan(X.p1, X.p2, 1, 2, grid, tol, seed, n_samples)
