"""Acceptance criteria, one test each. Every test prints a single
``[PASS]`` or ``[FAIL]`` line; run this file directly for just the summary."""

import math
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cliffordfields.errors import ParseError  # noqa: E402
from cliffordfields.extactic import extactic_poly  # noqa: E402
from cliffordfields.field import (TORUS_F, TORUS_G, CliffordParams, clifford_build,  # noqa: E402
                                  clifford_decompose, hopf_field, invariance_cofactor, lie_derive)
from cliffordfields.mpoly import MPoly, x1, x2, x3, x4  # noqa: E402
from cliffordfields.oracle import (TorusPoint, numeric_meridian_scan, rk4_convergence_ratio,  # noqa: E402
                                   rk4_orbit_drift)
from cliffordfields.parser import format_poly, parse_poly  # noqa: E402
from cliffordfields.sweep import random_params, random_poly, trial_rng, verify_bounds  # noqa: E402
from cliffordfields.torus import (build_exceptional_field, build_extremal_meridian_field,  # noqa: E402
                                  find_meridians, rational_circle_points)
from parser_corpus import MALFORMED, corpus  # noqa: E402

F = Fraction
HALF = F(1, 2)
R = math.sqrt(0.5)


@pytest.fixture
def report(capsys):
    def emit(n: int, ok: bool, detail: str) -> None:
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {detail}"
        with capsys.disabled():
            print("\n" + line)
        assert ok, line
    return emit


def _angle(rec) -> float:
    return math.atan2(float(rec.point.b), float(rec.point.a)) % (2 * math.pi)


def test_criterion_1_exceptional_field(report):
    t0 = time.perf_counter()
    X = build_exceptional_field(1)
    p3_ok = X.p3 == parse_poly("2*x3^3 - x3")
    p4_ok = X.p4 == parse_poly("2*x4^3 - x4")
    rep = find_meridians(X)
    pts = sorted((round(float(r.point.a), 12), round(float(r.point.b), 12)) for r in rep.records)
    want = sorted([(0.0, round(R, 12)), (0.0, round(-R, 12)), (round(R, 12), 0.0), (round(-R, 12), 0.0)])
    mer_ok = pts == want and all(r.multiplicity == 1 for r in rep.records)
    rule_ok = (rep.bound_rule, rep.bound, rep.verdict) == ("exceptional", 4, True)
    elapsed = time.perf_counter() - t0
    parts = {"P3": p3_ok, "P4 = 2x4^3 - x4": p4_ok, "4 meridians": mer_ok,
             "exceptional 4 / pass": rule_ok, "< 1 s": elapsed < 1}
    detail = ", ".join(f"{k} {'ok' if v else 'FAILED'}" for k, v in parts.items())
    if not p4_ok:
        detail += f" (built P4 = {X.p4}; the stated sign is not torus-invariant)"
    report(1, all(parts.values()), detail)


def test_criterion_2_extremal_bound_attained(report):
    t0 = time.perf_counter()
    bad = []
    for m in range(4, 10):
        pts = rational_circle_points(m - 2)
        rep = find_meridians(build_extremal_meridian_field(pts))
        ok = (rep.count == m - 2 and rep.total_with_multiplicity == m - 2 == rep.bound
              and min(rep.degrees) == m)
        if not ok:
            bad.append(m)
    elapsed = time.perf_counter() - t0
    report(2, not bad and elapsed < 5,
           f"m = 4..9 reach m-2 meridians, failures {bad}, {elapsed:.2f} s")


def test_criterion_3_multiplicity_attained(report):
    rep = find_meridians(build_extremal_meridian_field([(HALF, HALF), (HALF, HALF)]))
    ok = (rep.count == 1 and rep.records[0].multiplicity == 2
          and rep.total_with_multiplicity == 2 == rep.bound and min(rep.degrees) == 4)
    report(3, ok, f"one meridian of multiplicity {rep.records[0].multiplicity}, bound {rep.bound}")


def _fields_500():
    return [random_params(trial_rng(2024, t), 3) for t in range(500)]


def test_criterion_4_cofactor_identity(report):
    t0 = time.perf_counter()
    failures = 0
    for p in _fields_500():
        X = clifford_build(p)
        kf = invariance_cofactor(X, TORUS_F).k
        kg = invariance_cofactor(X, TORUS_G).k
        ok = (kf == 2 * (p.a * x1 + p.b * x2) and kg == 2 * (p.d * x3 + p.e * x4)
              and kf * TORUS_F == lie_derive(X, TORUS_F) and kg * TORUS_G == lie_derive(X, TORUS_G))
        failures += not ok
    elapsed = time.perf_counter() - t0
    report(4, failures == 0 and elapsed < 30, f"500 fields, {failures} failures, {elapsed:.2f} s")


def test_criterion_5_decompose_roundtrip(report):
    failures = 0
    for p in _fields_500():
        X = clifford_build(p)
        c = clifford_decompose(X)
        failures += not (clifford_build(c) == X and clifford_decompose(clifford_build(c)) == c)
    gauge_failures = 0
    for t in range(100):
        rng = trial_rng(77, t)
        p = random_params(rng, 3)
        g, h = random_poly(rng, 2), random_poly(rng, 2)
        shifted = CliffordParams(p.a + 2 * g * x2, p.b - 2 * g * x1, p.c + g * TORUS_F,
                                 p.d + 2 * h * x4, p.e - 2 * h * x3, p.f + h * TORUS_G)
        gauge_failures += clifford_decompose(clifford_build(shifted)) != clifford_decompose(clifford_build(p))
    report(5, failures == 0 and gauge_failures == 0,
           f"500 round trips with {failures} failures, 100 gauge pairs with {gauge_failures} failures")


def test_criterion_6_bound_fuzz(report):
    res = verify_bounds(1000, 4, seed=42)
    report(6, res.passed and res.elapsed < 120,
           f"1000 fields, {len(res.violations)} violations, kinds {res.by_kind}, {res.elapsed:.1f} s")


def _random_basis(rng, size):
    # distinct leading monomials make the elements linearly independent
    while True:
        W = [random_poly(rng, 2, 3, allow_zero=False) for _ in range(size)]
        if any(w.is_zero() for w in W) or len({w.leading_term()[0] for w in W}) < size:
            continue
        M = [[F(int(v)) for v in rng.integers(-3, 4, size=size)] for _ in range(size)]
        if _exact_det(M):
            return W, M


def _exact_det(M):
    import itertools
    n = len(M)
    total = F(0)
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = F(-1 if inv % 2 else 1)
        for i in range(n):
            term *= M[i][perm[i]]
        total += term
    return total


def test_criterion_7_extactic_properties(report):
    comp_fail = 0
    for t in range(100):
        X = clifford_build(random_params(trial_rng(303, t), 3))
        comp_fail += extactic_poly(X, [MPoly.const(1), x3]) != X.p3
    cov_fail = nontrivial = 0
    for t in range(100):
        rng = trial_rng(404, t)
        X = clifford_build(random_params(rng, 2, 3))
        size = 2 + t % 2
        W, M = _random_basis(rng, size)
        det = _exact_det(M)
        W2 = [sum((M[i][j] * W[j] for j in range(size)), MPoly()) for i in range(size)]
        e = extactic_poly(X, W)
        nontrivial += not e.is_zero()
        cov_fail += extactic_poly(X, W2) != det * e
    report(7, comp_fail == 0 and cov_fail == 0,
           f"E(1,x3) = P3 on 100 fields ({comp_fail} failures); covariance on 100 bases of size 2 and 3 "
           f"({cov_fail} failures, {nontrivial} with nonzero E)")


def test_criterion_8_oracle_agreement(report):
    fields = [build_exceptional_field(1)] + [build_extremal_meridian_field(rational_circle_points(n))
                                             for n in (2, 3, 5)]
    worst_angle = 0.0
    scan_ok = True
    for X in fields:
        exact = sorted(_angle(r) for r in find_meridians(X).records)
        hits = numeric_meridian_scan(X)
        if len(hits) != len(exact):
            scan_ok = False
            continue
        for h, e in zip(hits, exact):
            worst_angle = max(worst_angle, abs(math.remainder(h.psi - e, 2 * math.pi)))
    scan_ok = scan_ok and worst_angle <= 1e-6

    rng = np.random.default_rng(8)
    starts = [TorusPoint(*rng.uniform(0, 2 * math.pi, 2)) for _ in range(20)]
    drift_fields = [hopf_field(), build_exceptional_field(1)]
    drift = max(rk4_orbit_drift(X, starts, 10.0, 1e-3) for X in drift_fields)
    # the ratio needs drift well above round-off, hence the larger step
    ratio = rk4_convergence_ratio(build_exceptional_field(1), starts, 10.0, 0.05)
    ok = scan_ok and drift <= 1e-8 and 8 <= ratio <= 32
    report(8, ok, f"scan max angle error {worst_angle:.2e}, drift {drift:.2e}, "
                  f"ratio {ratio:.2f} (h = 0.05 -> 0.025)")


def test_criterion_9_parser(report):
    cases = corpus()
    idem_fail = 0
    for text in cases:
        s = format_poly(parse_poly(text))
        idem_fail += not (format_poly(parse_poly(s)) == s and parse_poly(s) == parse_poly(text))
    offset_fail = []
    for text, offset in MALFORMED:
        try:
            parse_poly(text)
            offset_fail.append(text)
        except ParseError as exc:
            if exc.offset != offset:
                offset_fail.append(text)
    report(9, len(cases) == 200 and len(MALFORMED) == 20 and not idem_fail and not offset_fail,
           f"{len(cases)} corpus cases ({idem_fail} failures), {len(MALFORMED)} malformed inputs "
           f"({len(offset_fail)} wrong offsets)")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
