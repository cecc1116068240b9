from cliffordfields.field import torus_invariant
from cliffordfields.sweep import random_field, trial_rng, verify_bounds


def test_random_fields_are_invariant_and_nondegenerate():
    for kind in ("random", "planted", "exceptional"):
        for t in range(15):
            X, k = random_field(trial_rng(3, t), 4, kind)
            assert k == kind
            assert not any(p.is_zero() for p in X.components)
            assert X.degree <= 6  # parameters of degree <= 4 times a quadric
            torus_invariant(X)


def test_trials_are_reproducible_and_order_free():
    a = random_field(trial_rng(5, 17), 3, "mixed")
    b = random_field(trial_rng(5, 17), 3, "mixed")
    assert a == b


def test_verify_bounds_small():
    res = verify_bounds(60, 3, seed=11)
    assert res.passed
    assert sum(res.by_kind.values()) == 60
    d = res.to_dict()
    assert d["violations"] == 0 and d["seed"] == 11
