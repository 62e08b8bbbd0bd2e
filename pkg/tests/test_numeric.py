import random

import numpy as np
import pytest

from lorentz_solitons.lie import BUILTIN_GROUPS
from lorentz_solitons.numeric import (
    TOLERANCE, residuals_numeric, sample_numeric_check, trivial_family,
)
from lorentz_solitons.soliton import build_system


@pytest.mark.parametrize("kind", ("C0", "C1", "C2", "C3"))
def test_abelian_trivial_family(kind):
    rep = sample_numeric_check("abelian", kind, 5, seed=1, families=[(None, trivial_family())])
    assert rep.points == 5 and rep.max_residual == 0.0


def test_theorem_2_6_point():
    r = residuals_numeric("G3", "C0", {"alpha": 1, "beta": 1, "gamma": 2, "lam": 0})
    assert np.max(np.abs(r)) < TOLERANCE


def test_theorem_3_2_point():
    pt = {"lbar": 2, "alpha": -2, "beta": 0, "lam": 4, "l1": 0, "l2": 0, "l3": -2}
    assert np.max(np.abs(residuals_numeric("G1", "C2", pt))) < TOLERANCE


def test_float_pipeline_agrees_with_exact_system():
    rng = random.Random(8)
    names = ("alpha", "beta", "gamma", "delta", "lam", "l1", "l2", "l3", "lbar")
    for g in BUILTIN_GROUPS:
        for k in ("C0", "C1", "C2", "C3"):
            system = build_system(g, k)
            for _ in range(3):
                pt = {n: rng.uniform(-3, 3) for n in names}
                pt["eta"] = rng.choice((1.0, -1.0))
                exact = np.array([float(e.evaluate(pt)) for e in system.equations])
                assert np.allclose(exact, residuals_numeric(g, k, pt), atol=1e-9)


def test_sampling_is_deterministic_and_spreads_points():
    a = sample_numeric_check("G7", "C3", 20, seed=4)
    b = sample_numeric_check("G7", "C3", 20, seed=4)
    assert a.to_json() == b.to_json()
    assert a.points == 20 and len(a.families) == 5
    assert all(f.points == 4 for f in a.families)


def test_infeasible_pair_has_nothing_to_sample():
    rep = sample_numeric_check("G1", "C0", 10)
    assert rep.points == 0 and rep.ok


def test_points_must_be_positive():
    with pytest.raises(ValueError):
        sample_numeric_check("G1", "C2", 0)
