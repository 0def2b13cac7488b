"""Tests for the ``raysearch.adversary`` module"""
import pytest
from fixtures.plans import doubling_plan
from numpy import testing as npt

from raysearch.adversary import (
    AdversaryResult,
    candidate_goals,
    competitive_fit,
    ratio_profile,
    ratio_sweep,
    worst_case_ratio_det,
)
from raysearch.analytic import det_ratio
from raysearch.model import DomainError, GoalPlacement


def test_candidate_goals():
    plan, _ = doubling_plan()
    candidates = candidate_goals(plan, 6)
    assert candidates == [
        GoalPlacement(0, 1),
        GoalPlacement(0, 2),
        GoalPlacement(0, 5),
        GoalPlacement(1, 1),
        GoalPlacement(1, 3),
    ]
    assert candidate_goals(plan, 6, offset=0.5) == [
        GoalPlacement(0, 1.5),
        GoalPlacement(0, 4.5),
        GoalPlacement(1, 2.5),
    ]


def test_worst_case_two_paths():
    """Test the worst case for the doubling strategy, where the goal lies
    one unit past the last turn before ``n_max``"""
    result = worst_case_ratio_det(2, 1, 4096)
    assert result.ratio == (9 * 2 ** 11 - 1) / (2 ** 11 + 1)
    assert result.goal.distance == 2 ** 11 + 1
    assert abs(result.ratio - 9) / 9 < 0.01
    assert result.ledger.total == 9 * 2 ** 11 - 1


def test_worst_case_small_offset():
    result = worst_case_ratio_det(2, 1, 100, offset=1e-6)
    npt.assert_allclose(result.ratio, (9 * 64 - 2 + 1e-6) / (64 + 1e-6))
    assert result.goal == GoalPlacement(0, 64 + 1e-6)


@pytest.mark.parametrize("w, lam", [(3, 2), (4, 2), (4, 3), (5, 2)])
def test_worst_case_multi_robot(w, lam):
    result = worst_case_ratio_det(w, lam, 2 ** 16)
    assert result.ratio <= det_ratio(w, lam) + 1e-9
    assert result.ratio >= 0.95 * det_ratio(w, lam)


@pytest.mark.parametrize("w, lam", [(3, 1), (3, 2), (4, 2), (5, 3)])
def test_worst_case_near_optimum(w, lam):
    """Test that the worst goal up to distance 10**4 comes within one percent
    of the optimal ratio without exceeding it"""
    result = worst_case_ratio_det(w, lam, 1e4)
    assert result.ratio <= det_ratio(w, lam) + 1e-9
    npt.assert_allclose(result.ratio, det_ratio(w, lam), rtol=0.01)


def test_worst_case_three_paths_two_robots():
    result = worst_case_ratio_det(3, 2, 2 ** 16)
    npt.assert_allclose(result.ratio, 10, rtol=0.01)


def test_worst_case_one_robot_per_path():
    result = worst_case_ratio_det(3, 3, 100)
    npt.assert_allclose(result.ratio, 3)


@pytest.mark.parametrize("w, lam", [(2, 1), (3, 1), (3, 2)])
def test_worst_case_monotone(w, lam):
    ratios = [
        worst_case_ratio_det(w, lam, n_max).ratio
        for n_max in (4, 16, 64, 256, 1024)
    ]
    assert all(a <= b for a, b in zip(ratios, ratios[1:]))


@pytest.mark.parametrize(
    "w, lam, n_max, offset",
    [(1, 1, 10, 1), (2, 3, 10, 1), (2, 1, 1.5, 1), (2, 1, 10, 0)],
)
def test_worst_case_invalid(w, lam, n_max, offset):
    with pytest.raises(DomainError):
        worst_case_ratio_det(w, lam, n_max, offset)


def test_adversary_result_to_dict():
    result = worst_case_ratio_det(2, 1, 16)
    data = result.to_dict()
    assert data["schema"] == 1
    assert data["lambda"] == 1
    assert data["goal"] == {"path": 1, "distance": 9.0}
    assert data["candidates"] == result.candidates
    assert isinstance(result, AdversaryResult)


def test_ratio_profile_deterministic():
    rows = ratio_profile("det_multi", 2, 1, [64, 16])
    assert [row["n"] for row in rows] == [16, 64]
    for row in rows:
        assert row["ratio"] == worst_case_ratio_det(2, 1, row["n"]).ratio
        assert row["ci_low"] == row["ci_high"] == row["ratio"]
        assert row["seed"] is None
        assert row["lambda"] == 1


def test_ratio_profile_straight():
    rows = ratio_profile("straight", 4, 4, [10, 100])
    npt.assert_allclose([row["ratio"] for row in rows], 4)


def test_ratio_profile_randomized():
    rows = ratio_profile("rand_multi", 3, 3, [5], trials=10, seed=7)
    assert rows == [
        {
            "w": 3,
            "lambda": 3,
            "n": 5,
            "ratio": 3.0,
            "ci_low": 3.0,
            "ci_high": 3.0,
            "seed": 7,
        }
    ]


@pytest.mark.parametrize(
    "strategy, w, lam, options",
    [
        ("det_single", 3, 2, {}),
        ("rand_single", 3, 2, {"trials": 5, "seed": 1}),
        ("straight", 3, 2, {}),
        ("rand_multi", 3, 2, {}),
        ("unknown", 3, 2, {}),
    ],
)
def test_ratio_profile_invalid(strategy, w, lam, options):
    with pytest.raises(DomainError):
        ratio_profile(strategy, w, lam, [10], **options)


def test_ratio_profile_empty_grid():
    with pytest.raises(DomainError):
        ratio_profile("det_multi", 2, 1, [])


def test_competitive_fit():
    fit = competitive_fit("det_single", 2, 1, [16, 4096, 256])
    assert fit == worst_case_ratio_det(2, 1, 4096).ratio
    assert fit <= det_ratio(2, 1)


def test_competitive_fit_three_paths():
    fit = competitive_fit("det_single", 3, 1, [16, 256, 4096, 65536])
    assert 0.98 * det_ratio(3, 1) <= fit <= det_ratio(3, 1)


def test_ratio_sweep():
    rows = ratio_sweep("det_multi", [3, 2], [2, 1, 3], [16, 8])
    keys = [(row["w"], row["lambda"], row["n"]) for row in rows]
    assert keys == [
        (2, 1, 8),
        (2, 1, 16),
        (2, 2, 8),
        (2, 2, 16),
        (3, 1, 8),
        (3, 1, 16),
        (3, 2, 8),
        (3, 2, 16),
        (3, 3, 8),
        (3, 3, 16),
    ]
    npt.assert_allclose(rows[2]["ratio"], 2)


def test_ratio_sweep_skips_inadmissible():
    rows = ratio_sweep("straight", [2, 3], [1, 2, 3], [4])
    assert [(row["w"], row["lambda"]) for row in rows] == [(2, 2), (3, 3)]
    with pytest.raises(DomainError):
        ratio_sweep("det_single", [2, 3], [2], [4])


def test_ratio_sweep_parallel():
    """Test that parallel sweeps give the same rows as sequential ones"""
    sequential = ratio_sweep("det_multi", [2, 3], [1, 2], [8, 32])
    parallel = ratio_sweep("det_multi", [2, 3], [1, 2], [8, 32], workers=2)
    assert parallel == sequential
