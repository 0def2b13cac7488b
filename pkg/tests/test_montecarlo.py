"""Tests for the ``raysearch.montecarlo`` module"""
import numpy as np
import pytest
from numpy import testing as npt

from raysearch.analytic import rand_multi_bound, rand_single_bound
from raysearch.model import DomainError, GoalPlacement
from raysearch.montecarlo import RatioEstimate, expected_ratio_mc, trial_ratios


def test_single_robot_estimate():
    """Test that the estimate for a distant goal is close to the expected
    ratio of the randomized single-robot strategy"""
    estimate = expected_ratio_mc(2, 1, GoalPlacement(0, 1000), 2000, seed=3)
    half_width = estimate.ci_high - estimate.point
    assert half_width > 0
    assert abs(estimate.point - rand_single_bound(2)) <= 4 * half_width + 0.01
    assert estimate.ci_low < estimate.point < estimate.ci_high


def test_multi_robot_estimate():
    estimate = expected_ratio_mc(3, 2, GoalPlacement(1, 500), 2000, seed=11)
    half_width = estimate.ci_high - estimate.point
    assert estimate.point <= rand_multi_bound(3, 2) + 4 * half_width
    assert estimate.point >= 1


@pytest.mark.slow
def test_single_robot_full_scale():
    """Test the estimate for 10**5 trials against the expected ratio of the
    randomized single-robot strategy"""
    estimate = expected_ratio_mc(
        2, 1, GoalPlacement(0, 1e4), 10 ** 5, seed=2024
    )
    npt.assert_allclose(estimate.point, rand_single_bound(2), rtol=0.05)
    assert estimate.ci_high - estimate.ci_low < 0.05


@pytest.mark.slow
@pytest.mark.parametrize("w, lam", [(3, 2), (4, 2), (4, 3)])
def test_multi_robot_full_scale(w, lam):
    estimate = expected_ratio_mc(w, lam, GoalPlacement(0, 1e4), 10 ** 4, seed=7)
    assert estimate.point <= rand_multi_bound(w, lam) + 0.1


@pytest.mark.parametrize("w", [2, 3])
def test_one_robot_per_path(w):
    estimate = expected_ratio_mc(w, w, GoalPlacement(1, 6), 50, seed=1)
    assert estimate.point == w
    assert estimate.ci_low == estimate.ci_high == w


def test_single_trial():
    estimate = expected_ratio_mc(2, 1, GoalPlacement(0, 10), 1, seed=5)
    assert estimate.ci_low == estimate.point == estimate.ci_high
    assert estimate.trials == 1


def test_reproducible():
    goal = GoalPlacement(0, 50)
    first = expected_ratio_mc(3, 1, goal, 100, seed=42)
    second = expected_ratio_mc(3, 1, goal, 100, seed=42)
    assert first == second
    assert expected_ratio_mc(3, 1, goal, 100, seed=43) != first


def test_trials_independent_of_chunking():
    """Test that each trial gives the same ratio in any chunk"""
    goal = GoalPlacement(1, 20)
    ratios = trial_ratios(4, 2, goal, 9, 0, 20)
    npt.assert_array_equal(trial_ratios(4, 2, goal, 9, 5, 20), ratios[5:])
    npt.assert_array_equal(trial_ratios(4, 2, goal, 9, 0, 5), ratios[:5])
    estimate = expected_ratio_mc(4, 2, goal, 20, seed=9)
    assert estimate.point == np.sum(ratios) / 20


def test_workers_match_sequential():
    goal = GoalPlacement(0, 30)
    sequential = expected_ratio_mc(3, 2, goal, 50, seed=17)
    parallel = expected_ratio_mc(3, 2, goal, 50, seed=17, workers=2)
    assert parallel == sequential


def test_max_group_length():
    """Test that splitting the motions into smaller groups only changes the
    cost within the group of discovery"""
    goal = GoalPlacement(0, 40)
    coarse = trial_ratios(3, 2, goal, 4, 0, 30)
    fine = trial_ratios(3, 2, goal, 4, 0, 30, max_group_length=0.5)
    npt.assert_allclose(fine, coarse, rtol=1e-9)


@pytest.mark.parametrize(
    "w, lam, goal, trials, seed, workers",
    [
        (2, 1, GoalPlacement(0, 10), 0, 1, 1),
        (2, 1, GoalPlacement(0, 10), 10, 1, 0),
        (2, 1, GoalPlacement(0, 10), 10, -1, 1),
        (2, 1, GoalPlacement(3, 10), 10, 1, 1),
        (2, 3, GoalPlacement(0, 10), 10, 1, 1),
    ],
)
def test_invalid(w, lam, goal, trials, seed, workers):
    with pytest.raises(DomainError):
        expected_ratio_mc(w, lam, goal, trials, seed, workers=workers)


def test_ratio_estimate_serialization():
    estimate = expected_ratio_mc(2, 1, GoalPlacement(1, 10), 20, seed=2)
    data = estimate.to_dict()
    assert data["schema"] == 1
    assert data["seed"] == 2
    assert RatioEstimate.from_dict(data) == estimate
