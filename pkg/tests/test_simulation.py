# pylint: disable=missing-module-docstring
import logging

import pytest
from fixtures.plans import doubling_plan, two_robots_plan
from numpy import testing as npt

from raysearch.analytic import det_ratio
from raysearch.model import (
    DomainError,
    GoalPlacement,
    HorizonExhaustedError,
    total_cost,
)
from raysearch.simulation import SimResult, Simulator, run
from raysearch.strategies import (
    RandomSource,
    det_multi_plan,
    det_single_plan,
    max_horizon,
    rand_single_plan,
)


@pytest.mark.parametrize("fixture", [doubling_plan, two_robots_plan])
def test_run_reference_costs(fixture):
    plan, costs = fixture()
    for goal, expected in costs:
        result = run(plan, goal)
        assert result.ledger.total == expected
        npt.assert_allclose(result.ratio, expected / goal.distance)
        assert total_cost(result.trace) == expected


def test_generated_plans_match_fixtures():
    assert det_single_plan(2, 4).segments == doubling_plan()[0].segments
    assert det_multi_plan(3, 2, 3).segments == two_robots_plan()[0].segments


def test_run_ledger():
    plan, _ = two_robots_plan()
    result = run(plan, GoalPlacement(1, 1.5))
    assert result.ledger.per_robot_distance == (1.5, 7.5)
    assert result.ledger.discovery.segment_index == 7
    assert result.trace[-1].to_pos == 1.5


def test_run_exhausted():
    plan, _ = doubling_plan()
    with pytest.raises(HorizonExhaustedError):
        run(plan, GoalPlacement(0, 5))


def test_run_invalid_path():
    plan, _ = doubling_plan()
    with pytest.raises(DomainError):
        run(plan, GoalPlacement(2, 1))


@pytest.mark.parametrize("w", [2, 3, 5])
def test_straight_walk_ratio(w):
    """Test that one robot per path always achieves ratio ``w``"""
    simulator = Simulator("straight", w, w)
    for path in range(w):
        for distance in (1, 1.5, 3, 100.25):
            result = simulator.run(GoalPlacement(path, distance))
            npt.assert_allclose(result.ratio, w)


@pytest.mark.parametrize("w, lam", [(2, 1), (3, 1), (3, 2), (5, 3)])
def test_deterministic_ratio_bound(w, lam):
    """Test that no goal just beyond a turning point exceeds the competitive
    ratio"""
    simulator = Simulator("det_multi", w, lam)
    plan = det_multi_plan(w, lam, 30)
    turns = {
        (segment.path, segment.to_pos)
        for segment in plan
        if segment.is_forward and segment.to_pos >= 1
    }
    for path, radius in sorted(turns, key=lambda turn: turn[1])[:40]:
        result = simulator.run(GoalPlacement(path, radius * (1 + 1e-9)))
        assert result.ratio <= det_ratio(w, lam) + 1e-6


def test_simulator_doubling(caplog):
    simulator = Simulator("det_single", 2, 1, horizon=1)
    with caplog.at_level(logging.DEBUG, logger="raysearch.simulation"):
        result = simulator.run(GoalPlacement(1, 3))
    assert result.ledger.total == 17
    assert "doubling" in caplog.text


def test_simulator_exhausted():
    simulator = Simulator("det_single", 2, 1, horizon=1, max_doublings=1)
    with pytest.raises(HorizonExhaustedError):
        simulator.run(GoalPlacement(1, 3))


def test_simulator_doubling_stops_at_largest_horizon():
    """Test that doubling is capped where radii leave the floating point
    range"""
    simulator = Simulator("det_single", 2, 1, horizon=600)
    result = simulator.run(GoalPlacement(0, 2.0 ** 1020))
    assert max_horizon("det_single", 2, 1) < 1200
    npt.assert_allclose(result.ratio, 3)


def test_simulator_goal_beyond_finite_radii():
    simulator = Simulator("det_single", 2, 1)
    with pytest.raises(HorizonExhaustedError):
        simulator.run(GoalPlacement(1, 1e308))


def test_simulator_invalid_goal():
    simulator = Simulator("det_single", 2, 1)
    with pytest.raises(DomainError):
        simulator.run(GoalPlacement(3, 1))


def test_simulator_randomized():
    """Test that the simulator uses the random source for every horizon"""
    rng = RandomSource(42)
    simulator = Simulator("rand_single", 3, 1, rng=rng, horizon=1)
    goal = GoalPlacement(2, 50)
    result = simulator.run(goal)
    reference = run(rand_single_plan(3, rng, 64), goal)
    assert result.ledger.total == reference.ledger.total


def test_simulator_plan_options():
    simulator = Simulator(
        "rand_single", 2, 1, permutation=(1, 0), phase=0.5
    )
    plan = simulator.plan(3)
    assert plan.params["permutation"] == [1, 0]
    assert plan[0].path == 1


def test_sim_result_serialization():
    plan, _ = two_robots_plan()
    result = run(plan, GoalPlacement(2, 2))
    data = result.to_dict()
    assert data["schema"] == 1
    assert data["ratio"] == 2.5
    assert SimResult.from_dict(data) == result
    bare = SimResult(result.goal, result.ledger)
    assert "trace" not in bare.to_dict()
