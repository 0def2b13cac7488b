"""
Provide classes for executing search strategies against goals.
"""
import logging
from dataclasses import dataclass
from typing import Optional

from raysearch.model import (
    CostLedger,
    GoalPlacement,
    HorizonExhaustedError,
    Trace,
    truncate_at_goal,
)
from raysearch.strategies import horizon_for, make_plan, max_horizon

MAX_HORIZON_DOUBLINGS = 8

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SimResult:
    """The result of executing a plan until the goal is found.

    Attributes:
        goal
            The goal placement
        ledger
            The distances travelled until discovery
        trace
            The executed prefix of the plan (optional)
    """

    goal: GoalPlacement
    ledger: CostLedger
    trace: Optional[Trace] = None

    @property
    def ratio(self):
        """The ratio of the total cost and the goal distance"""
        return self.ledger.total / self.goal.distance

    def to_dict(self):
        data = {
            "schema": 1,
            "goal": self.goal.to_dict(),
            "ledger": self.ledger.to_dict(),
            "ratio": self.ratio,
        }
        if self.trace is not None:
            data["trace"] = self.trace.to_dict()
        return data

    @classmethod
    def from_dict(cls, data):
        trace = data.get("trace")
        return cls(
            goal=GoalPlacement.from_dict(data["goal"]),
            ledger=CostLedger.from_dict(data["ledger"]),
            trace=None if trace is None else Trace.from_dict(trace),
        )


def run(plan, goal: GoalPlacement):
    """Execute a plan until the goal is found.

    Args:
        plan: The plan to execute
        goal: The goal placement

    Returns:
        The :class:`SimResult` with the executed trace

    Raises:
        HorizonExhaustedError: if the plan ends before the goal is found
    """
    trace, ledger = truncate_at_goal(plan, goal)
    return SimResult(goal=goal, ledger=ledger, trace=trace)


class Simulator:
    """Simulator for search strategies.

    The simulator creates the plan of a strategy for a horizon sized to the
    goal distance. If the plan ends before the goal is found, the horizon is
    doubled and the plan is recreated, up to ``max_doublings`` times. The
    horizon never grows beyond :func:`raysearch.strategies.max_horizon`,
    where the radii of the strategy leave the floating point range.

    Args:
        strategy:
            The name of the strategy, one of
            :data:`raysearch.strategies.STRATEGIES`
        w:
            The number of paths
        lam:
            The number of robots
        rng:
            The random source for randomized strategies (optional)
        horizon:
            The initial horizon (optional, default: sized from the goal
            distance by :func:`raysearch.strategies.horizon_for`)
        max_doublings:
            The maximum number of horizon doublings
        plan_options:
            Additional keyword arguments for the plan generator
    """

    def __init__(
        self,
        strategy,
        w,
        lam,
        rng=None,
        horizon=None,
        max_doublings=MAX_HORIZON_DOUBLINGS,
        **plan_options
    ):
        self.strategy = strategy
        self.w = w
        self.lam = lam
        self.rng = rng
        self.horizon = horizon
        self.max_doublings = max_doublings
        self.plan_options = plan_options

    def plan(self, horizon):
        """Create the plan of the strategy for the given horizon"""
        return make_plan(
            self.strategy,
            self.w,
            self.lam,
            horizon,
            rng=self.rng,
            **self.plan_options
        )

    def run(self, goal: GoalPlacement):
        """Execute the strategy until the goal is found.

        Args:
            goal: The goal placement

        Returns:
            The :class:`SimResult`

        Raises:
            DomainError: if the goal does not lie on one of the paths
            HorizonExhaustedError: if the goal is not found within the
                largest horizon tried
        """
        goal.check_paths(self.w)
        limit = max_horizon(self.strategy, self.w, self.lam)
        horizon = self.horizon
        if horizon is None:
            horizon = min(
                horizon_for(self.strategy, self.w, self.lam, goal.distance),
                limit,
            )
        for _ in range(self.max_doublings):
            try:
                return run(self.plan(horizon), goal)
            except HorizonExhaustedError:
                if horizon >= limit:
                    raise
                logger.debug(
                    "Goal %r not found within horizon %d, doubling",
                    goal,
                    horizon,
                )
                horizon = min(2 * horizon, limit)
        return run(self.plan(horizon), goal)
