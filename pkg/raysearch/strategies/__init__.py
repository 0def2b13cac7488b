"""
Search strategies generating :class:`ExplorationPlan` objects.

Strategies are identified by name. :func:`make_plan` creates the plan of a
named strategy for a given instance and horizon.
"""
from raysearch.model import DomainError

from .deterministic import det_multi_plan, det_single_plan
from .horizon import horizon_for, max_horizon
from .plan import ExplorationPlan
from .random import RandomSource
from .randomized import rand_multi_plan, rand_single_plan
from .straight import straight_walk_plan

RANDOMIZED_STRATEGIES = ("rand_single", "rand_multi")
STRATEGIES = (
    "det_single",
    "det_multi",
    "rand_single",
    "rand_multi",
    "straight",
)


def make_plan(strategy, w, lam, horizon, rng=None, **options):
    """Create the plan of the named strategy.

    Args:
        strategy: The strategy name, one of :data:`STRATEGIES`
        w: The number of paths
        lam: The number of robots (must be 1 for the single-robot
            strategies and ``w`` for ``straight``)
        horizon: The number of stages
        rng: The :class:`RandomSource` for the randomized strategies
        options: Additional keyword arguments for the randomized strategies

    Raises:
        DomainError: if the strategy is unknown or does not fit the number of
            robots
    """
    if strategy == "det_multi":
        return det_multi_plan(w, lam, horizon)
    if strategy == "rand_multi":
        return rand_multi_plan(w, lam, rng, horizon, **options)
    if strategy in ("det_single", "rand_single") and lam != 1:
        raise DomainError("Strategy %r requires a single robot" % strategy)
    if strategy == "det_single":
        return det_single_plan(w, horizon)
    if strategy == "rand_single":
        return rand_single_plan(w, rng, horizon, **options)
    if strategy == "straight":
        if lam != w:
            raise DomainError("Strategy 'straight' requires one robot per path")
        return straight_walk_plan(w, horizon)
    raise DomainError("Unknown strategy %r" % strategy)
