"""The strategy for as many robots as paths: every robot walks its own path."""
from raysearch.model import DomainError, Segment, check_path_count
from raysearch.strategies.horizon import check_horizon, max_horizon
from raysearch.strategies.plan import ExplorationPlan


def straight_walk_plan(
    w, horizon, paths=None, strategy="straight", params=None
):
    """Let robot ``k`` walk path ``paths[k-1]`` away from the origin.

    All robots move simultaneously. In stage ``i`` every robot advances from
    ``2**(i-1)`` (from 0 in stage 0) to ``2**i``.

    Args:
        w: The number of paths and robots
        horizon: The number of stages
        paths: The path walked by each robot (default: robot ``k`` walks
            path ``k-1``)
        strategy: The strategy name recorded in the plan
        params: Strategy parameters recorded in the plan

    Raises:
        DomainError: if ``w < 2``, ``horizon`` is not in
            ``[1, max_horizon("straight", w, w)]`` or ``paths`` is not a
            permutation of the paths
    """
    check_path_count(w)
    check_horizon(horizon, max_horizon("straight", w, w))
    if paths is None:
        paths = range(w)
    paths = tuple(paths)
    if sorted(paths) != list(range(w)):
        raise DomainError("Every path must be walked by exactly one robot")

    segments = []
    for stage in range(horizon):
        start = 0.0 if stage == 0 else 2.0 ** (stage - 1)
        stop = 2.0 ** stage
        for robot, path in enumerate(paths, start=1):
            segments.append(Segment(robot, path, start, stop, stage))
    return ExplorationPlan(
        w=w,
        lam=w,
        segments=tuple(segments),
        horizon=horizon,
        strategy=strategy,
        params=dict(params or {}),
    )
