"""
Deterministic strategies.

The single robot of :func:`det_single_plan` searches the paths in a fixed
cyclic order, turning in stage ``i`` at radius ``f(w, i) = (w/(w-1))**i``.

In :func:`det_multi_plan`, robots ``1, ..., lam-1`` are pinned to paths
``1, ..., lam-1`` and never move towards the origin. Robot ``lam`` runs the
single-robot strategy on the remaining ``w' = w - lam + 1`` paths
``0, lam, ..., w-1``. In round ``i`` robot ``lam`` searches its path up to
``f(w', i-w')``, then all robots advance together up to ``f(w', i+1-w')``,
and finally robot ``lam`` continues up to ``f(w', i)`` and returns.
"""
from raysearch.analytic import radius_f
from raysearch.model import Segment, check_path_count, check_robot_count
from raysearch.strategies.horizon import check_horizon, max_horizon
from raysearch.strategies.plan import ExplorationPlan
from raysearch.strategies.straight import straight_walk_plan


def det_single_plan(w, horizon):
    """Generate the deterministic single-robot plan.

    Args:
        w: The number of paths
        horizon: The number of stages

    Raises:
        DomainError: if ``w < 2`` or ``horizon`` is not in
            ``[1, max_horizon("det_single", w, 1)]``
    """
    check_path_count(w)
    check_horizon(horizon, max_horizon("det_single", w, 1))
    segments = []
    for stage in range(horizon):
        path = stage % w
        radius = radius_f(w, stage)
        segments.append(Segment(1, path, 0.0, radius))
        segments.append(Segment(1, path, radius, 0.0))
    return ExplorationPlan(
        w=w,
        lam=1,
        segments=tuple(segments),
        horizon=horizon,
        strategy="det_single",
    )


def det_multi_plan(w, lam, horizon):
    """Generate the deterministic multi-robot plan.

    With a single robot this is the single-robot plan, and with one robot per
    path all robots walk straight.

    Args:
        w: The number of paths
        lam: The number of robots
        horizon: The number of rounds

    Raises:
        DomainError: if ``w < 2``, ``lam`` is not in ``[1, w]`` or
            ``horizon`` is not in ``[1, max_horizon("det_multi", w, lam)]``
    """
    check_path_count(w)
    check_robot_count(w, lam)
    check_horizon(horizon, max_horizon("det_multi", w, lam))
    if lam == w:
        return straight_walk_plan(w, horizon, strategy="det_multi")
    if lam == 1:
        single = det_single_plan(w, horizon)
        return ExplorationPlan(
            w=w,
            lam=1,
            segments=single.segments,
            horizon=horizon,
            strategy="det_multi",
        )

    reduced = w - lam + 1
    cycle = (0,) + tuple(range(lam, w))
    segments = []
    for rnd in range(horizon):
        path = cycle[rnd % reduced]
        solo_end = radius_f(reduced, rnd - reduced)
        joint_end = radius_f(reduced, rnd + 1 - reduced)
        turn = radius_f(reduced, rnd)

        if solo_end > 0:
            segments.append(Segment(lam, path, 0.0, solo_end))
        if joint_end > solo_end:
            for robot in range(1, lam):
                segments.append(
                    Segment(robot, robot, solo_end, joint_end, rnd)
                )
            segments.append(Segment(lam, path, solo_end, joint_end, rnd))
        segments.append(Segment(lam, path, joint_end, turn))
        segments.append(Segment(lam, path, turn, 0.0))

    return ExplorationPlan(
        w=w,
        lam=lam,
        segments=tuple(segments),
        horizon=horizon,
        strategy="det_multi",
    )
