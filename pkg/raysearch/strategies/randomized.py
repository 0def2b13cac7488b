"""
Randomized strategies.

The single robot of :func:`rand_single_plan` draws a uniform permutation
``sigma`` of the paths and a uniform phase ``eps`` in ``[0, 1)``. In stage
``j`` it searches path ``sigma[j mod w]`` up to radius ``r_w**(eps + j)`` and
returns to the origin.

In :func:`rand_multi_plan` robots ``1, ..., lam-1`` walk straight on paths
``sigma[1], ..., sigma[lam-1]``, while robot ``lam`` runs the single-robot
strategy with rate ``r_{w'}`` on the remaining paths ``sigma[0],
sigma[lam], ..., sigma[w-1]`` (in this order). The robots move together so
that robot ``lam`` travels ``v`` times the distance of each straight-walking
robot. Every motion of robot ``lam`` forms a parallel group with the
corresponding advance of the other robots.
"""
import math

from raysearch.analytic import solve_rw, speed_v
from raysearch.model import (
    DomainError,
    Segment,
    check_path_count,
    check_positive,
    check_robot_count,
)
from raysearch.strategies.horizon import check_horizon, max_horizon
from raysearch.strategies.plan import ExplorationPlan
from raysearch.strategies.straight import straight_walk_plan


def _draw(w, rng, permutation, phase):
    """Determine the permutation and the phase, drawing from ``rng`` unless
    both are given."""
    if permutation is None or phase is None:
        if rng is None:
            raise DomainError(
                "A random source is required unless permutation and phase "
                "are given"
            )
        drawn_permutation, drawn_phase = rng.draw_permutation_and_phase(w)
        if permutation is None:
            permutation = drawn_permutation
        if phase is None:
            phase = drawn_phase
    permutation = tuple(int(p) for p in permutation)
    if sorted(permutation) != list(range(w)):
        raise DomainError(
            "%r is not a permutation of the paths" % (permutation,)
        )
    if not 0 <= phase < 1:
        raise DomainError("The phase must lie in [0, 1), got %r" % phase)
    return permutation, float(phase)


def _chunks(start, stop, max_length):
    """Split the motion from ``start`` to ``stop`` into pieces of at most
    ``max_length``."""
    if max_length is None:
        return [(start, stop)]
    count = max(1, math.ceil(abs(stop - start) / max_length))
    points = [start + (stop - start) * k / count for k in range(count)]
    points.append(stop)
    return list(zip(points[:-1], points[1:]))


def rand_single_plan(w, rng, horizon, permutation=None, phase=None):
    """Generate the randomized single-robot plan.

    Args:
        w: The number of paths
        rng: The :class:`RandomSource` to draw the permutation and the phase
            from (may be ``None`` if both are given)
        horizon: The number of stages
        permutation: Override for the permutation (default: drawn)
        phase: Override for the phase (default: drawn)

    Raises:
        DomainError: if ``w < 2``, ``horizon`` is not in
            ``[1, max_horizon("rand_single", w, 1)]`` or the overrides are
            invalid
    """
    check_path_count(w)
    check_horizon(horizon, max_horizon("rand_single", w, 1))
    permutation, phase = _draw(w, rng, permutation, phase)
    rate = solve_rw(w)
    segments = []
    for stage in range(horizon):
        path = permutation[stage % w]
        radius = rate ** (phase + stage)
        segments.append(Segment(1, path, 0.0, radius))
        segments.append(Segment(1, path, radius, 0.0))
    return ExplorationPlan(
        w=w,
        lam=1,
        segments=tuple(segments),
        horizon=horizon,
        strategy="rand_single",
        params={
            "permutation": list(permutation),
            "phase": phase,
            "rate": rate,
        },
    )


def rand_multi_plan(
    w,
    lam,
    rng,
    horizon,
    max_group_length=None,
    permutation=None,
    phase=None,
):
    """Generate the randomized multi-robot plan.

    The horizon counts the stages of robot ``lam``. With a single robot the
    plan has the same segments as :func:`rand_single_plan`, and with one
    robot per path all robots walk straight with speed ratio 1.

    Args:
        w: The number of paths
        lam: The number of robots
        rng: The :class:`RandomSource` to draw the permutation and the phase
            from (may be ``None`` if both are given)
        horizon: The number of stages of robot ``lam``
        max_group_length: If given, split every motion of robot ``lam`` into
            parallel groups moving it by at most this distance
        permutation: Override for the permutation (default: drawn)
        phase: Override for the phase (default: drawn)

    Raises:
        DomainError: if the counts are out of range, ``horizon`` is not in
            ``[1, max_horizon("rand_multi", w, lam)]``,
            ``max_group_length <= 0`` or the overrides are invalid
    """
    check_path_count(w)
    check_robot_count(w, lam)
    check_horizon(horizon, max_horizon("rand_multi", w, lam))
    if max_group_length is not None:
        check_positive("max_group_length", max_group_length)
    permutation, phase = _draw(w, rng, permutation, phase)
    params = {
        "permutation": list(permutation),
        "phase": phase,
        "max_group_length": max_group_length,
    }

    if lam == w:
        params.update(rate=None, speed=1.0)
        return straight_walk_plan(
            w,
            horizon,
            paths=permutation[1:] + permutation[:1],
            strategy="rand_multi",
            params=params,
        )

    reduced = w - lam + 1
    order = permutation[:1] + permutation[lam:]
    rate = solve_rw(reduced)
    speed = speed_v(w, lam)
    params.update(rate=rate, speed=speed)

    pinned_paths = permutation[1:lam]
    pinned_positions = [0.0] * (lam - 1)
    segments = []
    group = 0
    for stage in range(horizon):
        path = order[stage % reduced]
        radius = rate ** (phase + stage)
        for start, stop in ((0.0, radius), (radius, 0.0)):
            for piece_start, piece_stop in _chunks(
                start, stop, max_group_length if lam > 1 else None
            ):
                tag = None
                if lam > 1:
                    tag = group
                    group += 1
                    advance = abs(piece_stop - piece_start) / speed
                    for index, pinned_path in enumerate(pinned_paths):
                        position = pinned_positions[index]
                        pinned_positions[index] = position + advance
                        segments.append(
                            Segment(
                                index + 1,
                                pinned_path,
                                position,
                                position + advance,
                                tag,
                            )
                        )
                segments.append(
                    Segment(lam, path, piece_start, piece_stop, tag)
                )

    return ExplorationPlan(
        w=w,
        lam=lam,
        segments=tuple(segments),
        horizon=horizon,
        strategy="rand_multi",
        params=params,
    )
