"""Sizing of plan horizons from the goal distance"""
import math

from raysearch.analytic import max_exponent, solve_rw, speed_v
from raysearch.model import DomainError, check_path_count, check_robot_count

DETERMINISTIC = ("det_single", "det_multi")
RANDOMIZED = ("rand_single", "rand_multi")
STRAIGHT = ("straight",)


def growth_rate(strategy, w, lam):
    """The factor by which the radii of the strategy grow per stage.

    Raises:
        DomainError: if the strategy is unknown or the counts are out of range
    """
    check_path_count(w)
    check_robot_count(w, lam)
    if strategy in STRAIGHT or lam == w:
        return 2.0
    reduced = w - lam + 1
    if strategy in DETERMINISTIC:
        return reduced / (reduced - 1)
    if strategy in RANDOMIZED:
        return solve_rw(reduced)
    raise DomainError("Unknown strategy %r" % strategy)


def max_horizon(strategy, w, lam):
    """The largest horizon for which the total distance travelled in the plan
    of the strategy is a finite floating point number.

    Within ``h`` stages of growth rate ``r`` the last robot travels less than
    ``2 r**(h+1) / (r-1)``, and each of the other robots travels at most
    that distance divided by the speed ratio.

    Raises:
        DomainError: if the strategy is unknown or the counts are out of range
    """
    rate = growth_rate(strategy, w, lam)
    others = lam - 1
    if strategy == "rand_multi" and 1 < lam < w:
        others /= speed_v(w, lam)
    return max_exponent(rate, 2 * rate / (rate - 1) * (1 + others))


def check_horizon(horizon, limit):
    """Check a horizon against the largest horizon of a strategy.

    Raises:
        DomainError: if the horizon is not in ``[1, limit]``
    """
    if horizon < 1:
        raise DomainError("The horizon must be at least 1, got %r" % horizon)
    if horizon > limit:
        raise DomainError(
            "The horizon must be at most %d for finite radii, got %r"
            % (limit, horizon)
        )


def horizon_for(strategy, w, lam, n):
    """Determine a horizon for which the plan of the given strategy finds
    every goal at distance at most ``n``.

    The estimate is derived from the radii of the strategy and includes a
    margin of a few stages. For the randomized strategies it holds for every
    permutation and phase. The result may exceed :func:`max_horizon` for
    goals too far away to be reached with finite radii.

    Args:
        strategy: The strategy name (``det_single``, ``det_multi``,
            ``rand_single``, ``rand_multi`` or ``straight``)
        w: The number of paths
        lam: The number of robots
        n: The largest goal distance

    Returns:
        The number of stages (or rounds)

    Raises:
        DomainError: if the strategy is unknown or the arguments are out of
            range
    """
    rate = growth_rate(strategy, w, lam)
    if not n >= 1:
        raise DomainError("The goal distance must be at least 1, got %r" % n)
    log_n = math.log(n)

    if strategy in STRAIGHT or lam == w:
        return math.ceil(log_n / math.log(rate)) + 2
    reduced = w - lam + 1
    if strategy in DETERMINISTIC:
        return math.ceil(log_n / math.log(rate)) + 2 * reduced + 2
    # Straight-walking robots advance 1/v per unit travelled by the last
    # robot, which travels at least 2 r**j in stage j
    reach = math.log(max(n, n * speed_v(w, lam)))
    return math.ceil(reach / math.log(rate)) + reduced + 2
