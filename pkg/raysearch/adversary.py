"""
Adversarial goal placement and empirical competitive ratios.

The adversary against a deterministic strategy places the goal just past a
position the strategy has already reached on that path, so that the robots
turn back right before finding it.
"""
import concurrent.futures
import itertools
import logging
from dataclasses import dataclass
from typing import Optional

from raysearch.model import (
    CostLedger,
    DomainError,
    GoalPlacement,
    check_path_count,
    check_positive,
    check_robot_count,
)
from raysearch.montecarlo import expected_ratio_mc
from raysearch.simulation import run
from raysearch.strategies import det_multi_plan, horizon_for
from raysearch.strategies.horizon import DETERMINISTIC, RANDOMIZED, STRAIGHT

DEFAULT_OFFSET = 1.0

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AdversaryResult:
    """The worst goal placement found by the adversary.

    Attributes:
        w
            The number of paths
        lam
            The number of robots
        n_max
            The largest admissible goal distance
        offset
            The distance between a reached position and the goal
        ratio
            The largest ratio over all candidate goals
        goal
            The goal attaining the ratio
        ledger
            The ledger of the execution for this goal
        candidates
            The number of candidate goals examined
    """

    w: int
    lam: int
    n_max: float
    offset: float
    ratio: float
    goal: GoalPlacement
    ledger: CostLedger
    candidates: int

    def to_dict(self):
        return {
            "schema": 1,
            "w": self.w,
            "lambda": self.lam,
            "n_max": self.n_max,
            "offset": self.offset,
            "ratio": self.ratio,
            "goal": self.goal.to_dict(),
            "ledger": self.ledger.to_dict(),
            "candidates": self.candidates,
        }


def candidate_goals(plan, n_max, offset=DEFAULT_OFFSET):
    """Enumerate the goals placed just past the positions reached in a plan.

    For every position ``h`` reached on a path at the end of a motion (and
    for the origin), the goal at ``h + offset`` is a candidate if its
    distance lies in ``[1, n_max]``.

    Returns:
        The list of candidate goals, ordered by path and distance
    """
    extents = {path: {0.0} for path in range(plan.w)}
    for segment in plan:
        extents[segment.path].add(segment.to_pos)
    return [
        GoalPlacement(path, extent + offset)
        for path in range(plan.w)
        for extent in sorted(extents[path])
        if 1 <= extent + offset <= n_max
    ]


def worst_case_ratio_det(w, lam, n_max, offset=DEFAULT_OFFSET):
    """Determine the worst goal placement for the deterministic strategy.

    Args:
        w: The number of paths
        lam: The number of robots
        n_max: The largest admissible goal distance (>= 2)
        offset: The distance between a reached position and the goal
            (default: 1)

    Returns:
        The :class:`AdversaryResult`

    Raises:
        DomainError: if the arguments are out of range
    """
    check_path_count(w)
    check_robot_count(w, lam)
    check_positive("offset", offset)
    if not n_max >= 2:
        raise DomainError("n_max must be at least 2, got %r" % n_max)

    plan = det_multi_plan(w, lam, horizon_for("det_multi", w, lam, n_max))
    candidates = candidate_goals(plan, n_max, offset)
    logger.debug(
        "Examining %d candidate goals for w=%d, lam=%d, n_max=%r",
        len(candidates),
        w,
        lam,
        n_max,
    )

    best = None
    for goal in candidates:
        result = run(plan, goal)
        if best is None or result.ratio > best.ratio:
            best = result
    return AdversaryResult(
        w=w,
        lam=lam,
        n_max=n_max,
        offset=offset,
        ratio=best.ratio,
        goal=best.goal,
        ledger=best.ledger,
        candidates=len(candidates),
    )


def ratio_profile(
    strategy,
    w,
    lam,
    n_grid,
    trials=None,
    seed=None,
    offset=DEFAULT_OFFSET,
    workers=1,
    max_group_length=None,
):
    """Determine the competitive ratio of a strategy for a range of goal
    distances.

    For deterministic strategies (and the straight walk), the ratio for
    distance ``n`` is the worst case over all goals up to ``n``. For
    randomized strategies it is the Monte Carlo estimate of the expected
    ratio for a goal at distance ``n`` on path 0; by symmetry the path does
    not matter.

    Returns:
        A list of rows with keys ``w``, ``lambda``, ``n``, ``ratio``,
        ``ci_low``, ``ci_high`` and ``seed``, ordered by ``n``

    Raises:
        DomainError: if the strategy is unknown, the grid is empty or a
            randomized strategy is given without trials and seed
    """
    if strategy in ("det_single", "rand_single") and lam != 1:
        raise DomainError("Strategy %r requires a single robot" % strategy)
    if strategy in STRAIGHT and lam != w:
        raise DomainError("Strategy %r requires one robot per path" % strategy)
    n_grid = sorted(n_grid)
    if not n_grid:
        raise DomainError("The grid of goal distances must not be empty")
    rows = []
    for n in n_grid:
        if strategy in DETERMINISTIC or strategy in STRAIGHT:
            ratio = worst_case_ratio_det(w, lam, n, offset).ratio
            rows.append(_row(w, lam, n, ratio, ratio, ratio, None))
        elif strategy in RANDOMIZED:
            if trials is None or seed is None:
                raise DomainError(
                    "Randomized strategies require trials and seed"
                )
            estimate = expected_ratio_mc(
                w,
                lam,
                GoalPlacement(0, n),
                trials,
                seed,
                workers=workers,
                max_group_length=max_group_length,
            )
            rows.append(
                _row(
                    w,
                    lam,
                    n,
                    estimate.point,
                    estimate.ci_low,
                    estimate.ci_high,
                    seed,
                )
            )
        else:
            raise DomainError("Unknown strategy %r" % strategy)
    return rows


def _row(w, lam, n, ratio, ci_low, ci_high, seed: Optional[int]):
    return {
        "w": w,
        "lambda": lam,
        "n": n,
        "ratio": ratio,
        "ci_low": ci_low,
        "ci_high": ci_high,
        "seed": seed,
    }


def competitive_fit(strategy, w, lam, n_grid, **options):
    """Determine the empirical competitive ratio of a strategy as the largest
    ratio over a grid of goal distances.

    Accepts the same options as :func:`ratio_profile`.
    """
    rows = ratio_profile(strategy, w, lam, n_grid, **options)
    return max(row["ratio"] for row in rows)


def _admissible(strategy, w, lam):
    if strategy in ("det_single", "rand_single"):
        return lam == 1
    if strategy in STRAIGHT:
        return lam == w
    return lam <= w


def ratio_sweep(
    strategy,
    ws,
    lams,
    n_grid,
    trials=None,
    seed=None,
    offset=DEFAULT_OFFSET,
    workers=1,
    max_group_length=None,
):
    """Determine the ratio profiles for all combinations of numbers of paths
    and robots.

    Combinations with more robots than paths, and combinations the strategy
    is not defined for, are skipped. With more than one
    worker, the profiles of deterministic strategies are determined in
    parallel, while randomized strategies parallelize their trials.

    Returns:
        The rows of all profiles (see :func:`ratio_profile`), sorted by
        ``w``, ``lambda`` and ``n``
    """
    combinations = [
        (w, lam)
        for w, lam in itertools.product(sorted(set(ws)), sorted(set(lams)))
        if _admissible(strategy, w, lam)
    ]
    if not combinations:
        raise DomainError("No combination of paths and robots is admissible")
    options = dict(
        trials=trials,
        seed=seed,
        offset=offset,
        max_group_length=max_group_length,
    )

    rows = []
    if workers > 1 and strategy not in RANDOMIZED:
        logger.info(
            "Sweeping %d combinations on %d workers", len(combinations), workers
        )
        with concurrent.futures.ProcessPoolExecutor(workers) as executor:
            futures = [
                executor.submit(
                    ratio_profile, strategy, w, lam, n_grid, **options
                )
                for w, lam in combinations
            ]
            for future in futures:
                rows.extend(future.result())
    else:
        for w, lam in combinations:
            rows.extend(
                ratio_profile(
                    strategy, w, lam, n_grid, workers=workers, **options
                )
            )
    rows.sort(key=lambda row: (row["w"], row["lambda"], row["n"]))
    return rows
