"""
Monte Carlo estimation of expected competitive ratios.

Trial ``i`` of an estimate with master seed ``seed`` draws its randomness from
``RandomSource(seed).spawn(i)``, so a trial gives the same ratio regardless
of the number of trials, the number of workers and the order of execution.
The ratios are collected in trial order and reduced by pairwise summation.
"""
import concurrent.futures
import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import stats

from raysearch.model import DomainError, GoalPlacement
from raysearch.simulation import Simulator
from raysearch.strategies import RandomSource

CONFIDENCE_LEVEL = 0.95
CHUNKS_PER_WORKER = 4

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RatioEstimate:
    """An estimate of an expected ratio with its normal-approximation
    confidence interval."""

    point: float
    ci_low: float
    ci_high: float
    trials: int
    seed: int

    def to_dict(self):
        return {
            "schema": 1,
            "point": self.point,
            "ci_low": self.ci_low,
            "ci_high": self.ci_high,
            "trials": self.trials,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            point=float(data["point"]),
            ci_low=float(data["ci_low"]),
            ci_high=float(data["ci_high"]),
            trials=int(data["trials"]),
            seed=int(data["seed"]),
        )


def trial_ratios(w, lam, goal, seed, start, stop, max_group_length=None):
    """Run the trials ``start, ..., stop-1`` of the randomized multi-robot
    strategy.

    Returns:
        An array of the ratios in trial order
    """
    source = RandomSource(seed)
    ratios = np.empty(stop - start)
    for offset, trial in enumerate(range(start, stop)):
        simulator = Simulator(
            "rand_multi",
            w,
            lam,
            rng=source.spawn(trial),
            max_group_length=max_group_length,
        )
        ratios[offset] = simulator.run(goal).ratio
    return ratios


def expected_ratio_mc(
    w,
    lam,
    goal: GoalPlacement,
    trials,
    seed,
    workers=1,
    max_group_length=None,
):
    """Estimate the expected ratio of the randomized multi-robot strategy for
    a fixed goal.

    Args:
        w: The number of paths
        lam: The number of robots
        goal: The goal placement
        trials: The number of trials (>= 1)
        seed: The master seed (64-bit unsigned integer)
        workers: The number of worker processes (default: 1, i.e. run in
            the calling process)
        max_group_length: Passed on to the plan generator

    Returns:
        The :class:`RatioEstimate`

    Raises:
        DomainError: if ``trials < 1``, ``workers < 1`` or the instance is
            invalid
    """
    if trials < 1:
        raise DomainError("At least one trial is required, got %r" % trials)
    if workers < 1:
        raise DomainError("At least one worker is required, got %r" % workers)
    goal.check_paths(w)
    # Validate the seed before spawning any workers
    RandomSource(seed)

    if workers == 1:
        ratios = trial_ratios(w, lam, goal, seed, 0, trials, max_group_length)
    else:
        chunk = math.ceil(trials / (workers * CHUNKS_PER_WORKER))
        bounds = [(k, min(k + chunk, trials)) for k in range(0, trials, chunk)]
        logger.info(
            "Running %d trials in %d chunks on %d workers",
            trials,
            len(bounds),
            workers,
        )
        with concurrent.futures.ProcessPoolExecutor(workers) as executor:
            futures = [
                executor.submit(
                    trial_ratios,
                    w,
                    lam,
                    goal,
                    seed,
                    start,
                    stop,
                    max_group_length,
                )
                for start, stop in bounds
            ]
            ratios = np.concatenate([future.result() for future in futures])

    point = float(np.sum(ratios) / trials)
    if trials > 1:
        deviation = float(np.std(ratios, ddof=1))
    else:
        deviation = 0.0
    quantile = stats.norm.ppf(0.5 + CONFIDENCE_LEVEL / 2)
    half_width = quantile * deviation / math.sqrt(trials)
    return RatioEstimate(
        point=point,
        ci_low=point - half_width,
        ci_high=point + half_width,
        trials=trials,
        seed=seed,
    )
