"""
Configuration of command-line runs.

A :class:`RunConfig` collects the parameters of a single run and checks
them against the preconditions of the operations before anything is
computed.
"""
import os

from raysearch.analytic import DEFAULT_FORMULA_TOL, DEFAULT_OPTIMIZER_TOL
from raysearch.model import DomainError, check_path_count, check_robot_count
from raysearch.strategies import RANDOMIZED_STRATEGIES, STRATEGIES
from raysearch.strategies.random import SEED_LIMIT

WORKERS_ENVIRONMENT_VARIABLE = "RAYSEARCH_WORKERS"
OUTPUT_FORMATS = ("json", "csv")


def default_workers():
    """The number of worker processes, taken from the environment variable
    ``RAYSEARCH_WORKERS`` (default: 1).

    Raises:
        DomainError: if the variable is set, but not a positive integer
    """
    value = os.environ.get(WORKERS_ENVIRONMENT_VARIABLE)
    if value is None:
        return 1
    try:
        workers = int(value)
    except ValueError:
        workers = 0
    if workers < 1:
        raise DomainError(
            "%s must be a positive integer, got %r"
            % (WORKERS_ENVIRONMENT_VARIABLE, value)
        )
    return workers


class RunConfig:
    """Represents the parameters of a run.

    Attributes:
        command
            The name of the subcommand
        w
            The number of paths
        lam
            The number of robots
        n
            The goal distance
        path
            The goal path
        n_max
            The largest goal distance considered by the adversary
        trials
            The number of Monte Carlo trials
        seed
            The master seed for all random draws
        horizon
            The number of stages of generated plans. If ``None``, the horizon
            is sized from the goal distance.
        window
            The number of trailing ratios used as a proxy for the limit
            superior
        output_format
            ``json`` or ``csv``
        tol
            The tolerance of the optimizer determining ``r_w``
        formula_tol
            The truncation tolerance of series evaluation
        epsilon
            The exponent offset of the functional ``G_w``
        rate
            The growth rate of a geometric sequence
        offset
            The distance between a turning point and the adversarial goal
        strategy
            The name of the strategy
        workers
            The number of worker processes. The default is taken from the
            environment variable ``RAYSEARCH_WORKERS``.
        max_group_length
            The longest motion of the last robot within one parallel group
            of the randomized multi-robot strategy
    """

    def __init__(self, command=None, **parameters):
        self.command = command
        self.w = None
        self.lam = None
        self.n = None
        self.path = 0
        self.n_max = None
        self.trials = None
        self.seed = None
        self.horizon = None
        self.window = 50
        self.output_format = "json"
        self.tol = DEFAULT_OPTIMIZER_TOL
        self.formula_tol = DEFAULT_FORMULA_TOL
        self.epsilon = None
        self.rate = None
        self.offset = 1.0
        self.strategy = None
        self.workers = None
        self.max_group_length = None

        for name, value in parameters.items():
            if not hasattr(self, name):
                raise DomainError("Unknown parameter %r" % name)
            if value is not None:
                setattr(self, name, value)
        if self.workers is None:
            self.workers = default_workers()

    @classmethod
    def from_namespace(cls, namespace):
        """Create the configuration from an :class:`argparse.Namespace`,
        ignoring attributes that are not configuration parameters."""
        config = cls()
        parameters = {
            name: value
            for name, value in vars(namespace).items()
            if hasattr(config, name)
        }
        return cls(**parameters)

    @property
    def randomized(self):
        """Flag indicating whether the run draws random numbers"""
        return self.command == "mc" or self.strategy in RANDOMIZED_STRATEGIES

    def validate(self):
        """Check the parameters.

        Raises:
            DomainError: if a parameter is out of range
        """
        if self.w is not None:
            check_path_count(self.w)
            if self.lam is not None:
                check_robot_count(self.w, self.lam)
            if not 0 <= self.path < self.w:
                raise DomainError(
                    "Path %r does not exist for %d paths" % (self.path, self.w)
                )
        if self.n is not None and not self.n >= 1:
            raise DomainError("The goal distance must be at least 1")
        if self.n_max is not None and not self.n_max >= 2:
            raise DomainError("n_max must be at least 2")
        if self.trials is not None and self.trials < 1:
            raise DomainError("At least one trial is required")
        if self.randomized and self.seed is None:
            raise DomainError("Randomized runs require a seed")
        if self.seed is not None and not 0 <= self.seed < SEED_LIMIT:
            raise DomainError("The seed must be a 64-bit unsigned integer")
        if self.horizon is not None and self.horizon < 1:
            raise DomainError("The horizon must be at least 1")
        if self.window < 1:
            raise DomainError("The window must be at least 1")
        if self.output_format not in OUTPUT_FORMATS:
            raise DomainError("Unknown output format %r" % self.output_format)
        for name in ("tol", "formula_tol", "offset"):
            if not getattr(self, name) > 0:
                raise DomainError("%s must be positive" % name)
        if self.epsilon is not None and not self.epsilon > 0:
            raise DomainError("epsilon must be positive")
        if self.strategy is not None and self.strategy not in STRATEGIES:
            raise DomainError("Unknown strategy %r" % self.strategy)
        if self.workers < 1:
            raise DomainError("At least one worker is required")
        if self.max_group_length is not None and not self.max_group_length > 0:
            raise DomainError("max_group_length must be positive")
        return self
