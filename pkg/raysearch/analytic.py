"""
Closed-form competitive ratios for searching ``w`` paths with ``lam`` robots.

The deterministic strategies turn at the radii given by :func:`radius_f`, and
their competitive ratio is :func:`det_ratio`. The randomized strategies grow
their radii by the factor ``r_w`` minimizing the growth objective

.. math::

    \\varphi_w(r) = \\frac{r^w - 1}{(r - 1) \\ln r}, \\qquad r > 1,

which is found by :func:`solve_rw`. The minimum value ``C_w`` determines the
randomized single-robot ratio :func:`rand_single_bound`, and
:func:`rand_multi_bound` combines it with the straight-walking robots of the
multi-robot strategy.

The lower-bound functional ``G_w`` is evaluated by :func:`g_functional` for
sequences that are eventually geometric. Note that sequences in this module
are indexed starting with ``s_0 = 1``, while :mod:`raysearch.sequences` uses
one-based indexing.
"""
import functools
import math
import sys
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy import optimize as opt

from raysearch.model import DomainError, check_path_count, check_robot_count

DEFAULT_FORMULA_TOL = 1e-9
DEFAULT_OPTIMIZER_TOL = 1e-6

# Initial bracket for the minimizer of the growth objective
BRACKET_LOWER = 1 + 1e-9
BRACKET_MIDDLE = 2.0
BRACKET_UPPER = 4.0

MAX_EXPLICIT_TERMS = 10000
MAX_LOG_VALUE = 600.0

# Natural logarithm of the largest finite double
LOG_FLOAT_MAX = math.log(sys.float_info.max)


class NonConvergentSeriesError(DomainError):
    """This exception is raised when the series defining ``G_w`` does not
    converge for the given sequence."""


def radius_f(w, i):
    """The turning radius of stage ``i`` of the deterministic single-robot
    strategy on ``w`` paths.

    Args:
        w: The number of paths
        i: The stage index

    Returns:
        ``(w/(w-1))**i`` for ``i >= 0`` and 0 for negative ``i``

    Raises:
        DomainError: if ``w < 2`` or the radius is not a finite floating
            point number (``i * log(w/(w-1)) >= log(sys.float_info.max)``)
    """
    check_path_count(w)
    if i < 0:
        return 0.0
    base = w / (w - 1)
    if i > max_exponent(base):
        raise DomainError(
            "Radius %d on %d paths is not a finite floating point number"
            % (i, w)
        )
    return base ** i


def max_exponent(rate, scale=1.0):
    """The largest integer ``k`` for which ``scale * rate**k`` is a finite
    floating point number, i.e. ``k * log(rate) + log(scale)`` stays below
    ``log(sys.float_info.max)``.

    Raises:
        DomainError: if ``rate <= 1`` or ``scale <= 0``
    """
    if not rate > 1:
        raise DomainError("The rate must exceed 1, got %r" % rate)
    if not scale > 0:
        raise DomainError("The scale must be positive, got %r" % scale)
    return math.ceil((LOG_FLOAT_MAX - math.log(scale)) / math.log(rate)) - 1


def det_ratio(w, lam):
    """The optimal deterministic competitive ratio for ``w`` paths and ``lam``
    robots.

    For ``lam < w`` this is ``lam + 2 w'^w' / (w'-1)^(w'-1)`` with
    ``w' = w - lam + 1``. With one robot per path every robot simply walks
    its own path, so the ratio is ``w``.

    Raises:
        DomainError: if ``w < 2`` or ``lam`` is not in ``[1, w]``
    """
    check_path_count(w)
    check_robot_count(w, lam)
    if lam == w:
        return float(w)
    reduced = w - lam + 1
    return lam + 2 * reduced ** reduced / (reduced - 1) ** (reduced - 1)


def growth_objective(r, w):
    """Evaluate ``(r^w - 1) / ((r - 1) ln r)``.

    The evaluation uses ``log1p``/``expm1`` to stay accurate close to
    ``r = 1``.

    Args:
        r: The growth rate (scalar or array, all entries > 1)
        w: The number of paths

    Raises:
        DomainError: if any rate is not greater than 1
    """
    r = np.asarray(r, dtype=float)
    if np.any(~(r > 1)):
        raise DomainError("The growth rate must exceed 1")
    log_r = np.log1p(r - 1)
    value = np.expm1(w * log_r) / ((r - 1) * log_r)
    if value.ndim == 0:
        return float(value)
    return value


@functools.lru_cache(maxsize=None)
def solve_rw(w, tol=DEFAULT_OPTIMIZER_TOL):
    """Determine the growth rate ``r_w`` of the randomized strategy.

    The rate is the unique minimizer of :func:`growth_objective` over
    ``r > 1``. The bracket ``(1 + 1e-9, 2, 4)`` is shifted upwards by
    doubling until the objective increases at the right edge, and the
    bracket is then reduced by golden-section search.

    Args:
        w: The number of paths
        tol: The absolute tolerance for the minimizer (default: 1e-6)

    Returns:
        The minimizer ``r_w``

    Raises:
        DomainError: if ``w < 2`` or ``tol <= 0``
    """
    check_path_count(w)
    if not tol > 0:
        raise DomainError("The tolerance must be positive, got %r" % tol)

    objective = functools.partial(_scalar_objective, w=w)
    lower, middle, upper = BRACKET_LOWER, BRACKET_MIDDLE, BRACKET_UPPER
    while objective(upper) <= objective(middle):
        lower, middle, upper = middle, upper, 2 * upper

    result = opt.minimize_scalar(
        objective,
        bracket=(lower, middle, upper),
        method="golden",
        tol=tol / (2 * upper),
    )
    return float(result.x)


def _scalar_objective(r, w):
    return growth_objective(r, w)


def c_w(w, tol=DEFAULT_OPTIMIZER_TOL):
    """The minimum value ``C_w`` of the growth objective.

    Raises:
        DomainError: if ``w < 2``
    """
    return growth_objective(solve_rw(w, tol), w)


def rand_single_bound(w, tol=DEFAULT_OPTIMIZER_TOL):
    """The competitive ratio ``1 + (2/w) C_w`` of the randomized single-robot
    strategy.

    A single path is simply walked, so the ratio for ``w = 1`` is 1.

    Raises:
        DomainError: if ``w < 1``
    """
    check_path_count(w, minimum=1)
    if w == 1:
        return 1.0
    return 1 + 2 / w * c_w(w, tol)


def speed_v(w, lam, tol=DEFAULT_OPTIMIZER_TOL):
    """The distance travelled by the last robot per unit distance of each of
    the straight-walking robots in the randomized multi-robot strategy.

    Raises:
        DomainError: if ``lam`` is not in ``[1, w]``
    """
    check_path_count(w, minimum=1)
    check_robot_count(w, lam)
    reduced = w - lam + 1
    return math.sqrt(reduced * rand_single_bound(reduced, tol))


def rand_multi_bound(w, lam, tol=DEFAULT_OPTIMIZER_TOL):
    """The competitive ratio of the randomized multi-robot strategy,
    ``((lam - 1) + sqrt(w' R(w'))) ** 2 / w`` with ``w' = w - lam + 1``.

    Raises:
        DomainError: if ``w < 2`` or ``lam`` is not in ``[1, w]``
    """
    check_path_count(w)
    check_robot_count(w, lam)
    return ((lam - 1) + speed_v(w, lam, tol)) ** 2 / w


def speed_objective(w, lam, v, tol=DEFAULT_OPTIMIZER_TOL):
    """The expected ratio of the randomized multi-robot strategy as a function
    of the speed parameter ``v``.

    With probability ``(lam-1)/w`` the goal lies on a path of a
    straight-walking robot and costs ``(lam-1) + v`` per unit distance,
    otherwise the last robot finds it with ratio ``R(w')`` while the others
    travel ``1/v`` of its distance each.

    Raises:
        DomainError: if ``v <= 0`` or the counts are out of range
    """
    check_path_count(w)
    check_robot_count(w, lam)
    if not v > 0:
        raise DomainError("The speed parameter must be positive")
    reduced = w - lam + 1
    return (lam - 1) / w * ((lam - 1) + v) + reduced / w * (
        (lam - 1) / v + 1
    ) * rand_single_bound(reduced, tol)


def multi_bound_margin(w, lam, tol=DEFAULT_OPTIMIZER_TOL):
    """The advantage of randomization, ``det_ratio - rand_multi_bound``.

    The margin is positive whenever ``lam < w`` and zero for ``lam = w``.
    """
    return det_ratio(w, lam) - rand_multi_bound(w, lam, tol)


@dataclass(frozen=True)
class AnalyticReport:
    """Closed-form quantities for ``w`` paths and ``lam`` robots."""

    w: int
    lam: int
    det_ratio: float
    r_w_prime: float
    rand_single: float
    rand_multi_bound: float
    speed_v: float
    c_w: float

    def to_dict(self):
        return {
            "schema": 1,
            "w": self.w,
            "lambda": self.lam,
            "det_ratio": self.det_ratio,
            "r_w_prime": self.r_w_prime,
            "rand_single": self.rand_single,
            "rand_multi_bound": self.rand_multi_bound,
            "speed_v": self.speed_v,
            "c_w": self.c_w,
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            w=int(data["w"]),
            lam=int(data["lambda"]),
            det_ratio=float(data["det_ratio"]),
            r_w_prime=(
                None if data["r_w_prime"] is None else float(data["r_w_prime"])
            ),
            rand_single=float(data["rand_single"]),
            rand_multi_bound=float(data["rand_multi_bound"]),
            speed_v=float(data["speed_v"]),
            c_w=float(data["c_w"]),
        )


def analytic_report(w, lam, tol=DEFAULT_OPTIMIZER_TOL):
    """Collect the closed-form quantities for ``w`` paths and ``lam`` robots.

    The rate ``r_{w'}`` is undefined for a single remaining path
    (``lam = w``) and is reported as ``None`` in that case.
    """
    check_path_count(w)
    check_robot_count(w, lam)
    reduced = w - lam + 1
    return AnalyticReport(
        w=w,
        lam=lam,
        det_ratio=det_ratio(w, lam),
        r_w_prime=solve_rw(reduced, tol) if reduced >= 2 else None,
        rand_single=rand_single_bound(reduced, tol),
        rand_multi_bound=rand_multi_bound(w, lam, tol),
        speed_v=speed_v(w, lam, tol),
        c_w=c_w(w, tol),
    )


@dataclass(frozen=True)
class GeometricSequenceSpec:
    """A sequence ``s_0 = 1, s_1, ...`` of turning radii on ``w`` paths that
    is geometric with rate ``rate`` after an explicit prefix.

    Without a prefix, ``s_i = rate**i``. With a prefix ``(s_0, ..., s_{k-1})``
    the tail continues ``s_i = s_{k-1} * rate**(i - k + 1)`` for ``i >= k``.
    """

    w: int
    rate: float
    prefix: Tuple[float, ...] = ()

    def __post_init__(self):
        check_path_count(self.w)
        object.__setattr__(
            self, "prefix", tuple(float(s) for s in self.prefix)
        )
        if not self.rate > 1:
            raise NonConvergentSeriesError(
                "The tail rate must exceed 1, got %r" % self.rate
            )
        if self.prefix:
            if self.prefix[0] != 1:
                raise DomainError("The sequence must start with s_0 = 1")
            if any(not s > 0 for s in self.prefix):
                raise DomainError("The sequence must be positive")
            values = self.values(len(self.prefix) + self.w)
            for i in range(len(self.prefix)):
                if not values[i + self.w] > values[i]:
                    raise DomainError(
                        "The sequence violates s_{i+w} > s_i at i=%d" % i
                    )

    @property
    def tail_start(self):
        """Index of the first entry of the geometric tail"""
        return len(self.prefix)

    @property
    def tail_scale(self):
        """The factor ``c`` with ``s_i = c * rate**i`` in the tail"""
        if not self.prefix:
            return 1.0
        return self.prefix[-1] / self.rate ** (len(self.prefix) - 1)

    def values(self, count):
        """The first ``count`` entries ``s_0, ..., s_{count-1}``"""
        indices = np.arange(len(self.prefix), count)
        tail = self.tail_scale * self.rate ** indices.astype(float)
        return np.concatenate((np.asarray(self.prefix[:count]), tail))


def _window_sums(values, w):
    """The sums ``s_i + ... + s_{i+w-1}`` for all complete windows"""
    cumulative = np.concatenate(([0.0], np.cumsum(values)))
    return cumulative[w:] - cumulative[:-w]


def _geometric_remainder(epsilon, spec: GeometricSequenceSpec, start):
    """The closed form of ``eps * sum_{i >= start}`` of the series terms in
    the geometric tail."""
    rate, w = spec.rate, spec.w
    window_factor = np.expm1(w * math.log(rate)) / (rate - 1)
    tail = -np.expm1(-epsilon * math.log(rate))
    return (
        epsilon
        * spec.tail_scale ** (-epsilon)
        * window_factor
        * rate ** (-start * epsilon)
        / tail
    )


def g_functional(
    epsilon, seq: GeometricSequenceSpec, trunc_tol=DEFAULT_FORMULA_TOL
):
    """Evaluate the series

    .. math::

        G_w(\\varepsilon, s) = \\varepsilon \\sum_{i=0}^{\\infty}
        \\frac{s_i + \\cdots + s_{i+w-1}}{s_i^{1+\\varepsilon}}.

    The terms of the prefix are summed explicitly. The geometric tail is
    summed explicitly as long as its closed-form remainder exceeds
    ``trunc_tol``, up to :data:`MAX_EXPLICIT_TERMS` terms, and the remainder
    is added in closed form.

    Args:
        epsilon: The exponent offset (> 0)
        seq: The sequence specification
        trunc_tol: Tolerance for the remainder of the explicit summation

    Raises:
        DomainError: if ``epsilon <= 0``
    """
    if not epsilon > 0:
        raise DomainError("epsilon must be positive, got %r" % epsilon)

    # Number of tail terms after which the remainder drops below trunc_tol
    log_rate = math.log(seq.rate)
    head = _geometric_remainder(epsilon, seq, seq.tail_start)
    needed = 0
    if head > trunc_tol:
        needed = math.ceil(math.log(head / trunc_tol) / (epsilon * log_rate))
    # Keep s_i**(1+eps) representable
    representable = int(MAX_LOG_VALUE / ((1 + epsilon) * log_rate)) - seq.w
    explicit = seq.tail_start + max(
        0, min(needed, MAX_EXPLICIT_TERMS, representable - seq.tail_start)
    )

    values = seq.values(explicit + seq.w - 1)
    windows = _window_sums(values, seq.w)
    terms = windows / values[:explicit] ** (1 + epsilon)
    return float(
        epsilon * math.fsum(terms)
        + _geometric_remainder(epsilon, seq, explicit)
    )


def finite_sum_bound(k, epsilon, seq: GeometricSequenceSpec):
    """The finite lower bound

    .. math::

        H(k, s) = \\frac{-\\varepsilon + \\sum_{i=0}^{k-1}
        (s_i + \\cdots + s_{i+w-1}) / s_i^{1+\\varepsilon}}{\\ln s_k}

    on ``G_w``, defined for ``s_k > 1``.

    Raises:
        DomainError: if ``s_k <= 1`` or ``epsilon <= 0``
    """
    if not epsilon > 0:
        raise DomainError("epsilon must be positive, got %r" % epsilon)
    values = seq.values(k + seq.w)
    if not values[k] > 1:
        raise DomainError("The bound requires s_k > 1")
    windows = _window_sums(values, seq.w)[:k]
    terms = windows / values[:k] ** (1 + epsilon)
    return (math.fsum(terms) - epsilon) / math.log(values[k])


def amgm_chain(epsilon, xs):
    """Evaluate both sides of the chained mean inequality

    .. math::

        \\sum_{k=1}^{m} \\frac{x_k}{x_{k-1}^{1+\\varepsilon}} \\geq
        \\frac{m}{(1+\\varepsilon)^m}
        \\left(\\frac{x_m^{(1+\\varepsilon)^{-m}}}{x_0}\\right)^{E}, \\qquad
        E = \\frac{\\varepsilon (1+\\varepsilon)^m}{(1+\\varepsilon)^m - 1}.

    Args:
        epsilon: The exponent offset (> 0)
        xs: The values ``x_0, ..., x_m`` (all > 0, ``m >= 1``)

    Returns:
        A tuple ``(lhs, rhs)``

    Raises:
        DomainError: if any input is not positive or fewer than two values
            are given
    """
    xs = np.asarray(xs, dtype=float)
    if not epsilon > 0:
        raise DomainError("epsilon must be positive, got %r" % epsilon)
    if xs.ndim != 1 or xs.size < 2:
        raise DomainError("At least two values x_0, x_1 are required")
    if np.any(~(xs > 0)):
        raise DomainError("All values must be positive")

    m = xs.size - 1
    growth = (1 + epsilon) ** m
    exponent = epsilon * growth / (growth - 1)
    lhs = math.fsum(xs[1:] / xs[:-1] ** (1 + epsilon))
    log_base = math.log(xs[-1]) / growth - math.log(xs[0])
    rhs = m / growth * math.exp(exponent * log_base)
    return lhs, rhs
