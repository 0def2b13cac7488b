"""
Turn sequences and their ratio sequences.

A single robot searching ``w`` paths is described by its turn sequence
``(h_1, a_1), (h_2, a_2), ...``: in its ``i``-th excursion the robot searches
path ``a_i`` up to distance ``h_i`` and returns. It is a *w-sequence* if at
least ``w`` labels recur infinitely often. A *cyclic* sequence visits the
paths in the order ``1, 2, ..., w, 1, 2, ...`` and is given by its extents
``s_1, s_2, ...`` alone.

If the goal lies just past ``h_i`` on path ``a_i``, it is found in the next
excursion ``i'`` on that path, and the cost relative to ``h_i`` is
``1 + 2 H_i`` with

.. math::

    H_i = \\frac{h_1 + \\cdots + h_{i'-1}}{h_i}, \\qquad
    S_i = \\frac{s_1 + \\cdots + s_{i+w-1}}{s_i}.

Sorting the extents of a w-sequence gives a cyclic sequence whose ratios
``S_j`` are each dominated by a ratio ``H_{j*}`` of the original sequence
(:func:`witness_check`).

All sequences in this module are indexed starting from 1. Note that
:mod:`raysearch.analytic` indexes its sequences from ``s_0 = 1``.
"""
import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple, Tuple

import numpy as np

from raysearch.model import DomainError, check_path_count, check_positive

DEFAULT_WINDOW = 50
DEFAULT_LIMIT_TOL = 1e-9


class InsufficientHorizonError(RuntimeError):
    """This exception is raised when a finite prefix of a sequence is too
    short to decide a question about the sequence."""


@dataclass(frozen=True)
class WSequence:
    """A finite prefix ``(h_1, a_1), ..., (h_N, a_N)`` of a w-sequence.

    Raises:
        DomainError: if the extents are not positive, the labels are
            negative or the numbers of extents and labels differ
    """

    heights: Tuple[float, ...]
    labels: Tuple[int, ...]
    w: int

    def __post_init__(self):
        check_path_count(self.w)
        object.__setattr__(
            self, "heights", tuple(float(h) for h in self.heights)
        )
        object.__setattr__(self, "labels", tuple(int(a) for a in self.labels))
        if len(self.heights) != len(self.labels):
            raise DomainError("Every extent requires a label")
        if any(not h > 0 for h in self.heights):
            raise DomainError("All extents must be positive")
        if any(a < 0 for a in self.labels):
            raise DomainError("Labels must be non-negative")

    def __len__(self):
        return len(self.heights)

    def recurring_labels(self):
        """The set of labels appearing at least twice in the prefix"""
        labels, counts = np.unique(self.labels, return_counts=True)
        return set(int(a) for a in labels[counts >= 2])

    def next_occurrence(self):
        """Determine for each index ``i`` the smallest ``i' > i`` with
        ``a_i' = a_i``.

        Returns:
            A list with the (1-based) index ``i'`` for each ``i``, or
            ``None`` if the label does not recur in the prefix
        """
        following = [None] * len(self.labels)
        seen = {}
        for index in range(len(self.labels) - 1, -1, -1):
            label = self.labels[index]
            following[index] = seen.get(label)
            seen[label] = index + 1
        return following

    def to_dict(self):
        return {
            "schema": 1,
            "w": self.w,
            "h": list(self.heights),
            "a": list(self.labels),
        }

    @classmethod
    def from_dict(cls, data):
        return cls(heights=data["h"], labels=data["a"], w=int(data["w"]))


@dataclass(frozen=True)
class CyclicSequence:
    """A finite prefix ``s_1, ..., s_N`` of a cyclic w-sequence.

    Raises:
        DomainError: if any entry is not positive
    """

    values: Tuple[float, ...]
    w: int

    def __post_init__(self):
        check_path_count(self.w)
        object.__setattr__(self, "values", tuple(float(s) for s in self.values))
        if any(not s > 0 for s in self.values):
            raise DomainError("All entries must be positive")

    def __len__(self):
        return len(self.values)

    def to_dict(self):
        return {"schema": 1, "w": self.w, "s": list(self.values)}

    @classmethod
    def from_dict(cls, data):
        return cls(values=data["s"], w=int(data["w"]))


@dataclass(frozen=True)
class RatioTable:
    """Values of a ratio sequence at (1-based) indices.

    Attributes:
        indices
            The indices for which the ratio is defined within the prefix
        values
            The ratio values
        omitted
            The indices for which the ratio is not defined within the prefix
    """

    indices: Tuple[int, ...]
    values: Tuple[float, ...]
    omitted: Tuple[int, ...] = ()

    def items(self):
        """Iterate over the ``(index, value)`` pairs"""
        return zip(self.indices, self.values)

    def value(self, index):
        """The ratio at the given index.

        Raises:
            KeyError: if the ratio is not defined at that index
        """
        try:
            return self.values[self.indices.index(index)]
        except ValueError:
            raise KeyError(index) from None

    def to_dict(self):
        return {
            "schema": 1,
            "rows": [{"i": i, "value": v} for i, v in self.items()],
            "omitted": list(self.omitted),
        }


def _prefix_sums(values):
    """The prefix sums ``P[k] = v_1 + ... + v_k`` with ``P[0] = 0``"""
    return np.concatenate(([0.0], np.cumsum(values)))


def ratio_H(seq: WSequence):
    """Determine the ratios ``H_i`` of a w-sequence prefix.

    ``H_i`` is only defined if the label ``a_i`` recurs within the prefix;
    the other indices are listed as omitted.

    Raises:
        DomainError: if the sequence is empty
    """
    if not len(seq):
        raise DomainError("The sequence must not be empty")
    if len(seq.recurring_labels()) < seq.w:
        warnings.warn(
            "Fewer than %d labels recur in the prefix; it cannot be the "
            "prefix of a %d-sequence" % (seq.w, seq.w)
        )
    sums = _prefix_sums(seq.heights)
    indices, values, omitted = [], [], []
    for index, following in enumerate(seq.next_occurrence(), start=1):
        if following is None:
            omitted.append(index)
        else:
            indices.append(index)
            values.append(float(sums[following - 1] / seq.heights[index - 1]))
    return RatioTable(tuple(indices), tuple(values), tuple(omitted))


def ratio_S(seq: CyclicSequence):
    """Determine the ratios ``S_i`` of a cyclic sequence prefix for
    ``i = 1, ..., N - w + 1``.

    Raises:
        DomainError: if the prefix is shorter than ``w``
    """
    if len(seq) < seq.w:
        raise DomainError(
            "The prefix must contain at least w=%d entries" % seq.w
        )
    values = np.asarray(seq.values)
    sums = _prefix_sums(values)
    count = len(values) - seq.w + 1
    ratios = sums[seq.w : seq.w + count] / values[:count]
    return RatioTable(tuple(range(1, count + 1)), tuple(ratios.tolist()))


def cyclic_convert(seq: WSequence):
    """Sort the extents of a w-sequence into a cyclic sequence"""
    return CyclicSequence(tuple(sorted(seq.heights)), seq.w)


class Witness(NamedTuple):
    """An index ``j_star`` with ``S_j <= H_{j_star}``."""

    j: int
    j_star: int
    s_ratio: float
    h_ratio: float
    case: int


def witness_check(seq: WSequence, j):
    """Find an index ``j*`` with ``S_j <= H_{j*}``, where ``S`` is the ratio
    sequence of the sorted sequence.

    The witness is an index ``t >= j+w-1`` with ``h_t <= s_j`` if there is one
    (case 1). Otherwise it is the last occurrence ``j(k) <= j+w-2`` of some
    label with ``h_{j(k)} <= s_j`` whose next occurrence lies beyond
    ``j+w-1`` (case 2); the largest such index is chosen.

    The sorted sequence is the sorted prefix, so the result is exact for the
    prefix, although the prefix may not contain all small extents of the
    infinite sequence.

    Args:
        seq: The w-sequence prefix
        j: The (1-based) index of ``S_j``

    Returns:
        The :class:`Witness`

    Raises:
        DomainError: if ``j < 1``
        InsufficientHorizonError: if the prefix does not determine ``S_j``
            or a witness
    """
    if j < 1:
        raise DomainError("Indices start at 1, got %r" % j)
    w, count = seq.w, len(seq)
    last = j + w - 1
    if last > count:
        raise InsufficientHorizonError(
            "S_%d requires %d entries, the prefix has %d" % (j, last, count)
        )

    heights = seq.heights
    ordered = sorted(heights)
    s_j = ordered[j - 1]
    s_ratio = math.fsum(ordered[:last]) / s_j
    sums = _prefix_sums(heights)
    following = seq.next_occurrence()

    def h_ratio(index):
        return float(sums[following[index - 1] - 1] / heights[index - 1])

    small = [t for t in range(last, count + 1) if heights[t - 1] <= s_j]
    if small:
        for t in small:
            if following[t - 1] is not None:
                return Witness(j, t, s_ratio, h_ratio(t), 1)
        raise InsufficientHorizonError(
            "No candidate for S_%d recurs within the prefix" % j
        )

    last_occurrence = {}
    for index in range(1, last):
        last_occurrence[seq.labels[index - 1]] = index
    candidates = [
        index
        for index in last_occurrence.values()
        if heights[index - 1] <= s_j
        and following[index - 1] is not None
        and following[index - 1] > last
    ]
    if not candidates:
        raise InsufficientHorizonError(
            "The prefix does not determine a witness for S_%d" % j
        )
    j_star = max(candidates)
    return Witness(j, j_star, s_ratio, h_ratio(j_star), 2)


def fact1_bound(w):
    """The lower bound ``w^w / (w-1)^(w-1)`` on the limit superior of the
    ratios ``S_i`` of every cyclic w-sequence."""
    check_path_count(w)
    return w ** w / (w - 1) ** (w - 1)


def fact1_gap(seq: CyclicSequence, window=DEFAULT_WINDOW):
    """Compare the trailing maximum of the ratios ``S_i`` with
    :func:`fact1_bound`.

    The maximum over the last ``window`` ratios serves as a finite proxy for
    the limit superior.

    Returns:
        The difference of the trailing maximum and the bound

    Raises:
        DomainError: if the prefix has fewer than ``window + w`` entries
    """
    if window < 1:
        raise DomainError("The window must contain at least one entry")
    if len(seq) < window + seq.w:
        raise DomainError(
            "A window of %d requires at least %d entries"
            % (window, window + seq.w)
        )
    ratios = ratio_S(seq).values
    return max(ratios[-window:]) - fact1_bound(seq.w)


def geometric_s_limit(rate, w):
    """The limit ``r^w / (r - 1)`` of the ratios ``S_i`` of the geometric
    sequence ``s_i = r^(i-1)``.

    Raises:
        DomainError: if ``rate <= 1``
    """
    check_path_count(w)
    if not rate > 1:
        raise DomainError("The rate must exceed 1, got %r" % rate)
    return rate ** w / (rate - 1)


def s_limit_estimate(rate, w, tol=DEFAULT_LIMIT_TOL):
    """Estimate the limit of the ratios ``S_i`` of the geometric sequence
    ``s_i = r^(i-1)`` from a finite prefix.

    The ratio ``S_i`` differs from its limit by ``r^(1-i) / (r-1)``; the
    prefix is chosen long enough to make this at most ``tol``.

    Raises:
        DomainError: if ``rate <= 1`` or ``tol <= 0``
    """
    check_path_count(w)
    check_positive("tol", tol)
    if not rate > 1:
        raise DomainError("The rate must exceed 1, got %r" % rate)
    log_rate = math.log(rate)
    index = 1 + math.ceil(math.log(1 / (tol * (rate - 1))) / log_rate)
    index = max(index, 1)
    values = np.exp(np.arange(index + w - 1) * log_rate)
    return ratio_S(CyclicSequence(values, w)).values[index - 1]


def sequence_from_plan(plan, w=None):
    """Extract the turn sequence of a single-robot plan.

    Every excursion from the origin contributes its farthest position and
    its path.

    Args:
        plan: The single-robot plan (or trace)
        w: The number of paths of the sequence (default: the number of
            paths of the plan)

    Raises:
        DomainError: if the plan has more than one robot
    """
    if plan.lam != 1:
        raise DomainError("Turn sequences are defined for a single robot")
    heights, labels = [], []
    extent, path = 0.0, None
    for segment in plan:
        extent = max(extent, segment.to_pos)
        path = segment.path
        if segment.to_pos == 0 and extent > 0:
            heights.append(extent)
            labels.append(path)
            extent = 0.0
    if extent > 0:
        heights.append(extent)
        labels.append(path)
    return WSequence(tuple(heights), tuple(labels), plan.w if w is None else w)


def single_robot_ratio(seq: WSequence, window=DEFAULT_WINDOW):
    """Estimate the competitive ratio ``1 + 2 limsup H_i`` of a single robot
    following the turn sequence, using the maximum of the last ``window``
    defined ratios.

    Raises:
        DomainError: if no ratio is defined within the prefix
    """
    values = ratio_H(seq).values
    if not values:
        raise DomainError("No ratio is defined within the prefix")
    return 1 + 2 * max(values[-window:])
