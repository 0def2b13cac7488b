"""
Robots move on ``w`` paths that meet at a common origin. A motion of a robot
is described by a :class:`Segment`, moving the robot along one path from one
position to another. A :class:`Trace` is an ordered list of segments and
describes how a team of robots explores the paths.

Segments with the same ``parallel_group`` tag that follow each other
immediately in a trace are executed simultaneously. Each member robot of such
a group moves at constant speed, and all members complete their segment at
the same instant. Segments without a tag are executed one after the other.

Robots start at the origin, and they may only change paths at the origin.
Traces violating these rules are rejected on construction.
"""
import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import NamedTuple, Optional, Tuple

from raysearch.model.domain import (
    DomainError,
    check_path_count,
    check_robot_count,
)

POSITION_RTOL = 1e-12
POSITION_ATOL = 1e-12


class InvalidTraceError(DomainError):
    """This exception is raised when a trace violates the motion rules, e.g.
    a robot jumping between positions or changing paths away from the
    origin."""


class Segment(NamedTuple):
    """A single motion of robot ``robot`` on path ``path`` from position
    ``from_pos`` to position ``to_pos``."""

    robot: int
    path: int
    from_pos: float
    to_pos: float
    parallel_group: Optional[int] = None

    @property
    def length(self):
        """The distance travelled on this segment"""
        return abs(self.to_pos - self.from_pos)

    @property
    def is_forward(self):
        """Flag indicating whether the segment moves away from the origin"""
        return self.to_pos > self.from_pos

    def to_dict(self):
        return {
            "robot": self.robot,
            "path": self.path,
            "from_pos": self.from_pos,
            "to_pos": self.to_pos,
            "parallel_group": self.parallel_group,
        }

    @classmethod
    def from_dict(cls, data):
        group = data.get("parallel_group")
        return cls(
            robot=int(data["robot"]),
            path=int(data["path"]),
            from_pos=float(data["from_pos"]),
            to_pos=float(data["to_pos"]),
            parallel_group=None if group is None else int(group),
        )


def _same_position(first, second):
    return math.isclose(
        first, second, rel_tol=POSITION_RTOL, abs_tol=POSITION_ATOL
    )


@dataclass(frozen=True)
class Trace(Sequence):
    """An ordered list of segments executed by ``lam`` robots on ``w``
    paths.

    A trace implements the sequence protocol over its segments.

    Raises:
        DomainError: if ``w`` or ``lam`` are out of range
        InvalidTraceError: if the segments violate the motion rules
    """

    w: int
    lam: int
    segments: Tuple[Segment, ...] = ()

    def __post_init__(self):
        check_path_count(self.w)
        check_robot_count(self.w, self.lam)
        object.__setattr__(self, "segments", tuple(self.segments))
        self._validate()

    def _validate(self):
        # Current (path, position) of each robot
        locations = {}
        closed_groups = set()
        current_group = None
        group_members = set()
        for index, segment in enumerate(self.segments):
            if not 1 <= segment.robot <= self.lam:
                raise InvalidTraceError(
                    "Segment %d: robot %r out of range" % (index, segment.robot)
                )
            if not 0 <= segment.path < self.w:
                raise InvalidTraceError(
                    "Segment %d: path %r out of range" % (index, segment.path)
                )
            if not (
                math.isfinite(segment.from_pos)
                and math.isfinite(segment.to_pos)
                and segment.from_pos >= 0
                and segment.to_pos >= 0
            ):
                raise InvalidTraceError(
                    "Segment %d: positions must be finite and non-negative"
                    % index
                )

            # Parallel groups must be contiguous and move each robot once
            if segment.parallel_group != current_group:
                if current_group is not None:
                    closed_groups.add(current_group)
                if segment.parallel_group in closed_groups:
                    raise InvalidTraceError(
                        "Segment %d: parallel group %r is not contiguous"
                        % (index, segment.parallel_group)
                    )
                current_group = segment.parallel_group
                group_members = set()
            if current_group is not None:
                if segment.robot in group_members:
                    raise InvalidTraceError(
                        "Segment %d: robot %d moves twice in group %r"
                        % (index, segment.robot, current_group)
                    )
                group_members.add(segment.robot)

            path, position = locations.get(segment.robot, (None, 0.0))
            if not _same_position(position, segment.from_pos):
                raise InvalidTraceError(
                    "Segment %d: robot %d starts at %r but stands at %r"
                    % (index, segment.robot, segment.from_pos, position)
                )
            if path is not None and path != segment.path and position != 0:
                raise InvalidTraceError(
                    "Segment %d: robot %d changes from path %d to path %d "
                    "away from the origin"
                    % (index, segment.robot, path, segment.path)
                )
            locations[segment.robot] = (segment.path, segment.to_pos)

    def __getitem__(self, key):
        return self.segments[key]

    def __len__(self):
        return len(self.segments)

    def __iter__(self):
        return iter(self.segments)

    def units(self):
        """Iterate over the execution units of this trace.

        An execution unit is either a single untagged segment or a maximal run
        of consecutive segments sharing the same parallel group tag.

        Returns:
            A generator yielding lists of ``(index, segment)`` tuples
        """
        unit = []
        for index, segment in enumerate(self.segments):
            if unit and (
                segment.parallel_group is None
                or segment.parallel_group != unit[-1][1].parallel_group
            ):
                yield unit
                unit = []
            unit.append((index, segment))
        if unit:
            yield unit

    def concat(self, other):
        """Create the trace executing this trace followed by ``other``.

        Raises:
            InvalidTraceError: if the concatenation violates the motion rules
        """
        if (self.w, self.lam) != (other.w, other.lam):
            raise DomainError("Traces must share the number of paths/robots")
        return Trace(self.w, self.lam, self.segments + other.segments)

    def to_dict(self):
        return {
            "w": self.w,
            "lambda": self.lam,
            "segments": [segment.to_dict() for segment in self.segments],
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            w=int(data["w"]),
            lam=int(data["lambda"]),
            segments=tuple(Segment.from_dict(s) for s in data["segments"]),
        )


def total_cost(trace: Trace):
    """Determine the total distance travelled by all robots in the trace."""

    return math.fsum(segment.length for segment in trace.segments)


def searched_extent(trace: Trace, path):
    """Determine the farthest position reached on the given path.

    Args:
        trace: The trace to examine
        path: The index of the path

    Returns:
        The maximum position any robot reached on the path, or 0 if the path
        was never visited

    Raises:
        DomainError: if the path does not exist
    """
    if not 0 <= path < trace.w:
        raise DomainError(
            "Path %r does not exist for %d paths" % (path, trace.w)
        )
    return max(
        (
            max(segment.from_pos, segment.to_pos)
            for segment in trace.segments
            if segment.path == path
        ),
        default=0.0,
    )
