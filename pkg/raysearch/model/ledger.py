"""
Cost accounting for executed traces.

The cost of an exploration is the total distance travelled by all robots
until the goal is found. :func:`truncate_at_goal` cuts a plan at the first
instant any robot reaches the goal and records the distances in a
:class:`CostLedger`.
"""
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Tuple

from raysearch.model.goals import GoalPlacement
from raysearch.model.trace import Trace


class HorizonExhaustedError(RuntimeError):
    """This exception is raised when a plan ends before its robots reach the
    goal."""


class Discovery(NamedTuple):
    """The event of a robot reaching the goal on segment ``segment_index``
    (index into the executed plan) at position ``position``."""

    segment_index: int
    position: float


@dataclass(frozen=True)
class CostLedger:
    """Per-robot and total distance travelled in a trace."""

    per_robot_distance: Tuple[float, ...]
    total: float
    discovery: Optional[Discovery] = None

    @classmethod
    def from_trace(cls, trace: Trace, discovery=None):
        """Create the ledger for the given trace.

        Args:
            trace: The trace to account for
            discovery: The discovery event, if any (default: ``None``)
        """
        lengths = [[] for _ in range(trace.lam)]
        for segment in trace.segments:
            lengths[segment.robot - 1].append(segment.length)
        per_robot = tuple(math.fsum(robot) for robot in lengths)
        return cls(
            per_robot_distance=per_robot,
            total=math.fsum(per_robot),
            discovery=discovery,
        )

    def to_dict(self):
        return {
            "per_robot_distance": list(self.per_robot_distance),
            "total": self.total,
            "discovery": (
                None if self.discovery is None else self.discovery._asdict()
            ),
        }

    @classmethod
    def from_dict(cls, data):
        discovery = data.get("discovery")
        return cls(
            per_robot_distance=tuple(
                float(d) for d in data["per_robot_distance"]
            ),
            total=float(data["total"]),
            discovery=(
                None
                if discovery is None
                else Discovery(
                    segment_index=int(discovery["segment_index"]),
                    position=float(discovery["position"]),
                )
            ),
        )


def _first_crossing(unit, goal: GoalPlacement):
    """Find the earliest crossing of the goal position in an execution unit.

    Returns:
        A tuple ``(fraction, index)`` giving the fraction of the unit executed
        at the time of the crossing and the index of the segment on which it
        occurs, or ``None`` if the goal is not reached in this unit.
    """
    crossings = [
        ((goal.distance - segment.from_pos) / segment.length, index)
        for index, segment in unit
        if segment.path == goal.path
        and segment.from_pos < goal.distance <= segment.to_pos
    ]
    if crossings:
        return min(crossings)
    return None


def truncate_at_goal(plan: Trace, goal: GoalPlacement):
    """Execute a plan until the goal is found.

    The goal is found at the first instant any robot on the goal path reaches
    the goal distance, which may be in the middle of a segment. Members of a
    parallel group are stopped at the same instant, each having completed the
    same fraction of its segment.

    Args:
        plan: The trace to execute
        goal: The goal placement

    Returns:
        A tuple ``(trace, ledger)`` giving the executed prefix of the plan and
        the ledger of the distances travelled

    Raises:
        DomainError: if the goal path does not exist in the plan
        HorizonExhaustedError: if the plan ends before the goal is found
    """
    goal.check_paths(plan.w)
    executed = []
    for unit in plan.units():
        crossing = _first_crossing(unit, goal)
        if crossing is None:
            executed.extend(segment for _, segment in unit)
            continue

        fraction, found_index = crossing
        for index, segment in unit:
            if index == found_index:
                stop = goal.distance
            else:
                stop = segment.from_pos + fraction * (
                    segment.to_pos - segment.from_pos
                )
            if stop != segment.from_pos:
                executed.append(segment._replace(to_pos=stop))

        trace = Trace(plan.w, plan.lam, tuple(executed))
        ledger = CostLedger.from_trace(
            trace,
            discovery=Discovery(
                segment_index=found_index, position=goal.distance
            ),
        )
        return trace, ledger
    raise HorizonExhaustedError("goal unreachable within horizon")
