"""
Export of search plans as schedules of basic algorithms.

Searching ``w`` paths with ``lam`` robots corresponds to running ``w`` basic
algorithms, of which at most one terminates, on ``lam`` memory slots. Path
``a`` is identified with algorithm ``a`` and robot ``k`` with slot ``k``;
moving away from the origin on a path corresponds to running the algorithm.
Moving back towards the origin has no counterpart in computation.

A slot continues (*resumes*) an algorithm if it was the last one run in that
slot and its progress equals the starting position of the motion. Starting
in an unused slot also counts as resuming. In any other case the algorithm is
restarted from scratch (*fresh replay*) and run up to the target position,
repeating the progress already made on it.

Robot distance and computation steps are reported separately; they are not
claimed to be equal.
"""
import math
from dataclasses import dataclass
from typing import NamedTuple, Tuple

from raysearch.model import total_cost

RESUME = "resume"
FRESH_REPLAY = "fresh-replay"


class ScheduleEvent(NamedTuple):
    """Run of algorithm ``basic_algorithm`` in slot ``slot`` for
    ``run_amount`` steps, of which the first ``replay_amount`` repeat progress
    already made on that algorithm."""

    slot: int
    basic_algorithm: int
    run_amount: float
    mode: str
    replay_amount: float = 0.0

    @property
    def advance(self):
        """The new progress made on the algorithm"""
        return self.run_amount - self.replay_amount

    def to_dict(self):
        return {
            "slot": self.slot,
            "basic_algorithm": self.basic_algorithm,
            "run_amount": self.run_amount,
            "mode": self.mode,
            "replay_amount": self.replay_amount,
        }


@dataclass(frozen=True)
class SwitchSchedule:
    """A schedule of basic algorithms on memory slots.

    Attributes:
        slots
            The number of memory slots
        events
            The runs in order of execution
        robot_cost
            The total distance travelled in the plan the schedule was
            exported from
    """

    slots: int
    events: Tuple[ScheduleEvent, ...]
    robot_cost: float = 0.0

    @property
    def computation_cost(self):
        """The total number of computation steps"""
        return math.fsum(event.run_amount for event in self.events)

    @property
    def replay_cost(self):
        """The number of computation steps repeating earlier progress"""
        return math.fsum(event.replay_amount for event in self.events)

    def to_dict(self):
        return {
            "schema": 1,
            "slots": self.slots,
            "events": [event.to_dict() for event in self.events],
            "robot_cost": self.robot_cost,
            "computation_cost": self.computation_cost,
            "replay_cost": self.replay_cost,
        }


def export_schedule(plan):
    """Translate a plan into a schedule of basic algorithms.

    Args:
        plan: The plan (or trace) to translate; it is validated on
            construction

    Returns:
        The :class:`SwitchSchedule`
    """
    last_algorithm = {}
    frontier = {}
    progress = {}
    events = []
    for segment in plan:
        if not segment.is_forward:
            continue
        slot, algorithm = segment.robot, segment.path
        start, stop = segment.from_pos, segment.to_pos
        done = progress.get(algorithm, 0.0)

        resumes = (
            last_algorithm.get(slot) == algorithm and frontier[slot] == start
        ) or (slot not in last_algorithm and start == 0)
        if resumes:
            events.append(
                ScheduleEvent(
                    slot,
                    algorithm,
                    stop - start,
                    RESUME,
                    max(0.0, min(done, stop) - start),
                )
            )
        else:
            events.append(
                ScheduleEvent(
                    slot, algorithm, stop, FRESH_REPLAY, min(done, stop)
                )
            )

        last_algorithm[slot] = algorithm
        frontier[slot] = stop
        progress[algorithm] = max(done, stop)

    return SwitchSchedule(
        slots=plan.lam, events=tuple(events), robot_cost=total_cost(plan)
    )
