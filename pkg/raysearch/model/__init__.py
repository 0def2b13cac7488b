"""Value types for paths, robots, goals, motion traces and cost accounting"""
from .domain import (
    DomainError,
    check_path_count,
    check_positive,
    check_robot_count,
)
from .goals import GoalPlacement
from .ledger import (
    CostLedger,
    Discovery,
    HorizonExhaustedError,
    truncate_at_goal,
)
from .trace import (
    InvalidTraceError,
    Segment,
    Trace,
    searched_extent,
    total_cost,
)
