"""Exploration plans produced by the search strategies"""
from dataclasses import dataclass, field
from typing import Any, Dict

from raysearch.model import Segment, Trace


@dataclass(frozen=True)
class ExplorationPlan(Trace):
    """A finite prefix of the motions of a search strategy.

    Attributes:
        horizon
            The number of stages (or rounds) generated
        strategy
            The name of the strategy that generated the plan
        params
            Strategy parameters, e.g. the permutation, the phase, the growth
            rate and the speed ratio of the randomized strategies
    """

    horizon: int = 0
    strategy: str = ""
    params: Dict[str, Any] = field(default_factory=dict, hash=False)

    def to_dict(self):
        data = super().to_dict()
        data.update(
            {
                "schema": 1,
                "horizon": self.horizon,
                "strategy": self.strategy,
                "params": dict(self.params),
            }
        )
        return data

    @classmethod
    def from_dict(cls, data):
        return cls(
            w=int(data["w"]),
            lam=int(data["lambda"]),
            segments=tuple(Segment.from_dict(s) for s in data["segments"]),
            horizon=int(data["horizon"]),
            strategy=data["strategy"],
            params=dict(data.get("params", {})),
        )
