"""The hidden goal chosen by the adversary."""
from dataclasses import dataclass

from raysearch.model.domain import DomainError


@dataclass(frozen=True)
class GoalPlacement:
    """A goal on path ``path`` at distance ``distance`` from the origin.

    Competitive ratios are only meaningful for goals at distance of at least
    one, so smaller distances are rejected.
    """

    path: int
    distance: float

    def __post_init__(self):
        if self.path < 0:
            raise DomainError("Path index must be non-negative")
        if not self.distance >= 1:
            raise DomainError(
                "Goal distance must be at least 1, got %r" % self.distance
            )

    def check_paths(self, w):
        """Check that the goal lies on one of ``w`` paths.

        Raises:
            DomainError: if the path index is not less than ``w``
        """
        if self.path >= w:
            raise DomainError(
                "Goal path %d does not exist for %d paths" % (self.path, w)
            )

    def to_dict(self):
        return {"path": self.path, "distance": self.distance}

    @classmethod
    def from_dict(cls, data):
        return cls(path=int(data["path"]), distance=float(data["distance"]))
