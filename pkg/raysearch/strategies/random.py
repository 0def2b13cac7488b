"""
Seeded randomness for the randomized strategies.

All random draws are made from the PCG64 generator of numpy, initialized from
a :class:`numpy.random.SeedSequence` built from a 64-bit seed and a spawn key.
Independent streams are split off by extending the spawn key, so that
``RandomSource(seed).spawn(i)`` yields the same stream as the ``i``-th child
of ``SeedSequence(seed).spawn(...)``.

A strategy draws the permutation of the paths first (a Fisher-Yates shuffle,
:meth:`numpy.random.Generator.permutation`) and the phase second (a 53-bit
uniform double in ``[0, 1)``, :meth:`numpy.random.Generator.random`).
"""
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from raysearch.model import DomainError

SEED_LIMIT = 2 ** 64


@dataclass(frozen=True)
class RandomSource:
    """A reproducible source of random draws."""

    seed: int
    spawn_key: Tuple[int, ...] = ()

    def __post_init__(self):
        if not 0 <= self.seed < SEED_LIMIT:
            raise DomainError("The seed must be a 64-bit unsigned integer")
        object.__setattr__(self, "spawn_key", tuple(self.spawn_key))

    def generator(self):
        """Create a fresh generator for this source"""
        sequence = np.random.SeedSequence(self.seed, spawn_key=self.spawn_key)
        return np.random.Generator(np.random.PCG64(sequence))

    def spawn(self, index):
        """Split off the independent child source number ``index``"""
        return RandomSource(self.seed, self.spawn_key + (index,))

    def draw_permutation_and_phase(self, w):
        """Draw a uniform permutation of ``0, ..., w-1`` followed by a uniform
        phase in ``[0, 1)``.

        Returns:
            A tuple ``(permutation, phase)``
        """
        generator = self.generator()
        permutation = tuple(int(p) for p in generator.permutation(w))
        phase = float(generator.random())
        return permutation, phase
