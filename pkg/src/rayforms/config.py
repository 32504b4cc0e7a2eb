"""Dataclass configs for sweeps and randomized checks."""

from __future__ import annotations

from dataclasses import dataclass

from .quadfield import Field, is_fundamental, make_field


@dataclass(frozen=True)
class SweepConfig:
    """Fundamental discriminants in ``[dk_min, dk_max]`` times levels ``1..max_level``."""

    dk_min: int = -200
    dk_max: int = -7
    max_level: int = 12

    def discriminants(self) -> list[int]:
        return [d for d in range(self.dk_max, self.dk_min - 1, -1) if d not in (-3, -4) and is_fundamental(d)]

    def fields(self) -> list[Field]:
        return [make_field(d) for d in self.discriminants()]

    def levels(self) -> range:
        return range(1, self.max_level + 1)


@dataclass(frozen=True)
class SampleConfig:
    """Randomized group-law checks: sample count, seed, and length bound for
    the Gamma1(N) words used to move representatives around."""

    samples: int = 1000
    seed: int = 20240917
    max_word: int = 20
