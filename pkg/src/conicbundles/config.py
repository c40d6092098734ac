"""Tunable knobs, grouped as frozen dataclasses with their defaults."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class KleinSearchConfig:
    # coefficient degree bound for a0, a1 and b in the tau search
    degree_bound: int = 6


@dataclass(frozen=True)
class ChainConfig:
    """Orbit sizes of the elementary-transformation chain attached to every
    NotMaximal verdict."""

    orbit_sizes: tuple[int, ...] = (1, 1, 1)


@dataclass(frozen=True)
class SamplingConfig:
    max_support: int = 4
    max_coeff: int = 2
    seed: int | None = None


DEFAULT_KLEIN = KleinSearchConfig()
DEFAULT_CHAIN = ChainConfig()
DEFAULT_SAMPLING = SamplingConfig()
