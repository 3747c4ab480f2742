"""Seeded approval profile generators.

Every draw comes from ``numpy.random.Generator(PCG64(seed))``, so identical
parameters and seed give an identical instance.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from core import ElectionInstance, build_instance

MODELS = ("impartial", "party")
MAX_SEED = 2**64 - 1


class GenParamsError(ValueError):
    """Generator parameters do not describe a valid profile model."""


@dataclass(frozen=True)
class GenParams:
    model: str
    n: int
    m: int
    k: int
    seed: int
    p: float = 0.5
    party_sizes: Tuple[int, ...] = ()
    weights: Optional[Tuple[float, ...]] = None

    def __post_init__(self) -> None:
        if self.model not in MODELS:
            raise GenParamsError(f"Unknown model {self.model!r}; expected one of {MODELS}.")
        if self.n < 1 or self.m < 1:
            raise GenParamsError(f"Need n >= 1 and m >= 1, got n={self.n} m={self.m}.")
        if not 1 <= self.k <= self.m:
            raise GenParamsError(f"Need 1 <= k <= m, got k={self.k} m={self.m}.")
        if not 0 <= self.seed <= MAX_SEED:
            raise GenParamsError(f"Seed must be a 64-bit unsigned integer, got {self.seed}.")
        if self.model == "impartial" and not 0 <= self.p <= 1:
            raise GenParamsError(f"Approval probability must lie in [0, 1], got p={self.p}.")
        if self.model == "party":
            self._validate_parties()

    def _validate_parties(self) -> None:
        if not self.party_sizes:
            raise GenParamsError("Party model needs at least one party size.")
        if any(size < 1 for size in self.party_sizes):
            raise GenParamsError(f"Party sizes must be positive, got {list(self.party_sizes)}.")
        if sum(self.party_sizes) > self.m:
            raise GenParamsError(
                f"Parties hold {sum(self.party_sizes)} candidates but m={self.m}."
            )
        if self.weights is not None:
            if len(self.weights) != len(self.party_sizes):
                raise GenParamsError(
                    f"Got {len(self.weights)} weights for {len(self.party_sizes)} parties."
                )
            if any(w < 0 for w in self.weights) or sum(self.weights) <= 0:
                raise GenParamsError(f"Weights must be non-negative with a positive sum, got {list(self.weights)}.")

    @property
    def party_blocks(self) -> Tuple[Tuple[int, ...], ...]:
        """Consecutive candidate blocks, starting at candidate 0."""
        blocks = []
        start = 0
        for size in self.party_sizes:
            blocks.append(tuple(range(start, start + size)))
            start += size
        return tuple(blocks)


def _impartial(params: GenParams, rng: np.random.Generator):
    approvals = rng.random((params.n, params.m)) < params.p
    return [tuple(int(c) for c in np.flatnonzero(row)) for row in approvals]


def _party(params: GenParams, rng: np.random.Generator):
    blocks = params.party_blocks
    if params.weights is None:
        probabilities = np.full(len(blocks), 1.0 / len(blocks))
    else:
        weights = np.asarray(params.weights, dtype=float)
        probabilities = weights / weights.sum()
    choices = rng.choice(len(blocks), size=params.n, p=probabilities)
    return [blocks[int(group)] for group in choices]


def generate(params: GenParams) -> ElectionInstance:
    rng = np.random.Generator(np.random.PCG64(params.seed))
    ballots = _impartial(params, rng) if params.model == "impartial" else _party(params, rng)
    instance = build_instance(params.n, params.m, params.k, ballots)
    logging.debug(
        "Generated profile model=%s n=%s m=%s k=%s seed=%s",
        params.model,
        params.n,
        params.m,
        params.k,
        params.seed,
    )
    return instance
