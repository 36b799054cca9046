"""Deterministic Monte Carlo plumbing shared by the sampling modules.

Sample generation is split into fixed-size chunks, each driven by its own
child stream derived from ``(seed, stream tag, chunk index)``.  The chunk
layout depends only on the sample count, so results are bit-identical no
matter how chunks are scheduled or parallelized.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

DEFAULT_SEED = 42

# Normal draws generated per chunk; bounds peak memory, not the results.
CHUNK_ELEMENTS = 1 << 22


@dataclass(frozen=True)
class McRun:
    """Monte Carlo run configuration.

    Identical (samples, seed) and model parameters reproduce results
    bit-for-bit.
    """

    samples: int
    seed: int = DEFAULT_SEED

    def __post_init__(self) -> None:
        if not isinstance(self.samples, int) or self.samples < 1:
            raise ValueError(f"samples must be a positive integer, got {self.samples!r}")
        if not isinstance(self.seed, int) or not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")


def substream(seed: int, tag: int) -> np.random.Generator:
    """Independent generator for an auxiliary purpose (e.g. bootstrap)."""
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(tag,)))


def chunk_generators(
    mc: McRun, elems_per_draw: int, tag: int = 0
) -> Iterator[tuple[int, np.random.Generator]]:
    """Yield (draw count, generator) pairs covering ``mc.samples`` draws.

    Each chunk's generator is keyed by (seed, tag, chunk index) alone, so a
    chunk's output never depends on how many chunks ran before it.
    """
    per_chunk = max(1, CHUNK_ELEMENTS // max(1, elems_per_draw))
    produced = 0
    index = 0
    while produced < mc.samples:
        count = min(per_chunk, mc.samples - produced)
        seq = np.random.SeedSequence(entropy=mc.seed, spawn_key=(tag, index))
        yield count, np.random.default_rng(seq)
        produced += count
        index += 1
