"""Reproducible replication plumbing.

Replication i always draws from PCG64 seeded with splitmix64(master, i), so a
run is fully determined by its master seed and replication results do not
depend on scheduling or chunking. The generator name and derivation rule are
recorded in run manifests.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .stats import ECDF, summarize

PRNG_ALGORITHM = "PCG64"
SEED_DERIVATION = "splitmix64(master_seed, replication_index)"

_MASK64 = (1 << 64) - 1
_SPLITMIX_GAMMA = 0x9E3779B97F4A7C15


def substream_seed(master_seed: int, index: int) -> int:
    """64-bit seed for replication `index`, via the SplitMix64 output function.

    splitmix64 state k is master + (index+1)*gamma mod 2^64; the finalizer is
    the published xor-shift/multiply chain. Order-free by construction.
    """
    if index < 0:
        raise ValueError(f"replication index must be nonnegative, got {index}")
    z = (master_seed + (index + 1) * _SPLITMIX_GAMMA) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def substream_generator(master_seed: int, index: int) -> np.random.Generator:
    """Independent PCG64 stream for one replication."""
    return np.random.Generator(np.random.PCG64(substream_seed(master_seed, index)))


@dataclass(frozen=True)
class SimResult:
    """Replicated samples with their seeds and the usual aggregates."""

    samples: np.ndarray
    seeds: np.ndarray
    mean: float
    se: float
    ecdf: ECDF


def make_sim_result(samples, seeds) -> SimResult:
    summary = summarize(samples)
    samples = np.asarray(samples)
    seeds = np.asarray(seeds, dtype=np.uint64)
    samples.flags.writeable = False
    seeds.flags.writeable = False
    return SimResult(samples, seeds, summary.mean, summary.se, summary.ecdf)
