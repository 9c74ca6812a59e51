"""Slot-by-slot simulator for the discrete-time multi-server queue.

Each time step draws one arrival indicator and c per-server completion
indicators from the replication's own PCG64 stream (block of BLOCK steps per
generator call). A state u > 0 moves by the arrival minus the completions of
its min(u, c) busy servers; an arrival into an empty queue only becomes
eligible for service the next step, so u == 0 moves to the arrival indicator.
Both facts collapse into one update:

    u <- max(0, u + x - completions_among_first_min(u, c)_servers)

The scalar path (single run) and the vectorized path (replications) consume
identical uniform blocks, so they produce identical trajectories for a seed.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import sqrt

import numpy as np

from .errors import RangeError
from .params import GeoParams
from .replication import SimResult, make_sim_result, substream_seed

BLOCK = 1024       # time steps of uniforms per generator call (fixed: part of the stream contract)
REP_CHUNK = 4096   # replications processed per vectorized sweep (performance only)
STATE_CAP = 2**31  # tripwire: maxima are O(ln n), so this can only mean a bug


@dataclass(frozen=True)
class GeoSimConfig:
    """One replication campaign: parameters, horizon, count, master seed."""

    params: GeoParams
    n: int
    reps: int
    seed: int

    def __post_init__(self):
        if self.n < 1:
            raise RangeError(f"horizon must be at least 1 step, got {self.n}")
        if self.reps < 1:
            raise RangeError(f"need at least 1 replication, got {self.reps}")


def _run_single(params: GeoParams, n: int, gen: np.random.Generator,
                batch_edges=None):
    """One trajectory; returns (max, per-batch sums of u) when batches requested."""
    p, r, c = params.p, params.r, params.c
    u = 0
    peak = 0
    batch_sums = [] if batch_edges is not None else None
    acc = 0.0
    edge_iter = iter(batch_edges[1:]) if batch_edges is not None else None
    next_edge = next(edge_iter) if edge_iter is not None else None

    step = 0
    done = 0
    while done < n:
        span = min(BLOCK, n - done)
        uniforms = gen.random((span, c + 1))
        arrivals = (uniforms[:, 0] < p).tolist()
        completions = np.cumsum(uniforms[:, 1:] < r, axis=1).tolist()
        for t in range(span):
            busy = u if u < c else c
            delta = arrivals[t] - (completions[t][busy - 1] if busy else 0)
            u += delta
            if u < 0:
                u = 0
            if u > peak:
                peak = u
            if batch_sums is not None:
                acc += u
                step += 1
                if step == next_edge:
                    batch_sums.append(acc)
                    acc = 0.0
                    next_edge = next(edge_iter, None)
        done += span
        assert peak < STATE_CAP
    if batch_sums is not None:
        return peak, batch_sums
    return peak


def _run_many(params: GeoParams, n: int, gens) -> np.ndarray:
    """Maxima of len(gens) independent trajectories, vectorized over the time loop."""
    p, r, c = params.p, params.r, params.c
    count = len(gens)
    u = np.zeros(count, dtype=np.int64)
    peak = np.zeros(count, dtype=np.int64)
    rows = np.arange(count)
    done = 0
    while done < n:
        span = min(BLOCK, n - done)
        arrivals = np.empty((count, span), dtype=np.int8)
        completions = np.zeros((count, span, c + 1), dtype=np.uint8)
        for i, gen in enumerate(gens):
            uniforms = gen.random((span, c + 1))
            arrivals[i] = uniforms[:, 0] < p
            completions[i, :, 1:] = np.cumsum(uniforms[:, 1:] < r, axis=1)
        for t in range(span):
            busy = np.minimum(u, c)
            u = u + arrivals[:, t] - completions[rows, t, busy]
            np.maximum(u, 0, out=u)
            np.maximum(peak, u, out=peak)
        done += span
        assert int(peak.max()) < STATE_CAP
    return peak


def simulate_max_length(params: GeoParams, n: int, seed: int) -> int:
    """Maximum queue length observed over an n-step trajectory."""
    if n < 1:
        raise RangeError(f"horizon must be at least 1 step, got {n}")
    return int(_run_single(params, n, np.random.Generator(np.random.PCG64(seed))))


def time_average_queue_length(params: GeoParams, n: int, seed: int,
                              batches: int = 100):
    """Time average of the queue length over one long run.

    Returns (mean, standard error); the SE comes from batch means, the
    standard device for serially correlated output.
    """
    if n < batches or batches < 2:
        raise RangeError(f"need n >= batches >= 2, got n={n}, batches={batches}")
    edges = [round(i * n / batches) for i in range(batches + 1)]
    gen = np.random.Generator(np.random.PCG64(seed))
    _, batch_sums = _run_single(params, n, gen, batch_edges=edges)
    means = np.asarray(batch_sums) / np.diff(edges)
    return float(means.mean()), float(means.std(ddof=1) / sqrt(batches))


def replicate_max_length(config: GeoSimConfig, threads: int = 1) -> SimResult:
    """Independent maxima, one per replication, with deterministic substreams.

    The sample multiset depends only on (params, n, reps, seed): substreams
    are derived per replication index, so chunking and thread count are
    performance knobs with no effect on the result.
    """
    seeds = [substream_seed(config.seed, i) for i in range(config.reps)]
    samples = np.empty(config.reps, dtype=np.int64)
    spans = [(lo, min(lo + REP_CHUNK, config.reps))
             for lo in range(0, config.reps, REP_CHUNK)]

    def run_span(span):
        lo, hi = span
        gens = [np.random.Generator(np.random.PCG64(s)) for s in seeds[lo:hi]]
        samples[lo:hi] = _run_many(config.params, config.n, gens)

    if threads > 1 and len(spans) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(run_span, spans))
    else:
        for span in spans:
            run_span(span)
    return make_sim_result(samples, seeds)
