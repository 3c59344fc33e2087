"""Seeded trial execution and aggregation for the merge experiments.

Inputs follow the reproduced protocol: for a combined length N, both halves
draw their keys i.i.d. uniform from 1..factor*N (factor 4 by default, which
only somewhat limits duplicates; none are removed). Each (N, trial) pair
gets the seed mix64(base_seed, N, trial) and is generated with the
SplitMix64 + Lemire scheme from the rng module, so every row is a pure
function of the plan. Trials may fan out to a process pool; aggregation is
always in canonical order (N, then trial), making results independent of
scheduling. Every merge output is validated (permutation, sortedness,
stability) before its counts are recorded.

CSV schemas (exact headers):

    bench.csv  N,trial,seed,moves,comparisons,moves_per_n,comparisons_per_n
    phist.csv  N,p_length,mean_frequency
    prob.csv   N,M,n,k,probability
    drift.csv  N,decile,p_length,frequency,empirical_prob,lemma_bound

Numbers are serialized with up to 12 significant digits.
"""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, Iterable, List, NamedTuple, Sequence, Tuple

import numpy as np

from .errors import VerificationError, require
from .merge_engine import Element, merge_packed, unpack_element
from .order_stats import ProbCell, SampleModel, prob_cross
from .rng import bounded, mix64, splitmix64_stream

THREADS_ENV_VAR = "SHUFFLE_MERGE_THREADS"

_MAX_SIZE = 10 ** 6
_INDEX_SHIFT = 33
_ORIGIN_BIT = np.uint64(1 << 32)


@dataclass(frozen=True)
class TrialPlan:
    """One benchmark campaign: sizes x trials, seeded from base_seed."""

    sizes: Tuple[int, ...]
    trials_per_size: int
    base_seed: int
    key_universe_factor: int = 4

    def __post_init__(self):
        require(len(self.sizes) > 0, "plan needs at least one size")
        for n in self.sizes:
            require(n % 2 == 0, f"sizes must be even, got {n}")
            require(2 <= n <= _MAX_SIZE, f"size {n} outside [2, {_MAX_SIZE}]")
        require(self.trials_per_size >= 1, "trials_per_size must be >= 1")
        require(self.key_universe_factor >= 2, "key_universe_factor must be >= 2")


class BenchRow(NamedTuple):
    N: int
    trial: int
    seed: int
    moves: int
    comparisons: int
    moves_per_n: float
    comparisons_per_n: float


@dataclass(frozen=True)
class DriftBucket:
    """Empirical |P|-at-rotation distribution within one progress decile,
    next to the i.i.d.-model bound 1/2^(p-1) it is tested against."""

    N: int
    decile: int
    p_length: int
    frequency: int
    empirical_prob: float
    lemma_bound: float


def trial_seed(base_seed: int, n: int, trial: int) -> int:
    return mix64(base_seed, n, trial)


def _gen_packed(n: int, seed: int, factor: int = 4) -> List[int]:
    require(n % 2 == 0 and n >= 2, f"N must be even and >= 2, got {n}")
    m = factor * n
    keys = bounded(splitmix64_stream(seed, 0, n), m) + np.uint64(1)
    half = n // 2
    idx = np.arange(half, dtype=np.uint64)
    left = (np.sort(keys[:half]) << np.uint64(_INDEX_SHIFT)) | idx
    right = (np.sort(keys[half:]) << np.uint64(_INDEX_SHIFT)) | _ORIGIN_BIT | idx
    return left.tolist() + right.tolist()


def gen_input(n: int, seed: int, factor: int = 4) -> Tuple[List[Element], List[Element]]:
    """Two sorted, tagged lists of length N/2 with keys in 1..factor*N."""
    packed = _gen_packed(n, seed, factor)
    half = n // 2
    return ([unpack_element(x) for x in packed[:half]],
            [unpack_element(x) for x in packed[half:]])


def _verified_merge(packed: List[int]):
    expected = sorted(packed)
    stats = merge_packed(packed)
    if packed != expected:
        raise VerificationError("merge output failed sortedness/stability validation")
    return stats


def _run_trial(args):
    # worker for the process pool: returns only compact aggregates
    n, trial, seed, factor = args
    packed = _gen_packed(n, seed, factor)
    stats = _verified_merge(packed)
    total_rot = len(stats.rotation_trace)
    decile_hist = Counter()
    for ordinal, rec in enumerate(stats.rotation_trace):
        decile = min(9, ordinal * 10 // total_rot) + 1 if total_rot else 1
        decile_hist[(decile, rec.p_len, rec.d_len == 1)] += 1
    return {
        "N": n,
        "trial": trial,
        "seed": seed,
        "moves": stats.moves,
        "comparisons": stats.comparisons,
        "decile_hist": decile_hist,
    }


def resolve_workers(workers=None) -> int:
    """Explicit argument wins; else SHUFFLE_MERGE_THREADS; 0/unset = auto."""
    if workers is None:
        env = os.environ.get(THREADS_ENV_VAR, "0")
        try:
            workers = int(env)
        except ValueError:
            raise VerificationError(f"{THREADS_ENV_VAR} must be an integer, got {env!r}")
    if workers <= 0:
        workers = os.cpu_count() or 1
    return max(1, workers)


def _map_trials(tasks, workers):
    workers = resolve_workers(workers)
    if workers == 1 or len(tasks) <= 1:
        return [_run_trial(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=min(workers, len(tasks))) as pool:
        return list(pool.map(_run_trial, tasks, chunksize=max(1, len(tasks) // (4 * workers))))


def _plan_tasks(plan: TrialPlan):
    return [(n, t, trial_seed(plan.base_seed, n, t), plan.key_universe_factor)
            for n in plan.sizes for t in range(plan.trials_per_size)]


def run_bench(plan: TrialPlan, workers=None) -> List[BenchRow]:
    """One validated, instrumented merge per (N, trial)."""
    results = _map_trials(_plan_tasks(plan), workers)
    results.sort(key=lambda d: (d["N"], d["trial"]))
    return [BenchRow(d["N"], d["trial"], d["seed"], d["moves"], d["comparisons"],
                     d["moves"] / d["N"], d["comparisons"] / d["N"])
            for d in results]


def p_histogram(n: int, trials: int, base_seed: int, factor: int = 4,
                include_tail_rotation: bool = True, workers=None) -> Dict[int, float]:
    """Mean per-trial frequency of each |P|-at-rotation value."""
    plan = TrialPlan((n,), trials, base_seed, factor)
    totals = Counter()
    for d in _map_trials(_plan_tasks(plan), workers):
        for (_, p_len, is_tail), freq in d["decile_hist"].items():
            if is_tail and not include_tail_rotation:
                continue
            totals[p_len] += freq
    return {p: totals[p] / trials for p in sorted(totals)}


def drift_experiment(n: int, trials: int, base_seed: int, factor: int = 4,
                     include_tail_rotation: bool = True, workers=None) -> List[DriftBucket]:
    """|P|-at-rotation distribution per progress decile (by rotation
    ordinal within each trial), with the Lemma-2 style bound alongside."""
    plan = TrialPlan((n,), trials, base_seed, factor)
    per_decile = Counter()
    for d in _map_trials(_plan_tasks(plan), workers):
        for (decile, p_len, is_tail), freq in d["decile_hist"].items():
            if is_tail and not include_tail_rotation:
                continue
            per_decile[(decile, p_len)] += freq
    decile_totals = Counter()
    for (decile, _), freq in per_decile.items():
        decile_totals[decile] += freq
    return [DriftBucket(n, decile, p_len, freq,
                        freq / decile_totals[decile], 0.5 ** (p_len - 1))
            for (decile, p_len), freq in sorted(per_decile.items())]


def mc_prob_cross(model: SampleModel, n: int, k: int, samples: int, seed: int,
                  chunk: int = 20000) -> float:
    """Monte Carlo oracle for prob_cross: draw sample pairs, sort, count
    how often X_(n-k) > Y_(n). Chunking does not affect the result."""
    require(n <= model.N and n - k >= 1 and k >= 0, f"invalid rank/offset n={n} k={k}")
    require(samples >= 1, "samples must be >= 1")
    width = 2 * model.N
    hits = 0
    for start in range(0, samples, chunk):
        count = min(chunk, samples - start)
        words = splitmix64_stream(seed, start * width, count * width)
        keys = (bounded(words, model.M) + np.uint64(1)).reshape(count, width)
        x_val = np.partition(keys[:, :model.N], n - k - 1, axis=1)[:, n - k - 1]
        y_val = np.partition(keys[:, model.N:], n - 1, axis=1)[:, n - 1]
        hits += int((x_val > y_val).sum())
    return hits / samples


def prob_table(sizes: Sequence[int], ks: Sequence[int], rank: str = "last",
               factor: int = 4) -> List[ProbCell]:
    """prob_cross over a (N, k) grid; rank rule 'last' (n = N), 'half'
    (n = N/2), or an explicit integer rank."""
    cells = []
    for n_size in sorted(sizes):
        model = SampleModel(n_size, factor * n_size)
        if rank == "last":
            n = n_size
        elif rank == "half":
            n = max(1, n_size // 2)
        else:
            n = int(rank)
        for k in sorted(ks):
            cells.append(ProbCell(n_size, model.M, n, k, prob_cross(model, n, k)))
    return cells


def _fmt(value) -> str:
    if isinstance(value, float):
        return format(value, ".12g")
    return str(value)


def _write_csv(path, header: str, rows: Iterable[tuple]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def write_bench_csv(rows: List[BenchRow], path) -> None:
    _write_csv(path, "N,trial,seed,moves,comparisons,moves_per_n,comparisons_per_n", rows)


def write_phist_csv(tables: Dict[int, Dict[int, float]], path) -> None:
    """tables: N -> (p_length -> mean frequency)."""
    rows = [(n, p, tables[n][p]) for n in sorted(tables) for p in sorted(tables[n])]
    _write_csv(path, "N,p_length,mean_frequency", rows)


def write_prob_csv(cells: List[ProbCell], path) -> None:
    rows = [(c.N, c.M, c.n, c.k, c.value)
            for c in sorted(cells, key=lambda c: (c.N, c.n, c.k))]
    _write_csv(path, "N,M,n,k,probability", rows)


def write_drift_csv(buckets: List[DriftBucket], path) -> None:
    rows = [(b.N, b.decile, b.p_length, b.frequency, b.empirical_prob, b.lemma_bound)
            for b in sorted(buckets, key=lambda b: (b.N, b.decile, b.p_length))]
    _write_csv(path, "N,decile,p_length,frequency,empirical_prob,lemma_bound", rows)
