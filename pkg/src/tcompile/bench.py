"""Benchmark sweeps: T-count against log2(1/eps), and mixed-synthesis error suppression."""

from __future__ import annotations

import csv
import io
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

import mpmath
import numpy as np

from .chanmetrics import dnorm_unitary_pair
from .errors import SynthesisFailure
from .mpnum import phase_align, random_unitary, working_digits
from .ringmat import word_matrix
from .zrot import rz_matrix, synthesize_rz


@dataclass
class BenchRow:
    n: int
    eps: float
    trial: int
    t_count: int
    error: float  # independently recomputed diamond distance
    seconds: float
    magnitude_calls: int
    gridsynth_calls: int
    ok: bool


def fit_slope(eps: list[float], values: list[float]) -> float:
    """Least-squares slope of values against log2(1/eps)."""
    x = np.log2(1.0 / np.asarray(eps, dtype=float))
    return float(np.polyfit(x, np.asarray(values, dtype=float), 1)[0])


def trial_unitary(n: int, seed: int, trial: int) -> mpmath.matrix:
    """The trial-th Haar-random target; the same for every eps in a sweep."""
    rng = np.random.default_rng([seed, n, trial])
    with mpmath.workdps(120):
        return random_unitary(1 << n, rng)


def trial_angle(seed: int, trial: int) -> float:
    return float(np.random.default_rng([seed, 0, trial]).uniform(-math.pi, math.pi))


def _unitary_point(args) -> BenchRow:
    from .pipeline import approximate_unitary

    n, eps, trial, seed = args
    with mpmath.workdps(working_digits(eps)):
        u = trial_unitary(n, seed, trial)
        try:
            r = approximate_unitary(u, mpmath.mpf(eps), n=n, verify=False)
        except SynthesisFailure:
            # recorded as a failed point; the sweep goes on
            return BenchRow(n, eps, trial, -1, float("nan"), 0.0, 0, 0, False)
        # recheck from the emitted gates, phase-aligned for n >= 3
        realized = r.circuit.unitary()
        if n >= 3:
            realized = phase_align(u, realized)
        err = float(dnorm_unitary_pair(realized, u))
    return BenchRow(n, eps, trial, r.circuit.tcount(), err, r.seconds, r.stats.magnitude, r.stats.gridsynth, err <= eps)


def _zrot_point(args) -> BenchRow:
    eps, trial, seed = args
    th = trial_angle(seed, trial)
    t0 = time.perf_counter()
    with mpmath.workdps(working_digits(eps)):
        try:
            r = synthesize_rz(th, mpmath.mpf(eps))
        except SynthesisFailure:
            return BenchRow(1, eps, trial, -1, float("nan"), 0.0, 0, 0, False)
        # recheck from the emitted word, not the ring matrix it came from
        err = float(dnorm_unitary_pair(word_matrix(r.word).to_mpmath(), rz_matrix(th)))
    return BenchRow(1, eps, trial, r.tcount, err, time.perf_counter() - t0, 0, 1, err <= eps)


def _map(fn, tasks, workers: int):
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, tasks))
    return [fn(t) for t in tasks]


def bench_zrot(epsilons, trials: int, seed: int = 0, workers: int = 1) -> list[BenchRow]:
    return _map(_zrot_point, [(e, t, seed) for e in epsilons for t in range(trials)], workers)


def bench_unitary(qubits, epsilons, trials: int, seed: int = 0, workers: int = 1) -> list[BenchRow]:
    tasks = [(n, e, t, seed) for n in qubits for e in epsilons for t in range(trials)]
    return _map(_unitary_point, tasks, workers)


def slopes(rows: list[BenchRow]) -> dict[int, float]:
    out = {}
    for n in sorted({r.n for r in rows}):
        eps = sorted({r.eps for r in rows if r.n == n}, reverse=True)
        means = [np.mean([r.t_count for r in rows if r.n == n and r.eps == e and r.t_count >= 0]) for e in eps]
        if len(eps) >= 2:
            out[n] = fit_slope(eps, means)
    return out


# -- mixed ------------------------------------------------------------------------


@dataclass
class MixedRow:
    n: int
    eps: float
    pre: float
    post: float | None
    ratio: float | None  # post / pre^2
    expected_t_count: float
    lemma_satisfied: bool | None


def bench_mixed(qubits, epsilons, seed: int = 0, candidates: int | None = None, workers: int = 1) -> list[MixedRow]:
    from .mixed import mixed_synthesis

    rows = []
    for n in qubits:
        u = trial_unitary(n, seed, 0)
        for e in epsilons:
            r = mixed_synthesis(u, n, e, m=candidates, seed=seed, workers=workers)
            ratio = None if r.post_error is None else r.post_error / r.pre_error ** 2
            rows.append(MixedRow(n, e, r.pre_error, r.post_error, ratio, r.expected_tcount, r.lemma_satisfied))
    return rows


def mixed_slope(rows: list[MixedRow]) -> float:
    """Log-log slope of post-mix against pre-mix error."""
    pts = [(r.pre, r.post) for r in rows if r.post]
    x = np.log([p for p, _ in pts])
    y = np.log([q for _, q in pts])
    return float(np.polyfit(x, y, 1)[0])


def to_csv(rows) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    # wall time is left out so reruns give identical files
    names = [k for k in asdict(rows[0]) if k != "seconds"]
    w = csv.DictWriter(buf, fieldnames=names, lineterminator="\n")
    w.writeheader()
    for r in rows:
        d = asdict(r)
        w.writerow({k: (repr(d[k]) if isinstance(d[k], float) else d[k]) for k in names})
    return buf.getvalue()
