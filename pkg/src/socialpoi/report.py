"""Method comparison tables and the runtime-scaling benchmark."""

from __future__ import annotations

import gc
import statistics
import time
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np
from scipy import stats

from socialpoi.core import Dataset, PoiConfig
from socialpoi.dbscan import DbscanParams, dbscan_estimate
from socialpoi.isobest import isobest, search_region, sobest_estimate
from socialpoi.synth import PRESETS, SceneSpec, generate

METHODS = ("sobest", "isobest", "dbscan")


@dataclass(frozen=True)
class CompareRow:
    method: str
    alpha: float
    beq: float
    f_measure: float
    radius: float
    iterations: int


def compare(dataset: Dataset, config: PoiConfig, alphas: Sequence[float],
            min_pts: int = 5) -> list[CompareRow]:
    rows = []
    for a in alphas:
        cfg = replace(config, alpha=float(a))
        s = sobest_estimate(dataset, cfg)
        rows.append(CompareRow("sobest", a, s.beq, s.f_measure, s.radius, 0))
        i = isobest(dataset, cfg)
        rows.append(CompareRow("isobest", a, i.beq, i.f_measure, i.radius, i.iterations))
        _, ev = dbscan_estimate(dataset, cfg, DbscanParams.for_poi(cfg, min_pts))
        rows.append(CompareRow("dbscan", a, ev.beq, ev.f_measure, ev.r_d, 0))
    return rows


def compare_tsv(rows: Sequence[CompareRow]) -> str:
    lines = ["method\talpha\tbeq\tf_measure\tradius_m\titerations"]
    lines += [f"{r.method}\t{r.alpha:g}\t{r.beq:.6f}\t{r.f_measure:.6f}\t{r.radius:.1f}\t{r.iterations}"
              for r in rows]
    return "\n".join(lines) + "\n"


def compare_table(rows: Sequence[CompareRow]) -> str:
    """Human-readable BEQ grid, one line per method and one column per alpha."""
    alphas = sorted({r.alpha for r in rows})
    head = "method    " + "".join(f"  alpha={a:<6g}" for a in alphas)
    out = [head, "-" * len(head)]
    for m in METHODS:
        vals = {r.alpha: r.beq for r in rows if r.method == m}
        if vals:
            out.append(f"{m:<10}" + "".join(f"  {vals.get(a, float('nan')):<12.4f}" for a in alphas))
    return "\n".join(out) + "\n"


def parse_sizes(text: str) -> list[int]:
    """``start:stop:step`` (stop inclusive) or a comma list."""
    if ":" in text:
        parts = [int(p) for p in text.split(":")]
        if len(parts) != 3 or parts[2] <= 0:
            raise ValueError(f"bad size range {text!r}; expected start:stop:step")
        start, stop, step = parts
        return list(range(start, stop + 1, step))
    return [int(p) for p in text.split(",") if p.strip()]


@dataclass(frozen=True)
class BenchRow:
    n_all: int
    mean_runtime: float
    stdev: float
    reps: int
    mean_iterations: float
    max_work_per_call: int
    n_bins: int


@dataclass(frozen=True)
class LinearFit:
    slope: float
    intercept: float
    r2: float


def bench(sizes: Sequence[int], reps: int = 10, alpha: float = 1.0,
          scene: SceneSpec | None = None, repeat: int = 3, seed: int = 0) -> list[BenchRow]:
    """Time the boundary estimation on random subsamples of a scene.

    Each repetition draws ``n_all`` records without replacement and keeps
    the best of ``repeat`` timings of the estimation call alone (garbage
    collection paused, file I/O excluded).
    """
    scene = scene if scene is not None else PRESETS["esb"]
    full, config = generate(scene)
    config = replace(config, alpha=alpha)
    # subsample from the searching region, as n_all counts records within rbar of c0
    full = search_region(full, config)
    if max(sizes) > len(full):
        raise ValueError(f"largest size {max(sizes)} exceeds scene size {len(full)}")
    rng = np.random.default_rng(seed)
    # one permutation per repetition, shared by every size: each sample is
    # still uniform, but sizes are compared on nested samples
    perms = [rng.permutation(len(full)) for _ in range(reps)]
    for _ in range(3):
        isobest(full.subset(np.sort(perms[0][: min(sizes)])), config)

    times = {n: [] for n in sizes}
    iters = {n: [] for n in sizes}
    work = {n: [] for n in sizes}
    # sizes are interleaved (shuffled per repetition) so slow drifts in
    # machine speed spread evenly across sizes instead of tracking n
    for perm in perms:
        for n in rng.permutation(sizes).tolist():
            sub = full.subset(np.sort(perm[:n]))
            isobest(sub, config)
            best = float("inf")
            gc_was_enabled = gc.isenabled()
            gc.disable()
            try:
                for _ in range(repeat):
                    t0 = time.perf_counter()
                    est = isobest(sub, config)
                    best = min(best, time.perf_counter() - t0)
            finally:
                if gc_was_enabled:
                    gc.enable()
            times[n].append(best)
            iters[n].append(est.iterations)
            work[n].append(max(est.work))

    n_bins = int(config.rbar // config.delta_r)
    rows = []
    for n in sizes:
        t = times[n]
        rows.append(BenchRow(n, statistics.fmean(t), statistics.stdev(t) if len(t) > 1 else 0.0,
                             reps, statistics.fmean(iters[n]), max(work[n]), n_bins))
    return rows


def linear_fit(rows: Sequence[BenchRow]) -> LinearFit:
    x = [r.n_all for r in rows]
    y = [r.mean_runtime for r in rows]
    res = stats.linregress(x, y)
    return LinearFit(float(res.slope), float(res.intercept), float(res.rvalue ** 2))


def bench_csv(rows: Sequence[BenchRow]) -> str:
    lines = ["n_all,mean_runtime,stdev,reps,mean_iterations,max_work_per_call"]
    lines += [f"{r.n_all},{r.mean_runtime:.6e},{r.stdev:.6e},{r.reps},{r.mean_iterations:.3f},"
              f"{r.max_work_per_call}" for r in rows]
    return "\n".join(lines) + "\n"
