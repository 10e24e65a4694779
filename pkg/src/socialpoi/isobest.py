"""Iterative center refinement around the fixed-center radius search.

Each iteration moves the center to the centroid of the previous circle's
relevant members and re-solves the radius. The loop continues while the BEQ
gain is at least ``delta``; the iterate *before* the failing step is
returned, so a final sub-``delta`` improvement is deliberately discarded
(it remains visible in ``trace``).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from socialpoi.core import Dataset, GeoCoord, PoiConfig, Record, centroid, distances_from
from socialpoi.sobest import SobestResult, search_limit, sobest

log = logging.getLogger(__name__)

MAX_ITERATIONS = 100


@dataclass(frozen=True)
class IterationTrace:
    k: int
    center: GeoCoord
    radius: float
    f_measure: float
    beq: float
    n_members: int


@dataclass(frozen=True)
class BoundaryEstimate:
    center: GeoCoord
    radius: float
    f_measure: float
    beq: float
    members: tuple[Record, ...]
    trace: tuple[IterationTrace, ...]
    iterations: int
    precision: float = 0.0
    stop_reason: str = ""
    work: tuple[int, ...] = ()


def _trace(k: int, res: SobestResult) -> IterationTrace:
    return IterationTrace(k, res.center, res.radius, res.f_measure, res.beq, len(res.members))


def search_region(dataset: Dataset, config: PoiConfig) -> Dataset:
    """Records within ``rbar`` of ``config.c0``, the input of the iteration."""
    if len(dataset) == 0:
        return dataset
    d = distances_from(config.c0, dataset.lats, dataset.lons)
    keep = np.flatnonzero(d <= config.rbar)
    if len(keep) == len(dataset):
        return dataset
    return dataset.subset(keep)


def isobest(dataset: Dataset, config: PoiConfig, max_iterations: int = MAX_ITERATIONS,
            restrict: bool = True) -> BoundaryEstimate:
    """Jointly estimate the circle center and radius maximizing BEQ.

    Parameters
    ----------
    dataset
        Tagged records. Unless ``restrict`` is false, only those within
        ``rbar`` of ``config.c0`` are considered.
    config
        POI and solver parameters.
    max_iterations
        Safety cap on centroid updates.
    """
    data = search_region(dataset, config) if restrict else dataset

    prev = sobest(data, config.c0, config)
    trace = [_trace(0, prev)]
    work = [prev.work]
    k = 0
    reason = "converged"
    while True:
        if prev.radius == 0 or not prev.members:
            reason = "empty"
            break
        if k >= max_iterations:
            reason = "max_iterations"
            break
        k += 1
        c_k = centroid([r.coord for r in prev.members])
        if search_limit(c_k, config) <= 0:
            reason = "drift"
            k -= 1
            break
        cur = sobest(data, c_k, config)
        trace.append(_trace(k, cur))
        work.append(cur.work)
        if cur.beq - prev.beq >= config.delta:
            prev = cur
            continue
        break

    log.debug("isobest stopped (%s) after %d iterations, beq=%.6f", reason, k, prev.beq)
    return BoundaryEstimate(
        center=prev.center,
        radius=prev.radius,
        f_measure=prev.f_measure,
        beq=prev.beq,
        members=prev.members,
        trace=tuple(trace),
        iterations=k,
        precision=prev.precision,
        stop_reason=reason,
        work=tuple(work),
    )


def sobest_estimate(dataset: Dataset, config: PoiConfig) -> BoundaryEstimate:
    """The fixed-center radius search at ``c0`` wrapped as a BoundaryEstimate."""
    data = search_region(dataset, config)
    res = sobest(data, config.c0, config)
    return BoundaryEstimate(
        center=res.center,
        radius=res.radius,
        f_measure=res.f_measure,
        beq=res.beq,
        members=res.members,
        trace=(_trace(0, res),),
        iterations=0,
        precision=res.precision,
        stop_reason="single",
        work=(res.work,),
    )
