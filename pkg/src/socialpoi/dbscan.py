"""DBSCAN over relevant records and its evaluation as a circular boundary."""

from __future__ import annotations

import math
from collections import defaultdict, deque
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from socialpoi.core import (
    Dataset,
    GeoCoord,
    InvalidParams,
    PoiConfig,
    Record,
    centroid,
    distances_from,
    project,
)
from socialpoi.metrics import beq as beq_of
from socialpoi.metrics import f_measure, precision, recall

NOISE = -1


@dataclass(frozen=True)
class DbscanParams:
    min_pts: int = 5
    eps: float = 0.0

    def __post_init__(self):
        if self.min_pts < 3:
            raise InvalidParams(f"min_pts must be >= 3, got {self.min_pts}")
        if not self.eps > 0:
            raise InvalidParams(f"eps must be > 0, got {self.eps}")

    @classmethod
    def for_poi(cls, config: PoiConfig, min_pts: int = 5) -> "DbscanParams":
        return cls(min_pts=min_pts, eps=config.r_cover)


@dataclass(frozen=True)
class DbscanResult:
    labels: tuple[int, ...]
    clusters: tuple[tuple[Record, ...], ...]
    noise: tuple[Record, ...]


@dataclass(frozen=True)
class ClusterEvaluation:
    cluster_members: tuple[Record, ...]
    cluster_centroid: GeoCoord | None
    r_d: float
    tp: int
    fp: int
    fn_: int
    f_measure: float
    beq: float


class GridIndex:
    """Fixed-radius neighbor queries on a uniform grid in a local plane."""

    def __init__(self, lats: np.ndarray, lons: np.ndarray, eps: float):
        self.lats = lats
        self.lons = lons
        self.eps = eps
        ref = GeoCoord(float(np.mean(lats)), float(np.mean(lons))) if len(lats) else GeoCoord(0, 0)
        x, y = project(ref, lats, lons)
        # slack absorbs the projection's distortion relative to great-circle distance
        self.cell = eps * 1.05
        self.keys = list(zip(np.floor(x / self.cell).astype(int).tolist(),
                             np.floor(y / self.cell).astype(int).tolist()))
        self.cells: dict[tuple[int, int], list[int]] = defaultdict(list)
        for i, key in enumerate(self.keys):
            self.cells[key].append(i)

    def neighbors(self, i: int) -> list[int]:
        """Indices within ``eps`` of point ``i`` (including ``i``), ascending."""
        cx, cy = self.keys[i]
        cand = []
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                cand.extend(self.cells.get((cx + dx, cy + dy), ()))
        cand = np.array(sorted(cand))
        d = distances_from(GeoCoord(self.lats[i], self.lons[i]), self.lats[cand], self.lons[cand])
        return cand[d <= self.eps].tolist()


def dbscan(relevant: Sequence[Record], params: DbscanParams) -> DbscanResult:
    """Classic DBSCAN with inclusive self-counting neighborhoods.

    Points are visited in input order; a border point joins the first
    cluster whose expansion reaches it.
    """
    n = len(relevant)
    labels = [None] * n
    if n:
        lats = np.array([r.coord.lat for r in relevant])
        lons = np.array([r.coord.lon for r in relevant])
        index = GridIndex(lats, lons, params.eps)
    cluster_id = 0
    for i in range(n):
        if labels[i] is not None:
            continue
        nbrs = index.neighbors(i)
        if len(nbrs) < params.min_pts:
            labels[i] = NOISE
            continue
        labels[i] = cluster_id
        queue = deque(nbrs)
        while queue:
            j = queue.popleft()
            if labels[j] == NOISE:
                labels[j] = cluster_id
            if labels[j] is not None:
                continue
            labels[j] = cluster_id
            nj = index.neighbors(j)
            if len(nj) >= params.min_pts:
                queue.extend(nj)
        cluster_id += 1

    groups: list[list[Record]] = [[] for _ in range(cluster_id)]
    noise = []
    for rec, lab in zip(relevant, labels):
        (noise if lab == NOISE else groups[lab]).append(rec)
    return DbscanResult(tuple(labels), tuple(tuple(g) for g in groups), tuple(noise))


def select_poi_cluster(clusters: Sequence[Sequence[Record]]) -> int | None:
    """Index of the cluster with the most records; ties go to the earliest."""
    if not clusters:
        return None
    return max(range(len(clusters)), key=lambda i: (len(clusters[i]), -i))


def evaluate_poi_cluster(clusters: Sequence[Sequence[Record]], dataset: Dataset,
                         config: PoiConfig) -> ClusterEvaluation:
    """Score the POI cluster as the circle (centroid, r_D) against ``dataset``.

    Counts are restricted to records within ``rbar`` of ``c0``.
    """
    i = select_poi_cluster(clusters)
    if i is None:
        return ClusterEvaluation((), None, 0.0, 0, 0, 0, 0.0, 0.0)
    members = tuple(clusters[i])
    c = centroid([r.coord for r in members])
    m_lats = np.array([r.coord.lat for r in members])
    m_lons = np.array([r.coord.lon for r in members])
    r_d = float(distances_from(c, m_lats, m_lons).max())

    rel = dataset.relevant_mask
    in_region = distances_from(config.c0, dataset.lats, dataset.lons) <= config.rbar
    in_circle = distances_from(c, dataset.lats, dataset.lons) <= r_d
    tp = int(np.count_nonzero(in_circle & in_region & rel))
    fp = int(np.count_nonzero(in_circle & in_region & ~rel))
    fn = int(np.count_nonzero(~in_circle & in_region & rel))
    f = f_measure(precision(tp, fp), recall(tp, fn))
    # a cluster can spread past rbar; the coverage factor saturates at 1
    b = beq_of(min(r_d, config.rbar), config.rbar, config.alpha, f)
    return ClusterEvaluation(members, c, r_d, tp, fp, fn, f, b)


def dbscan_estimate(dataset: Dataset, config: PoiConfig, params: DbscanParams | None = None):
    """Run the baseline end to end: relevant records within rbar of c0 are
    clustered and the POI cluster is evaluated."""
    from socialpoi.isobest import search_region

    params = params or DbscanParams.for_poi(config)
    region = search_region(dataset, config)
    result = dbscan(region.relevant(), params)
    return result, evaluate_poi_cluster(result.clusters, dataset, config)
