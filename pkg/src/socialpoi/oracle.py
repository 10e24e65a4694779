"""Brute-force reference computations for verification.

Nothing here shares code with the production scan, hull or clustering:
every count is recomputed by a full rescan with scalar distances.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from socialpoi.core import Dataset, GeoCoord, PoiConfig, distance
from socialpoi.metrics import QualityPoint


def _ratio(a, b):
    return a / b if b else 0.0


def oracle_grid(center: GeoCoord, config: PoiConfig) -> list[float]:
    limit = config.rbar - distance(center, config.c0)
    radii = []
    i = 1
    while i * config.delta_r <= limit:
        radii.append(i * config.delta_r)
        i += 1
    return radii


def oracle_beq_curve(dataset: Dataset, center: GeoCoord, config: PoiConfig) -> list[QualityPoint]:
    """TP/FP/FN and the derived scores at every grid radius by full rescans."""
    d = np.array([distance(center, r.coord) for r in dataset.records])
    rel = np.array([r.relevant for r in dataset.records], dtype=bool)
    d_rel, d_irr = d[rel], d[~rel]
    universe = int(np.count_nonzero(d_rel <= config.rbar))
    curve = []
    for r in oracle_grid(center, config):
        tp = int(np.count_nonzero(d_rel <= r))
        fp = int(np.count_nonzero(d_irr <= r))
        fn = universe - tp
        p = _ratio(tp, tp + fp)
        rc = _ratio(tp, tp + fn)
        f = _ratio(2 * p * rc, p + rc)
        curve.append(QualityPoint(r, tp, fp, fn, p, rc, f, (r / config.rbar) ** config.alpha * f))
    return curve


def oracle_sobest(dataset: Dataset, center: GeoCoord, config: PoiConfig) -> tuple[float, float]:
    """Exhaustive (radius, beq) over precision-feasible grid radii."""
    best_r, best = 0.0, 0.0
    for q in oracle_beq_curve(dataset, center, config):
        if q.precision >= config.eta and q.beq >= best:
            best_r, best = q.radius, q.beq
    return best_r, best


def oracle_extreme_points(pts: np.ndarray) -> set[int]:
    """Hull vertices of planar points by the O(n^3) edge test.

    (i, j) is a hull edge when no point lies strictly right of i->j and any
    collinear point lies on the closed segment; strict vertices are endpoints
    of such edges that are not interior to a longer collinear edge.
    """
    n = len(pts)
    if n < 3:
        return set(range(n))
    x, y = pts[:, 0], pts[:, 1]
    verts = set()
    for i, j in itertools.permutations(range(n), 2):
        cr = (x[j] - x[i]) * (y - y[i]) - (y[j] - y[i]) * (x - x[i])
        if np.any(cr < 0):
            continue
        col = cr == 0
        t = (x - x[i]) * (x[j] - x[i]) + (y - y[i]) * (y[j] - y[i])
        seg2 = (x[j] - x[i]) ** 2 + (y[j] - y[i]) ** 2
        if np.any(col & ((t < 0) | (t > seg2))):
            continue
        verts.update((i, j))
    return verts


def oracle_triangle_hull(pts: np.ndarray) -> set[int]:
    """Points not strictly inside any triangle of other points."""
    n = len(pts)
    keep = set()
    for p in range(n):
        others = [k for k in range(n) if k != p]
        inside = False
        for a, b, c in itertools.combinations(others, 3):
            d1 = _orient(pts[a], pts[b], pts[p])
            d2 = _orient(pts[b], pts[c], pts[p])
            d3 = _orient(pts[c], pts[a], pts[p])
            if (d1 > 0 and d2 > 0 and d3 > 0) or (d1 < 0 and d2 < 0 and d3 < 0):
                inside = True
                break
        if not inside:
            keep.add(p)
    return keep


def _orient(a, b, c) -> float:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def oracle_dbscan(coords: list[GeoCoord], eps: float, min_pts: int) -> list[int]:
    """DBSCAN labels from the core-point graph.

    Clusters are connected components of core points, numbered by their
    lowest core index; a border point takes the lowest-numbered cluster
    among its core neighbors. This reproduces sequential DBSCAN visiting
    points in input order.
    """
    n = len(coords)
    dmat = _distance_matrix(coords)
    adj = [np.flatnonzero(dmat[i] <= eps).tolist() for i in range(n)]
    core = [len(a) >= min_pts for a in adj]
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(n):
        if core[i]:
            for j in adj[i]:
                if core[j]:
                    ri, rj = find(i), find(j)
                    if ri != rj:
                        parent[max(ri, rj)] = min(ri, rj)
    roots = sorted({find(i) for i in range(n) if core[i]})
    number = {r: k for k, r in enumerate(roots)}
    labels = []
    for i in range(n):
        if core[i]:
            labels.append(number[find(i)])
        else:
            near = [number[find(j)] for j in adj[i] if core[j]]
            labels.append(min(near) if near else -1)
    return labels


def _distance_matrix(coords: list[GeoCoord]) -> np.ndarray:
    """Pairwise spherical-law-of-cosines distances by broadcasting."""
    phi = np.radians([c.lat for c in coords])
    lam = np.radians([c.lon for c in coords])
    cos_c = (np.sin(phi)[:, None] * np.sin(phi)[None, :]
             + np.cos(phi)[:, None] * np.cos(phi)[None, :] * np.cos(lam[None, :] - lam[:, None]))
    return 6_371_000.0 * np.arccos(np.clip(cos_c, -1.0, 1.0))


def oracle_cluster_counts(members_coords: list[GeoCoord], dataset: Dataset,
                          config: PoiConfig) -> tuple[int, int, int, float]:
    """(TP, FP, FN, r_D) of the circle about the members' degree-mean centroid."""
    lat = math.fsum(c.lat for c in members_coords) / len(members_coords)
    lon = math.fsum(c.lon for c in members_coords) / len(members_coords)
    cen = GeoCoord(lat, lon)
    r_d = max(distance(cen, c) for c in members_coords)
    tp = fp = fn = 0
    for rec in dataset.records:
        if distance(config.c0, rec.coord) > config.rbar:
            continue
        inside = distance(cen, rec.coord) <= r_d
        if rec.relevant and inside:
            tp += 1
        elif rec.relevant:
            fn += 1
        elif inside:
            fp += 1
    return tp, fp, fn, r_d
