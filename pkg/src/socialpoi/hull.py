"""Convex hull of an estimate's relevant members.

Points are projected onto a local equirectangular plane about the estimate
center (meters) before running Andrew's monotone chain, so the polygon is
convex metrically rather than in raw degrees. Vertices are reported as the
original member coordinates.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from socialpoi.core import GeoCoord, Record, project


class Degenerate(str, enum.Enum):
    POLYGON = "polygon"
    SEGMENT = "segment"
    POINT = "point"
    EMPTY = "empty"


@dataclass(frozen=True)
class BoundaryPolygon:
    """Counter-clockwise hull vertices; the ring is stored open (first != last)."""

    vertices: tuple[GeoCoord, ...]
    degenerate: Degenerate
    area_m2: float = 0.0

    def ring(self) -> list[GeoCoord]:
        if self.degenerate is not Degenerate.POLYGON:
            return list(self.vertices)
        return [*self.vertices, self.vertices[0]]


def _cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def monotone_chain(points: Sequence[tuple[float, float]]) -> list[int]:
    """Indices of the strictly convex hull of planar ``points``, CCW.

    Collinear boundary points are dropped. Duplicate points must already be
    removed by the caller.
    """
    order = sorted(range(len(points)), key=lambda i: points[i])
    if len(order) <= 2:
        return order

    def half(seq):
        chain: list[int] = []
        for i in seq:
            while len(chain) >= 2 and _cross(points[chain[-2]], points[chain[-1]], points[i]) <= 0:
                chain.pop()
            chain.append(i)
        return chain

    lower = half(order)
    upper = half(reversed(order))
    return lower[:-1] + upper[:-1]


def shoelace(xs, ys) -> float:
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def convex_hull_coords(coords: Sequence[GeoCoord], center: GeoCoord) -> BoundaryPolygon:
    uniq = list(dict.fromkeys(coords))
    if not uniq:
        return BoundaryPolygon((), Degenerate.EMPTY)
    if len(uniq) == 1:
        return BoundaryPolygon((uniq[0],), Degenerate.POINT)

    xs, ys = project(center, [c.lat for c in uniq], [c.lon for c in uniq])
    pts = list(zip(xs.tolist(), ys.tolist()))
    idx = monotone_chain(pts)
    if len(idx) < 3:
        # all collinear: keep the two extreme points
        sorted_idx = sorted(range(len(pts)), key=lambda i: pts[i])
        ends = (uniq[sorted_idx[0]], uniq[sorted_idx[-1]])
        return BoundaryPolygon(ends, Degenerate.SEGMENT)

    area = shoelace([pts[i][0] for i in idx], [pts[i][1] for i in idx])
    return BoundaryPolygon(tuple(uniq[i] for i in idx), Degenerate.POLYGON, area)


def convex_hull(members: Sequence[Record], center: GeoCoord) -> BoundaryPolygon:
    """Social POI boundary: the hull of the member records about ``center``."""
    return convex_hull_coords([r.coord for r in members], center)


def contains(poly: BoundaryPolygon, point: GeoCoord, center: GeoCoord, rtol: float = 1e-6) -> bool:
    """Point-in-convex-polygon test in the projected plane, tolerant to ``rtol``
    relative to the polygon's extent."""
    verts = poly.vertices
    if poly.degenerate is Degenerate.EMPTY:
        return False
    xs, ys = project(center, [v.lat for v in verts] + [point.lat], [v.lon for v in verts] + [point.lon])
    p = (xs[-1], ys[-1])
    vx, vy = xs[:-1], ys[:-1]
    scale = max(float(np.ptp(vx)), float(np.ptp(vy)), 1.0)
    tol = rtol * scale
    if poly.degenerate is Degenerate.POINT:
        return bool(np.hypot(p[0] - vx[0], p[1] - vy[0]) <= tol)
    if poly.degenerate is Degenerate.SEGMENT:
        a, b = (vx[0], vy[0]), (vx[1], vy[1])
        seg = np.hypot(b[0] - a[0], b[1] - a[1])
        off_line = abs(_cross(a, b, p)) / seg
        t = ((p[0] - a[0]) * (b[0] - a[0]) + (p[1] - a[1]) * (b[1] - a[1])) / seg
        return bool(off_line <= tol and -tol <= t <= seg + tol)
    n = len(vx)
    for i in range(n):
        a = (vx[i], vy[i])
        b = (vx[(i + 1) % n], vy[(i + 1) % n])
        edge = np.hypot(b[0] - a[0], b[1] - a[1])
        if _cross(a, b, p) / edge < -tol:
            return False
    return True
