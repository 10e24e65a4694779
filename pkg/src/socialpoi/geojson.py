"""GeoJSON (RFC 7946) rendering of boundary estimates."""

from __future__ import annotations

from typing import Any

from socialpoi.core import GeoCoord, PoiConfig
from socialpoi.hull import BoundaryPolygon, Degenerate, convex_hull
from socialpoi.isobest import BoundaryEstimate


def _pos(c: GeoCoord) -> list[float]:
    return [c.lon, c.lat]


def polygon_geometry(poly: BoundaryPolygon) -> dict | None:
    if poly.degenerate is Degenerate.EMPTY:
        return None
    if poly.degenerate is Degenerate.POINT:
        return {"type": "Point", "coordinates": _pos(poly.vertices[0])}
    if poly.degenerate is Degenerate.SEGMENT:
        return {"type": "LineString", "coordinates": [_pos(v) for v in poly.vertices]}
    return {"type": "Polygon", "coordinates": [[_pos(v) for v in poly.ring()]]}


def estimate_to_geojson(est: BoundaryEstimate, config: PoiConfig, method: str,
                        poly: BoundaryPolygon | None = None) -> dict[str, Any]:
    """FeatureCollection with the boundary plus the initial and final centers."""
    poly = poly if poly is not None else convex_hull(est.members, est.center)
    boundary = {
        "type": "Feature",
        "geometry": polygon_geometry(poly),
        "properties": {
            "role": "boundary",
            "poi": config.name,
            "method": method,
            "alpha": config.alpha,
            "r_star_m": est.radius,
            "f_measure": est.f_measure,
            "beq": est.beq,
            "iterations": est.iterations,
            "c_star": _pos(est.center),
            "n_members": len(est.members),
            "shape": poly.degenerate.value,
            "area_m2": poly.area_m2,
        },
    }
    c0 = {"type": "Feature", "geometry": {"type": "Point", "coordinates": _pos(config.c0)},
          "properties": {"role": "c0"}}
    cs = {"type": "Feature", "geometry": {"type": "Point", "coordinates": _pos(est.center)},
          "properties": {"role": "c_star"}}
    return {"type": "FeatureCollection", "features": [boundary, c0, cs]}


def ring_is_valid(ring: list[list[float]]) -> bool:
    """Closed, at least four positions, counter-clockwise (positive area)."""
    if len(ring) < 4 or ring[0] != ring[-1]:
        return False
    area2 = sum(ring[i][0] * ring[i + 1][1] - ring[i + 1][0] * ring[i][1]
                for i in range(len(ring) - 1))
    return area2 > 0
