"""Social POI boundary estimation from geo-tagged text records."""

from socialpoi.core import (
    Dataset,
    EmptyInput,
    GeoCoord,
    InfeasibleCenter,
    InvalidParams,
    PoiConfig,
    Record,
    centroid,
    distance,
)
from socialpoi.hull import BoundaryPolygon, convex_hull
from socialpoi.isobest import BoundaryEstimate, IterationTrace, isobest
from socialpoi.sobest import SobestResult, sobest

__all__ = [
    "BoundaryEstimate",
    "BoundaryPolygon",
    "Dataset",
    "EmptyInput",
    "GeoCoord",
    "InfeasibleCenter",
    "InvalidParams",
    "IterationTrace",
    "PoiConfig",
    "Record",
    "SobestResult",
    "centroid",
    "convex_hull",
    "distance",
    "isobest",
    "sobest",
]

__version__ = "0.1.0"
