"""Domain types, great-circle distance and centroids."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

EARTH_RADIUS_M = 6_371_000.0


class SocialPoiError(Exception):
    """Base class for errors raised by this package."""


class InvalidParams(SocialPoiError, ValueError):
    pass


class EmptyInput(SocialPoiError, ValueError):
    pass


class InfeasibleCenter(SocialPoiError):
    """The center lies at or beyond the searching distance from c0."""


class RadiusOutOfRange(SocialPoiError, ValueError):
    pass


def _normalize_lon(lon: float) -> float:
    if -180.0 <= lon < 180.0:
        return float(lon)
    return float((lon + 180.0) % 360.0 - 180.0)


@dataclass(frozen=True)
class GeoCoord:
    """A point on the sphere in decimal degrees.

    Longitude is normalized to [-180, 180) on construction.
    """

    lat: float
    lon: float

    def __post_init__(self):
        if not (math.isfinite(self.lat) and math.isfinite(self.lon)):
            raise InvalidParams(f"non-finite coordinate ({self.lat}, {self.lon})")
        if not -90.0 <= self.lat <= 90.0:
            raise InvalidParams(f"latitude {self.lat} outside [-90, 90]")
        object.__setattr__(self, "lat", float(self.lat))
        object.__setattr__(self, "lon", _normalize_lon(self.lon))

    def as_tuple(self) -> tuple[float, float]:
        return (self.lat, self.lon)


@dataclass(frozen=True)
class Record:
    id: str
    coord: GeoCoord
    text: str = ""
    relevant: bool = False


@dataclass(frozen=True)
class Dataset:
    """An ordered, immutable collection of records.

    Coordinate and relevance arrays are cached on first use so that the
    radial scans can work on contiguous numpy buffers.
    """

    records: tuple[Record, ...]
    provenance: str = ""
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "records", tuple(self.records))
        seen = set()
        for rec in self.records:
            if rec.id in seen:
                raise InvalidParams(f"duplicate record id {rec.id!r}")
            seen.add(rec.id)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    @property
    def lats(self) -> np.ndarray:
        if "lats" not in self._cache:
            self._cache["lats"] = np.array([r.coord.lat for r in self.records], dtype=float)
        return self._cache["lats"]

    @property
    def lons(self) -> np.ndarray:
        if "lons" not in self._cache:
            self._cache["lons"] = np.array([r.coord.lon for r in self.records], dtype=float)
        return self._cache["lons"]

    @property
    def relevant_mask(self) -> np.ndarray:
        if "relevant" not in self._cache:
            self._cache["relevant"] = np.array([r.relevant for r in self.records], dtype=bool)
        return self._cache["relevant"]

    def relevant(self) -> list[Record]:
        return [r for r in self.records if r.relevant]

    def subset(self, indices, provenance: str | None = None) -> "Dataset":
        """Records at ``indices`` (in that order), reusing cached arrays."""
        idx = np.asarray(indices, dtype=np.int64)
        out = object.__new__(Dataset)
        object.__setattr__(out, "records", tuple(map(self.records.__getitem__, idx.tolist())))
        object.__setattr__(out, "provenance", self.provenance if provenance is None else provenance)
        # ids are already unique here, so validation is skipped
        object.__setattr__(out, "_cache", {k: v[idx] for k, v in self._cache.items()})
        return out


@dataclass(frozen=True)
class PoiConfig:
    """A POI and the solver parameters used to estimate its boundary.

    The searching distance ``rbar`` is derived as ``gamma * r_cover``.
    """

    name: str
    queries: tuple[str, ...]
    c0: GeoCoord
    r_cover: float
    gamma: float = 10.0
    eta: float = 0.5
    delta_r: float = 10.0
    alpha: float = 0.0
    delta: float = 1e-4

    def __post_init__(self):
        object.__setattr__(self, "queries", tuple(self.queries))
        if not self.r_cover > 0:
            raise InvalidParams(f"r_cover must be > 0, got {self.r_cover}")
        if not self.gamma > 0:
            raise InvalidParams(f"gamma must be > 0, got {self.gamma}")
        if not 0 < self.eta < 1:
            raise InvalidParams(f"eta must lie in (0, 1), got {self.eta}")
        if not self.delta_r > 0:
            raise InvalidParams(f"delta_r must be > 0, got {self.delta_r}")
        if not self.alpha >= 0:
            raise InvalidParams(f"alpha must be >= 0, got {self.alpha}")
        if not self.delta > 0:
            raise InvalidParams(f"delta must be > 0, got {self.delta}")

    @property
    def rbar(self) -> float:
        return self.gamma * self.r_cover


def distance(a: GeoCoord, b: GeoCoord) -> float:
    """Great-circle distance in meters by the spherical law of cosines.

    The formula carries a rounding floor of roughly 0.1 m; coincident points
    are special-cased to exactly zero.
    """
    if a == b:
        return 0.0
    phi_a = math.radians(a.lat)
    phi_b = math.radians(b.lat)
    d_lam = math.radians(b.lon - a.lon)
    c = math.sin(phi_a) * math.sin(phi_b) + math.cos(phi_a) * math.cos(phi_b) * math.cos(d_lam)
    return EARTH_RADIUS_M * math.acos(min(1.0, max(-1.0, c)))


def distances_from(center: GeoCoord, lats: np.ndarray, lons: np.ndarray) -> np.ndarray:
    """Vectorized :func:`distance` from ``center`` to every (lat, lon) pair."""
    phi_c = math.radians(center.lat)
    phi = np.radians(lats)
    d_lam = np.radians(lons - center.lon)
    c = math.sin(phi_c) * np.sin(phi) + math.cos(phi_c) * np.cos(phi) * np.cos(d_lam)
    d = EARTH_RADIUS_M * np.arccos(np.clip(c, -1.0, 1.0))
    d[(lats == center.lat) & (lons == center.lon)] = 0.0
    return d


def centroid(points: Sequence[GeoCoord]) -> GeoCoord:
    """Arithmetic mean of latitudes and longitudes in degree space.

    Not valid for point sets straddling the antimeridian or a pole.
    """
    if len(points) == 0:
        raise EmptyInput("centroid of an empty point set")
    lat = math.fsum(p.lat for p in points) / len(points)
    lon = math.fsum(p.lon for p in points) / len(points)
    return GeoCoord(lat, lon)


def meters_per_degree(lat: float) -> tuple[float, float]:
    """Local equirectangular scale factors (north, east) in meters per degree."""
    k = math.pi * EARTH_RADIUS_M / 180.0
    return k, k * math.cos(math.radians(lat))


def project(center: GeoCoord, lats, lons) -> tuple[np.ndarray, np.ndarray]:
    """Project coordinates onto a local tangent plane about ``center`` (meters)."""
    m_lat, m_lon = meters_per_degree(center.lat)
    x = (np.asarray(lons, dtype=float) - center.lon) * m_lon
    y = (np.asarray(lats, dtype=float) - center.lat) * m_lat
    return x, y


def offset(center: GeoCoord, dist_m: float, bearing_deg: float) -> GeoCoord:
    """Displace ``center`` by ``dist_m`` meters along ``bearing_deg`` (0 = north)
    using the local equirectangular approximation."""
    m_lat, m_lon = meters_per_degree(center.lat)
    b = math.radians(bearing_deg)
    return GeoCoord(
        center.lat + dist_m * math.cos(b) / m_lat,
        center.lon + dist_m * math.sin(b) / m_lon,
    )
