"""Seeded synthetic spatio-textual scenes with known ground truth."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, fields, replace

import numpy as np

from socialpoi.core import (
    Dataset,
    GeoCoord,
    InvalidParams,
    PoiConfig,
    Record,
    meters_per_degree,
    offset,
)


class InvalidSpec(InvalidParams):
    pass


_FILLER = (
    "lovely evening walk",
    "coffee with friends",
    "traffic is terrible today",
    "new york minute",
    "lunch break",
    "best pizza in town",
    "can't wait for the weekend",
    "",
)


@dataclass(frozen=True)
class SceneSpec:
    """Parameters of a synthetic scene.

    Relevant records are an isotropic Gaussian about ``true_center``;
    irrelevant ones are uniform over the disk of radius ``irrelevant_extent``
    about the reported POI coordinate c0, which sits ``c0_offset`` meters from
    ``true_center`` along ``offset_bearing``.
    """

    seed: int = 0
    true_lat: float = 40.74844
    true_lon: float = -73.98566
    n_relevant: int = 1061
    n_irrelevant: int = 5751
    relevant_sigma: float = 40.0
    irrelevant_extent: float = 2010.0
    c0_offset: float = 0.0
    offset_bearing: float = 0.0
    r_cover: float = 201.0
    name: str = "Empire State Building"
    query: str = "Empire State"
    alpha: float = 0.0

    def __post_init__(self):
        if not -(2**63) <= self.seed < 2**64:
            raise InvalidSpec("seed must fit in 64 bits")
        if self.n_relevant < 0 or self.n_irrelevant < 0:
            raise InvalidSpec("record counts must be non-negative")
        if not self.relevant_sigma > 0:
            raise InvalidSpec("relevant_sigma must be > 0")
        if not self.irrelevant_extent > 0:
            raise InvalidSpec("irrelevant_extent must be > 0")
        if self.c0_offset < 0:
            raise InvalidSpec("c0_offset must be >= 0")
        if not self.r_cover > 0:
            raise InvalidSpec("r_cover must be > 0")
        if not -90 < self.true_lat < 90:
            raise InvalidSpec("true_lat must lie strictly inside (-90, 90)")
        try:
            GeoCoord(self.true_lat, self.true_lon)
        except InvalidParams as exc:
            raise InvalidSpec(str(exc)) from exc

    @property
    def true_center(self) -> GeoCoord:
        return GeoCoord(self.true_lat, self.true_lon)

    def with_(self, **kw) -> "SceneSpec":
        return replace(self, **kw)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "SceneSpec":
        known = {f.name: f.type for f in fields(cls)}
        unknown = set(d) - set(known)
        if unknown:
            raise InvalidSpec(f"unknown scene keys: {sorted(unknown)}")
        return cls(**d)


# Record counts and r_cover per venue are fixed inputs;
# spatial layout parameters are synthetic choices.
PRESETS = {
    "esb": SceneSpec(name="Empire State Building", query="Empire State",
                     true_lat=40.74844, true_lon=-73.98566,
                     n_relevant=1061, n_irrelevant=6812 - 1061, r_cover=201.0,
                     relevant_sigma=40.0, irrelevant_extent=2010.0),
    "dodger": SceneSpec(name="Dodger Stadium", query="Dodger Stadium",
                        true_lat=34.07362, true_lon=-118.24004,
                        n_relevant=941, n_irrelevant=2228 - 941, r_cover=150.0,
                        relevant_sigma=60.0, irrelevant_extent=1500.0),
    "met": SceneSpec(name="Metropolitan Museum of Art", query="The Met",
                     true_lat=40.77891, true_lon=-73.96367,
                     n_relevant=591, n_irrelevant=18413 - 591, r_cover=239.0,
                     relevant_sigma=50.0, irrelevant_extent=2390.0),
    "busch": SceneSpec(name="Busch Gardens", query="Busch Gardens",
                       true_lat=28.03706, true_lon=-82.42151,
                       n_relevant=166, n_irrelevant=297 - 166, r_cover=660.0,
                       relevant_sigma=150.0, irrelevant_extent=6600.0),
}

# Wide spread of relevant records with c0 displaced by 3 sigma: the reported
# coordinate sits well off the cluster.
PRESETS["offcenter"] = PRESETS["esb"].with_(name="Off-center POI", relevant_sigma=150.0,
                                            c0_offset=450.0)


def _to_coords(center: GeoCoord, dx: np.ndarray, dy: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    m_lat, m_lon = meters_per_degree(center.lat)
    return center.lat + dy / m_lat, center.lon + dx / m_lon


def generate(spec: SceneSpec) -> tuple[Dataset, PoiConfig]:
    """Draw a scene. Identical specs give identical datasets."""
    rng = np.random.default_rng(spec.seed % 2**64)
    true_c = spec.true_center
    c0 = offset(true_c, spec.c0_offset, spec.offset_bearing)

    rel = rng.normal(0.0, spec.relevant_sigma, size=(spec.n_relevant, 2))
    rel_lat, rel_lon = _to_coords(true_c, rel[:, 0], rel[:, 1])

    u = rng.random(spec.n_irrelevant)
    theta = rng.random(spec.n_irrelevant) * 2 * math.pi
    rad = spec.irrelevant_extent * np.sqrt(u)
    irr_lat, irr_lon = _to_coords(c0, rad * np.cos(theta), rad * np.sin(theta))

    lats = np.concatenate([rel_lat, irr_lat])
    lons = np.concatenate([rel_lon, irr_lon])
    flags = np.concatenate([np.ones(spec.n_relevant, bool), np.zeros(spec.n_irrelevant, bool)])
    filler = rng.integers(0, len(_FILLER), size=spec.n_irrelevant)
    order = rng.permutation(len(lats))

    records = []
    for new_id, j in enumerate(order):
        if flags[j]:
            text = f"At the {spec.query} today"
        else:
            text = _FILLER[filler[j - spec.n_relevant]]
        records.append(Record(str(new_id), GeoCoord(float(lats[j]), float(lons[j])), text,
                              bool(flags[j])))

    config = PoiConfig(name=spec.name, queries=(spec.query,), c0=c0, r_cover=spec.r_cover,
                       alpha=spec.alpha)
    return Dataset(tuple(records), provenance=f"synthetic seed={spec.seed}"), config
