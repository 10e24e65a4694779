"""Distance-binned cumulative counts around a center.

A single pass over the records assigns each one to the radial bin
``ceil(d / delta_r)``; prefix sums then give |D(c, r_i)| and |D_all(c, r_i)|
for every sampled radius ``r_i = i * delta_r`` without rescanning.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from socialpoi.core import Dataset, GeoCoord, InvalidParams, RadiusOutOfRange, distances_from


@dataclass(frozen=True)
class RadialProfile:
    """Cumulative relevant/all counts at radii ``delta_r, 2*delta_r, ...``.

    ``cum_relevant[i]`` and ``cum_all[i]`` count records within radius
    ``(i + 1) * delta_r`` (zero-based storage of the one-based grid).
    """

    center: GeoCoord
    delta_r: float
    max_radius: float
    cum_relevant: np.ndarray
    cum_all: np.ndarray
    total_relevant_in_rbar: int
    member_index: dict[int, list[int]]
    record_touches: int = 0

    @property
    def n_bins(self) -> int:
        return len(self.cum_all)

    def radius(self, i: int) -> float:
        """One-based grid radius ``r_i``."""
        return i * self.delta_r


def _bin_of(d: np.ndarray, delta_r: float) -> np.ndarray:
    bins = np.ceil(d / delta_r).astype(np.int64)
    bins = np.maximum(bins, 1)
    # repair float rounding so that bin i holds exactly (r_{i-1}, r_i]
    bins += d > bins * delta_r
    bins -= (bins > 1) & (d <= (bins - 1) * delta_r)
    return bins


def build_profile(
    dataset: Dataset,
    center: GeoCoord,
    delta_r: float,
    max_radius: float,
    rbar: float,
) -> RadialProfile:
    if not delta_r > 0:
        raise InvalidParams(f"delta_r must be > 0, got {delta_r}")
    if not 0 < max_radius <= rbar:
        raise InvalidParams(f"need 0 < max_radius <= rbar, got {max_radius}, {rbar}")

    n_bins = int(math.floor(max_radius / delta_r))
    if n_bins * delta_r > max_radius:
        n_bins -= 1

    if len(dataset) == 0:
        zeros = np.zeros(n_bins, dtype=np.int64)
        return RadialProfile(center, delta_r, max_radius, zeros, zeros.copy(), 0, {}, 0)

    d = distances_from(center, dataset.lats, dataset.lons)
    relevant = dataset.relevant_mask
    total_rel = int(np.count_nonzero(relevant & (d <= rbar)))

    bins = _bin_of(d, delta_r)
    inside = bins <= n_bins
    all_counts = np.bincount(bins[inside], minlength=n_bins + 1)[1:]
    rel_inside = inside & relevant
    rel_counts = np.bincount(bins[rel_inside], minlength=n_bins + 1)[1:]

    member_index: dict[int, list[int]] = {}
    for idx in np.flatnonzero(rel_inside):
        member_index.setdefault(int(bins[idx]), []).append(int(idx))

    return RadialProfile(
        center=center,
        delta_r=delta_r,
        max_radius=max_radius,
        cum_relevant=np.cumsum(rel_counts),
        cum_all=np.cumsum(all_counts),
        total_relevant_in_rbar=total_rel,
        member_index=member_index,
        record_touches=len(d),
    )


def members_within(profile: RadialProfile, dataset: Dataset, radius: float):
    """Relevant records within ``radius`` of the profile center, in dataset order."""
    if radius < 0 or radius > profile.max_radius:
        raise RadiusOutOfRange(f"radius {radius} outside [0, {profile.max_radius}]")
    full_bins = int(math.floor(radius / profile.delta_r))
    if full_bins * profile.delta_r > radius:
        full_bins -= 1
    picked: list[int] = []
    for b in range(1, full_bins + 1):
        picked.extend(profile.member_index.get(b, ()))
    # the next bin straddles the radius; decide by exact distance
    partial = profile.member_index.get(full_bins + 1, [])
    if partial:
        sel = np.asarray(partial)
        d = distances_from(profile.center, dataset.lats[sel], dataset.lons[sel])
        picked.extend(int(i) for i, di in zip(sel, d) if di <= radius)
    picked.sort()
    return [dataset.records[i] for i in picked]
