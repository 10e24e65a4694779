"""Radius search for a fixed circle center.

Phase 1 finds the largest grid radius whose precision reaches ``eta``;
Phase 2 picks, among the precision-feasible radii up to that point, the one
maximizing ``(r / rbar) ** alpha * F``. Ties go to the larger radius.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from socialpoi.core import Dataset, GeoCoord, InfeasibleCenter, PoiConfig, Record, distance
from socialpoi.metrics import QualityPoint, quality_arrays
from socialpoi.radial import RadialProfile, build_profile, members_within


@dataclass(frozen=True)
class SobestResult:
    center: GeoCoord
    radius: float
    f_measure: float
    beq: float
    precision: float
    r_m: float
    quality_curve: tuple[QualityPoint, ...]
    members: tuple[Record, ...]
    profile: RadialProfile | None = field(default=None, repr=False)

    @property
    def work(self) -> int:
        """Record touches plus bins visited while solving (complexity probe)."""
        if self.profile is None:
            return 0
        return self.profile.record_touches + self.profile.n_bins


def search_limit(center: GeoCoord, config: PoiConfig) -> float:
    """Largest admissible radius at ``center``: ``rbar - d(center, c0)``."""
    return config.rbar - distance(center, config.c0)


def sobest(dataset: Dataset, center: GeoCoord, config: PoiConfig) -> SobestResult:
    """Find the BEQ-maximizing radius around ``center``.

    Raises
    ------
    InfeasibleCenter
        If ``center`` is ``rbar`` or more away from ``config.c0``.
    """
    limit = search_limit(center, config)
    if limit <= 0:
        raise InfeasibleCenter(
            f"center is {config.rbar - limit:.1f} m from c0, searching distance is {config.rbar} m"
        )
    rbar, dr, alpha = config.rbar, config.delta_r, config.alpha

    empty = SobestResult(center, 0.0, 0.0, 0.0, 0.0, 0.0, (), ())
    if limit < dr:
        return empty

    prof = build_profile(dataset, center, dr, limit, rbar)
    n = prof.n_bins
    radii = np.arange(1, n + 1, dtype=float) * dr
    q = quality_arrays(radii, prof.cum_relevant, prof.cum_all, prof.total_relevant_in_rbar,
                       rbar, alpha)

    # Phase 1
    feasible = q["precision"] >= config.eta
    if not feasible.any():
        return SobestResult(center, 0.0, 0.0, 0.0, 0.0, 0.0, (), (), prof)
    m = int(np.flatnonzero(feasible)[-1]) + 1

    # Phase 2: last index attaining the max gives the larger-radius tie-break
    cand = np.where(feasible[:m], q["beq"][:m], -np.inf)
    best = float(cand.max())
    i = int(np.flatnonzero(cand == best)[-1])

    total = prof.total_relevant_in_rbar
    curve = tuple(
        QualityPoint(
            radius=float(radii[j]),
            tp=int(prof.cum_relevant[j]),
            fp=int(prof.cum_all[j] - prof.cum_relevant[j]),
            fn_=int(total - prof.cum_relevant[j]),
            precision=float(q["precision"][j]),
            recall=float(q["recall"][j]),
            f_measure=float(q["f_measure"][j]),
            beq=float(q["beq"][j]),
        )
        for j in range(m)
    )
    radius = float(radii[i])
    return SobestResult(
        center=center,
        radius=radius,
        f_measure=float(q["f_measure"][i]),
        beq=best,
        precision=float(q["precision"][i]),
        r_m=float(radii[m - 1]),
        quality_curve=curve,
        members=tuple(members_within(prof, dataset, radius)),
        profile=prof,
    )
