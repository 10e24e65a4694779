from dataclasses import replace

import numpy as np
import pytest

from socialpoi.core import GeoCoord, InfeasibleCenter, PoiConfig, distance, offset
from socialpoi.oracle import oracle_beq_curve, oracle_sobest
from socialpoi.sobest import sobest
from socialpoi.synth import SceneSpec, generate

from conftest import C, example_scene, ring_dataset


def test_all_relevant_within_50m():
    ds = ring_dataset(C, [(d, 33.0 * k, True) for k, d in enumerate([3, 8, 14, 22, 31, 38, 44, 47])])
    cfg = PoiConfig("p", ("x",), C, r_cover=20.0)
    res = sobest(ds, C, cfg)
    # F = 1 from 50 m outward; ties resolve to the largest grid radius
    assert res.radius == cfg.rbar
    assert res.f_measure == 1.0
    assert len(res.members) == 8
    assert res.precision == 1.0
    # precision-eligible radii all have precision 1
    assert all(q.precision == 1.0 for q in res.quality_curve if q.tp)


def test_example_scene_curve():
    ds, cfg = example_scene()
    res = sobest(ds, C, cfg)
    by_r = {q.radius: q for q in oracle_beq_curve(ds, C, cfg)}
    assert by_r[20.0].precision == pytest.approx(0.75, abs=1e-12)
    assert by_r[20.0].f_measure == pytest.approx(2 / 3, abs=1e-12)
    assert by_r[50.0].precision == pytest.approx(0.40, abs=1e-12)
    assert by_r[50.0].f_measure == pytest.approx(8 / 15, abs=1e-12)
    # precision drops to 0.4 at 40 m, so the curve stops at 30 m where the
    # 20 m value (F = 2/3) ties and the larger radius wins
    assert res.r_m == 30.0
    assert res.radius == 30.0
    assert res.f_measure == pytest.approx(2 / 3, abs=1e-12)


def two_ring_scene(seed):
    rng = np.random.default_rng(seed)
    rings = [(float(rng.uniform(0, 60)), float(rng.uniform(0, 360)), True) for _ in range(120)]
    rings += [(float(rng.uniform(40, 300)), float(rng.uniform(0, 360)), False) for _ in range(300)]
    rings += [(float(rng.uniform(0, 300)), float(rng.uniform(0, 360)), True) for _ in range(20)]
    return ring_dataset(C, rings)


@pytest.mark.parametrize("alpha", [0.0, 0.5, 1.0])
@pytest.mark.parametrize("seed", range(5))
def test_two_ring_matches_oracle(seed, alpha):
    ds = two_ring_scene(seed)
    cfg = PoiConfig("p", ("x",), C, r_cover=30.0, alpha=alpha)
    res = sobest(ds, C, cfg)
    r_o, b_o = oracle_sobest(ds, C, cfg)
    assert res.radius == r_o
    assert res.beq == pytest.approx(b_o, abs=1e-12)
    curve = oracle_beq_curve(ds, C, cfg)
    for q, o in zip(res.quality_curve, curve):
        assert (q.radius, q.tp, q.fp, q.fn_) == (o.radius, o.tp, o.fp, o.fn_)


def test_grid_shrinks_with_drift():
    ds = two_ring_scene(1)
    cfg = PoiConfig("p", ("x",), C, r_cover=30.0)
    center = offset(C, 55.0, 90.0)
    res = sobest(ds, center, cfg)
    limit = cfg.rbar - distance(center, C)
    assert res.profile.n_bins == int(limit // 10)
    assert res.radius + distance(center, C) <= cfg.rbar


def test_infeasible_center():
    cfg = PoiConfig("p", ("x",), C, r_cover=30.0)
    with pytest.raises(InfeasibleCenter):
        sobest(two_ring_scene(0), offset(C, 301.0, 0.0), cfg)


def test_no_feasible_radius_gives_empty():
    ds = ring_dataset(C, [(5.0, 0, False), (8.0, 90, False), (50.0, 0, True)])
    cfg = PoiConfig("p", ("x",), C, r_cover=10.0, eta=0.9)
    res = sobest(ds, C, cfg)
    assert (res.radius, res.f_measure, res.beq, res.r_m) == (0.0, 0.0, 0.0, 0.0)
    assert res.quality_curve == () and res.members == ()


def test_phase_one_keeps_max_across_dips():
    # precision: 1 at 10 m, 0.33 at 20 m, then 0.6 at 30 and 40 m
    ds = ring_dataset(C, [(5, 0, True), (15, 0, False), (15, 90, False), (25, 0, True), (25, 90, True)])
    cfg = PoiConfig("p", ("x",), C, r_cover=4.0)
    res = sobest(ds, C, cfg)
    assert [q.precision >= 0.5 for q in res.quality_curve] == [True, False, True, True]
    assert res.r_m == 40.0
    assert res.radius == 40.0
    assert res.precision == pytest.approx(0.6)


def test_ties_go_to_larger_radius():
    ds = ring_dataset(C, [(5, 0, True), (6, 90, True)])
    cfg = PoiConfig("p", ("x",), C, r_cover=5.0)
    res = sobest(ds, C, cfg)
    # F = 1 at every radius from 10 to 50 m
    assert res.radius == 50.0


def test_deterministic():
    ds, cfg = generate(SceneSpec(seed=3, n_relevant=200, n_irrelevant=800))
    a = sobest(ds, cfg.c0, replace(cfg, alpha=0.5))
    b = sobest(ds, cfg.c0, replace(cfg, alpha=0.5))
    assert (a.radius, a.beq, a.members) == (b.radius, b.beq, b.members)
    assert a.beq == max(q.beq for q in a.quality_curve if q.precision >= cfg.eta)
