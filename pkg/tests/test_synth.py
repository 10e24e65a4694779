import math

import numpy as np
import pytest

from socialpoi.core import distance
from socialpoi.ingest import is_relevant
from socialpoi.sobest import sobest
from socialpoi.synth import PRESETS, InvalidSpec, SceneSpec, generate


def test_deterministic():
    spec = SceneSpec(seed=42, n_relevant=100, n_irrelevant=300)
    a, ca = generate(spec)
    b, cb = generate(spec)
    assert a.records == b.records and ca == cb
    c, _ = generate(spec.with_(seed=43))
    assert c.records != a.records


def test_no_irrelevant_gives_pure_precision():
    ds, cfg = generate(SceneSpec(seed=1, n_relevant=200, n_irrelevant=0))
    assert all(r.relevant for r in ds)
    res = sobest(ds, cfg.c0, cfg)
    assert all(q.precision == 1.0 for q in res.quality_curve if q.tp > 0)


def test_esb_preset_counts():
    ds, cfg = generate(PRESETS["esb"])
    assert len(ds) == 6812
    assert sum(r.relevant for r in ds) == 1061
    assert cfg.r_cover == 201 and cfg.rbar == 2010


def test_c0_offset_geometry():
    spec = SceneSpec(seed=0, n_relevant=10, n_irrelevant=10, c0_offset=300, offset_bearing=90)
    _, cfg = generate(spec)
    assert distance(cfg.c0, spec.true_center) == pytest.approx(300, rel=1e-3)
    assert cfg.c0.lon > spec.true_lon


def test_relevant_mean_near_truth():
    spec = SceneSpec(n_relevant=400, n_irrelevant=0, relevant_sigma=50.0)
    bound = 3 * spec.relevant_sigma / math.sqrt(spec.n_relevant)
    m_lat = math.pi * 6_371_000.0 / 180
    m_lon = m_lat * math.cos(math.radians(spec.true_lat))
    errs = []
    for seed in range(50):
        ds, _ = generate(spec.with_(seed=seed))
        errs.append(((ds.lats.mean() - spec.true_lat) * m_lat, (ds.lons.mean() - spec.true_lon) * m_lon))
    errs = np.array(errs)
    # each axis mean is N(0, sigma^2/n): 99.7% expected inside the 3-sigma bound
    assert np.mean(np.abs(errs) <= bound) >= 0.95
    pooled_bound = 3 * spec.relevant_sigma / math.sqrt(50 * spec.n_relevant)
    assert np.all(np.abs(errs.mean(axis=0)) <= pooled_bound)


def test_texts_agree_with_flags():
    ds, cfg = generate(SceneSpec(seed=3, n_relevant=50, n_irrelevant=200))
    for r in ds:
        assert is_relevant(r.text, cfg.queries) == r.relevant


def test_invalid_spec():
    with pytest.raises(InvalidSpec):
        SceneSpec(n_relevant=-1)
    with pytest.raises(InvalidSpec):
        SceneSpec(relevant_sigma=0)
    with pytest.raises(InvalidSpec):
        SceneSpec.from_dict({"bogus": 1})


def test_spec_dict_round_trip():
    spec = PRESETS["busch"].with_(seed=7)
    assert SceneSpec.from_dict(spec.to_dict()) == spec
