import csv
import json

import pytest

from socialpoi.cli import EXIT_INFEASIBLE, EXIT_MALFORMED, main
from socialpoi.core import PoiConfig
from socialpoi.geojson import ring_is_valid
from socialpoi.ingest import read_records, write_poi, write_records

from conftest import C, ring_dataset


def _gen(tmp_path, preset="esb", extra=None):
    out = tmp_path / "scene"
    argv = ["gen", "--preset", preset, "--out", str(out)]
    if extra:
        tmp_path.mkdir(parents=True, exist_ok=True)
        spec = tmp_path / "spec.toml"
        spec.write_text("".join(f"{k} = {json.dumps(v)}\n" for k, v in extra.items()))
        argv += ["--spec", str(spec)]
    assert main(argv) == 0
    return out


def _boundary(doc):
    return next(f for f in doc["features"] if f["properties"]["role"] == "boundary")


def test_gen_estimate_deterministic(tmp_path, capsys):
    a = _gen(tmp_path / "a", extra={"n_relevant": 120, "n_irrelevant": 600, "seed": 3})
    b = _gen(tmp_path / "b", extra={"n_relevant": 120, "n_irrelevant": 600, "seed": 3})
    assert (a / "records.jsonl").read_bytes() == (b / "records.jsonl").read_bytes()
    docs = []
    for d in (a, b):
        out = d / "est.geojson"
        assert main(["estimate", "--data", str(d / "records.jsonl"), "--poi", str(d / "poi.toml"),
                     "--out", str(out)]) == 0
        docs.append(json.loads(out.read_text()))
    assert docs[0] == docs[1]
    geom = _boundary(docs[0])["geometry"]
    assert geom["type"] == "Polygon"
    assert ring_is_valid(geom["coordinates"][0])


def test_estimate_stdout_and_plot(tmp_path, capsys):
    d = _gen(tmp_path, extra={"n_relevant": 80, "n_irrelevant": 300})
    capsys.readouterr()
    png = tmp_path / "map.png"
    assert main(["estimate", "--data", str(d / "records.jsonl"), "--poi", str(d / "poi.toml"),
                 "--method", "sobest", "--alpha", "0.5", "--plot", str(png)]) == 0
    doc = json.loads(capsys.readouterr().out)
    props = _boundary(doc)["properties"]
    assert props["method"] == "sobest" and props["alpha"] == 0.5
    assert png.stat().st_size > 0 and png.read_bytes()[:4] == b"\x89PNG"


def test_symmetric_scene_methods_agree(tmp_path):
    rings = [(30.0 + 5 * (k % 3), 60.0 * k, True) for k in range(6)]
    rings += [(30.0 + 5 * (k % 3), 60.0 * k + 180, True) for k in range(6)]
    rings += [(150.0, 45.0 * k, False) for k in range(8)]
    ds = ring_dataset(C, rings)
    write_records(tmp_path / "r.jsonl", ds.records)
    write_poi(tmp_path / "p.toml", PoiConfig("sym", ("x",), C, r_cover=20.0))
    docs = {}
    for m in ("sobest", "isobest"):
        out = tmp_path / f"{m}.geojson"
        assert main(["estimate", "--data", str(tmp_path / "r.jsonl"), "--poi", str(tmp_path / "p.toml"),
                     "--method", m, "--out", str(out)]) == 0
        docs[m] = _boundary(json.loads(out.read_text()))
    iso = docs["isobest"]["properties"]
    assert iso["c_star"] == [C.lon, C.lat]
    assert docs["isobest"]["geometry"] == docs["sobest"]["geometry"]
    assert iso["r_star_m"] == docs["sobest"]["properties"]["r_star_m"]


def test_compare_offcenter(tmp_path, capsys):
    d = _gen(tmp_path, preset="offcenter", extra={"seed": 1})
    out = tmp_path / "cmp"
    assert main(["compare", "--data", str(d / "records.jsonl"), "--poi", str(d / "poi.toml"),
                 "--alphas", "0,0.5,1", "--out", str(out)]) == 0
    assert "isobest" in capsys.readouterr().out
    with open(out / "compare.tsv") as fh:
        rows = list(csv.DictReader(fh, delimiter="\t"))
    assert len(rows) == 9
    beq = {(r["method"], float(r["alpha"])): float(r["beq"]) for r in rows}
    for a in (0.0, 0.5, 1.0):
        assert beq[("isobest", a)] >= beq[("sobest", a)]
    assert (out / "compare.png").read_bytes()[:4] == b"\x89PNG"


def test_bench_small(tmp_path, capsys):
    out = tmp_path / "bench"
    assert main(["bench", "--sizes", "500,1000", "--seeds", "2", "--repeat", "1", "--out", str(out)]) == 0
    with open(out / "bench.csv") as fh:
        rows = list(csv.DictReader(fh))
    assert [int(r["n_all"]) for r in rows] == [500, 1000]
    for col in ("mean_runtime", "stdev"):
        assert all(float(r[col]) >= 0 for r in rows)
    assert "r2=" in (out / "fit.txt").read_text()
    assert (out / "bench.png").exists()


def test_tag(tmp_path):
    d = _gen(tmp_path, extra={"n_relevant": 20, "n_irrelevant": 30})
    q = tmp_path / "q.txt"
    q.write_text("# comment\nempire state\n")
    out = tmp_path / "tagged.jsonl"
    assert main(["tag", "--in", str(d / "records.jsonl"), "--queries", str(q), "--out", str(out)]) == 0
    original, _ = read_records(d / "records.jsonl")
    tagged, _ = read_records(out)
    assert [r.id for r in tagged] == [r.id for r in original]
    assert sum(r.relevant for r in tagged) == sum(r.relevant for r in original) == 20


def test_infeasible_config_exit_code(tmp_path, capsys):
    d = _gen(tmp_path, extra={"n_relevant": 20, "n_irrelevant": 30})
    poi = d / "poi.toml"
    poi.write_text(poi.read_text() + "eta = 1.5\n")
    rc = main(["estimate", "--data", str(d / "records.jsonl"), "--poi", str(poi)])
    assert rc == EXIT_INFEASIBLE
    assert "infeasible" in capsys.readouterr().err


def test_malformed_input_exit_code(tmp_path, capsys):
    d = _gen(tmp_path, extra={"n_relevant": 20, "n_irrelevant": 30})
    bad = tmp_path / "bad.jsonl"
    bad.write_text('{"id": "1", "lat": 40.7\n')
    rc = main(["estimate", "--data", str(bad), "--poi", str(d / "poi.toml")])
    assert rc == EXIT_MALFORMED
    assert capsys.readouterr().err


def test_unknown_preset_rejected():
    with pytest.raises(SystemExit):
        main(["gen", "--preset", "nowhere", "--out", "x"])
