"""Record files, keyword relevance tagging and flat key-value configs."""

from __future__ import annotations

import csv
import json
import logging
import re
import unicodedata
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

from socialpoi.core import Dataset, GeoCoord, InvalidParams, PoiConfig, Record

log = logging.getLogger(__name__)

REQUIRED_FIELDS = ("id", "lat", "lon", "text")


class MalformedInput(ValueError):
    pass


@dataclass
class LoadReport:
    n_read: int = 0
    n_dropped: int = 0
    reasons: list[str] = field(default_factory=list)


def normalize_text(text: str) -> str:
    """NFC-normalize, collapse whitespace runs and casefold."""
    return re.sub(r"\s+", " ", unicodedata.normalize("NFC", text)).strip().casefold()


def is_relevant(text: str, queries: Iterable[str]) -> bool:
    norm = normalize_text(text or "")
    return any(q and q in norm for q in (normalize_text(q) for q in queries))


def tag_relevance(records: Iterable[Record], queries: Iterable[str], provenance: str = "") -> Dataset:
    """Flag each record relevant iff its text contains any query
    (case-insensitive substring match after normalization)."""
    queries = [q for q in queries if q and q.strip()]
    if not queries:
        raise InvalidParams("tagging needs at least one non-empty query")
    norm_q = [normalize_text(q) for q in queries]
    out = []
    for rec in records:
        t = normalize_text(rec.text or "")
        out.append(Record(rec.id, rec.coord, rec.text, any(q in t for q in norm_q)))
    return Dataset(tuple(out), provenance=provenance)


def _parse_bool(v) -> bool:
    if isinstance(v, bool):
        return v
    s = str(v).strip().lower()
    if s in ("1", "true", "yes", "t", "y"):
        return True
    if s in ("0", "false", "no", "f", "n", ""):
        return False
    raise ValueError(f"not a boolean: {v!r}")


def _rows(path: Path) -> Iterator[tuple[int, dict]]:
    suffix = path.suffix.lower()
    with open(path, encoding="utf-8", newline="") as fh:
        if suffix == ".csv":
            reader = csv.DictReader(fh)
            missing = [f for f in REQUIRED_FIELDS if f not in (reader.fieldnames or [])]
            if missing:
                raise MalformedInput(f"{path}: CSV header lacks {missing}")
            for lineno, row in enumerate(reader, start=2):
                yield lineno, row
        else:
            for lineno, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                try:
                    row = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise MalformedInput(f"{path}:{lineno}: invalid JSON ({exc.msg})") from exc
                if not isinstance(row, dict):
                    raise MalformedInput(f"{path}:{lineno}: expected a JSON object")
                yield lineno, row


def read_records(path: str | Path, report: LoadReport | None = None) -> tuple[list[Record], bool]:
    """Read a JSONL (default) or CSV record file.

    Records with invalid coordinates are dropped and counted in ``report``.
    Returns the records and whether every row carried a ``relevant`` flag.
    """
    path = Path(path)
    report = report if report is not None else LoadReport()
    records = []
    all_flagged = True
    seen = set()
    for lineno, row in _rows(path):
        report.n_read += 1
        missing = [f for f in REQUIRED_FIELDS if f not in row]
        if missing:
            raise MalformedInput(f"{path}:{lineno}: missing fields {missing}")
        rid = str(row["id"])
        if rid in seen:
            raise MalformedInput(f"{path}:{lineno}: duplicate id {rid!r}")
        try:
            coord = GeoCoord(float(row["lat"]), float(row["lon"]))
        except (TypeError, ValueError) as exc:
            report.n_dropped += 1
            report.reasons.append(f"line {lineno}: {exc}")
            continue
        seen.add(rid)
        if "relevant" in row and row["relevant"] not in (None, ""):
            try:
                relevant = _parse_bool(row["relevant"])
            except ValueError as exc:
                raise MalformedInput(f"{path}:{lineno}: {exc}") from exc
        else:
            relevant = False
            all_flagged = False
        records.append(Record(rid, coord, "" if row["text"] is None else str(row["text"]), relevant))
    if report.n_dropped:
        log.warning("%s: dropped %d of %d records with invalid coordinates",
                    path, report.n_dropped, report.n_read)
    return records, all_flagged


def write_records(path: str | Path, records: Iterable[Record]) -> None:
    """Write records as JSONL, or CSV when the suffix is ``.csv``."""
    path = Path(path)
    rows = ({"id": r.id, "lat": r.coord.lat, "lon": r.coord.lon, "text": r.text,
             "relevant": r.relevant} for r in records)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        if path.suffix.lower() == ".csv":
            w = csv.DictWriter(fh, fieldnames=["id", "lat", "lon", "text", "relevant"])
            w.writeheader()
            w.writerows(rows)
        else:
            for row in rows:
                fh.write(json.dumps(row, ensure_ascii=False) + "\n")


def read_queries(path: str | Path) -> list[str]:
    """One query per line.

    Blank lines are skipped. A line that is a bare ``#`` or starts with
    ``# `` is a comment, while ``#tag`` is kept as a hashtag query.
    """
    out = []
    for ln in Path(path).read_text(encoding="utf-8").splitlines():
        q = ln.strip()
        if not q or q == "#" or q.startswith("# "):
            continue
        out.append(q)
    return out


# -- flat key-value text -------------------------------------------------
#
#   name = "Empire State Building"
#   queries = ["#empirestate", "Empire State"]
#   c0_lat = 40.74844
#
# Values are JSON literals; a bare unquoted word is read as a string.

def parse_kv(text: str, source: str = "<config>") -> dict:
    out = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#") or line.startswith("["):
            continue
        if "=" not in line:
            raise MalformedInput(f"{source}:{lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        try:
            out[key] = json.loads(value)
        except json.JSONDecodeError:
            if value.startswith(("[", "{", '"')):
                raise MalformedInput(f"{source}:{lineno}: bad value for {key!r}") from None
            out[key] = value
    return out


def format_kv(d: dict) -> str:
    return "".join(f"{k} = {json.dumps(v, ensure_ascii=False)}\n" for k, v in d.items())


_POI_KEYS = {"name", "queries", "c0_lat", "c0_lon", "r_cover", "gamma", "eta", "delta_r",
             "alpha", "delta"}


def poi_from_dict(d: dict) -> PoiConfig:
    unknown = set(d) - _POI_KEYS
    if unknown:
        raise MalformedInput(f"unknown POI keys: {sorted(unknown)}")
    for key in ("name", "c0_lat", "c0_lon", "r_cover"):
        if key not in d:
            raise MalformedInput(f"POI config lacks {key!r}")
    queries = d.get("queries", [])
    if isinstance(queries, str):
        queries = [queries]
    kw = {k: float(d[k]) for k in ("gamma", "eta", "delta_r", "alpha", "delta") if k in d}
    return PoiConfig(
        name=str(d["name"]),
        queries=tuple(str(q) for q in queries),
        c0=GeoCoord(float(d["c0_lat"]), float(d["c0_lon"])),
        r_cover=float(d["r_cover"]),
        **kw,
    )


def poi_to_dict(config: PoiConfig) -> dict:
    return {
        "name": config.name,
        "queries": list(config.queries),
        "c0_lat": config.c0.lat,
        "c0_lon": config.c0.lon,
        "r_cover": config.r_cover,
        "gamma": config.gamma,
        "eta": config.eta,
        "delta_r": config.delta_r,
        "alpha": config.alpha,
        "delta": config.delta,
    }


def read_poi(path: str | Path) -> PoiConfig:
    path = Path(path)
    return poi_from_dict(parse_kv(path.read_text(encoding="utf-8"), str(path)))


def write_poi(path: str | Path, config: PoiConfig) -> None:
    Path(path).write_text(format_kv(poi_to_dict(config)), encoding="utf-8")


def load_dataset(data_path: str | Path, config: PoiConfig | None = None) -> Dataset:
    """Read records and tag them with the POI's queries unless every row
    already carries a relevance flag."""
    records, flagged = read_records(data_path)
    if flagged or config is None:
        return Dataset(tuple(records), provenance=str(data_path))
    return tag_relevance(records, config.queries, provenance=str(data_path))
