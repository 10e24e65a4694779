import pytest

from socialpoi.core import GeoCoord, PoiConfig, Record, Dataset, offset

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


C = GeoCoord(40.74844, -73.98566)


def ring_dataset(center=C, rings=()):
    """Records placed at (distance_m, bearing_deg, relevant) triples."""
    recs = []
    for k, (dist, bearing, rel) in enumerate(rings):
        recs.append(Record(str(k), offset(center, dist, bearing), "x" if rel else "", rel))
    return Dataset(tuple(recs))


def example_scene():
    """8 relevant + 12 irrelevant inside 50 m, 6 + 2 inside 20 m, 10 relevant in total."""
    rings = []
    rings += [(11.0 + k, 45.0 * k, True) for k in range(6)]      # inside r2
    rings += [(18.0, 30.0 + 180 * k, False) for k in range(2)]   # inside r2
    rings += [(35.0, 100.0 + 90 * k, True) for k in range(2)]    # r2 < d <= r1
    rings += [(40.0, 15.0 * k, False) for k in range(10)]        # r2 < d <= r1
    rings += [(120.0, 60.0 + 120 * k, True) for k in range(2)]   # outside r1
    config = PoiConfig("toy", ("x",), C, r_cover=20.0, gamma=10.0, delta_r=10.0)
    return ring_dataset(C, rings), config
