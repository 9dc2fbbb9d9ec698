import json
import os

from qbloch.battery import BATTERY_COUNT, BATTERY_SEED, make_battery
from qbloch.io import parse_qterm, serialize_qterm

BATTERY_DIR = os.path.join(os.path.dirname(__file__), os.pardir, "terms", "battery")


def test_shipped_battery_matches_generator():
    """The term files under terms/battery are exactly the seeded generator
    output — regeneration is deterministic and the files are untampered."""
    terms = make_battery()
    assert len(terms) == BATTERY_COUNT == 60
    for i, t in enumerate(terms):
        path = os.path.join(BATTERY_DIR, f"term_{i:02d}.json")
        with open(path) as f:
            assert json.load(f) == serialize_qterm(t), path


def test_battery_files_all_parse():
    names = sorted(os.listdir(BATTERY_DIR))
    assert len(names) == 60
    ranks = set()
    for name in names:
        t = parse_qterm(os.path.join(BATTERY_DIR, name))
        ranks.add(t.r)
        assert t.epsilon in (1, -1) and t.factors
    assert ranks == {0, 1, 2}


def test_seed_sensitivity():
    other = make_battery(count=5, seed=BATTERY_SEED + 1)
    base = make_battery(count=5)
    assert [serialize_qterm(t) for t in other] != [serialize_qterm(t) for t in base]
