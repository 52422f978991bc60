import json
from pathlib import Path

from absorbkit.classify import FLAGS
from absorbkit.finring import Ideal
from absorbkit.lab.fixtures import fixture_report, fixture_structures

import brute

GOLDEN = Path(__file__).parent / "golden" / "fixtures.json"


def test_fixture_report_matches_golden():
    assert fixture_report() == json.loads(GOLDEN.read_text())


def test_golden_flags_match_brute_force():
    golden = json.loads(GOLDEN.read_text())
    for name, obj in fixture_structures().items():
        if isinstance(obj, Ideal):
            assert golden[name]["one_abs_prime"] == brute.one_absorbing_ideal(obj.ring, set(obj.elements))
            continue
        want = brute.flags(obj.module, set(obj.elements))
        for f in FLAGS:
            assert golden[name][f] == want[f][0], (name, f)
