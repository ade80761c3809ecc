import pytest
import yaml

from src.core.errors import VerificationError
from src.core.permutations import Permutation
from src.shapes.complexes import rouquier_shape
from src.shapes.fixtures import FIXTURE_FILE, expected_element, fixture_euler_checks, load_fixtures


def test_load():
    fixtures = load_fixtures()
    assert len(fixtures) == 19
    assert {"F_s", "FT2", "HT3", "FT3", "K_123", "K_1_2_3", "HT4"} <= set(fixtures)
    assert fixtures["HT4"]["shape"].size == 26


def test_all_euler_characteristics_match():
    report = fixture_euler_checks()
    assert len(report) == 19
    assert report["passed"].all()
    assert set(report["kind"]) == {"rouquier", "twist", "quasi_idempotent"}


def test_half_twist_four_matches_computed_shape():
    assert load_fixtures()["HT4"]["shape"] == rouquier_shape(Permutation.longest(4))


def test_version_checked(tmp_path):
    payload = yaml.safe_load(FIXTURE_FILE.read_text())
    payload["version"] = 99
    path = tmp_path / "fixtures.yaml"
    path.write_text(yaml.safe_dump(payload))
    with pytest.raises(ValueError):
        load_fixtures(path)


def test_mismatch_raises(tmp_path):
    payload = {
        "version": 1,
        "fixtures": [{
            "name": "broken",
            "n": 2,
            "expect": {"kind": "rouquier", "w": "s"},
            "degrees": {0: [["s", 0, 1]], 1: [["1", 2, 1]]},
        }],
    }
    path = tmp_path / "fixtures.yaml"
    path.write_text(yaml.safe_dump(payload))
    with pytest.raises(VerificationError) as info:
        fixture_euler_checks(path)
    assert info.value.witness["fixture"] == "broken"


def test_unknown_kind():
    with pytest.raises(ValueError):
        expected_element(2, {"kind": "mystery"})
