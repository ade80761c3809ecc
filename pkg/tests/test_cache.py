import json

import pytest

from src.core.errors import CacheFormatError
from src.hecke.cache import KLCache
from src.hecke.kl_table import KLTable

RECORDS = [(0, 0, (1,)), (0, 1, (0, 1)), (1, 1, (1,)), (0, 5, (0, 0, 1, 0, 1))]


def test_save_and_load(tmp_path):
    cache = KLCache(tmp_path)
    cache.save(3, RECORDS)
    loaded = cache.load(3)
    assert loaded == {(y, w): c for y, w, c in RECORDS}


def test_payload_is_deterministic(tmp_path):
    a, b = KLCache(tmp_path / "a"), KLCache(tmp_path / "b")
    a.save(3, RECORDS)
    b.save(3, list(reversed(RECORDS)))
    assert a.paths(3)[0].read_bytes() == b.paths(3)[0].read_bytes()


def test_missing_table(tmp_path):
    assert KLCache(tmp_path).load(4) is None


def test_stale_fingerprint_is_ignored(tmp_path):
    cache = KLCache(tmp_path)
    cache.save(3, RECORDS)
    manifest_path = cache.paths(3)[1]
    manifest = json.loads(manifest_path.read_text())
    manifest["fingerprint"] = "0" * 40
    manifest_path.write_text(json.dumps(manifest))
    assert cache.load(3) is None


def test_checksum_mismatch_is_ignored(tmp_path):
    cache = KLCache(tmp_path)
    cache.save(3, RECORDS)
    bin_path = cache.paths(3)[0]
    payload = bytearray(bin_path.read_bytes())
    payload[-1] ^= 0xFF
    bin_path.write_bytes(bytes(payload))
    assert cache.load(3) is None


@pytest.mark.parametrize("payload", [b"\x01", b"\x40\x00\x00\x00\x00"])
def test_truncated_payload(payload):
    with pytest.raises(CacheFormatError):
        KLCache.decode(payload)


def test_overflow_rejected():
    with pytest.raises(ValueError):
        KLCache.encode([(0, 0, (2 ** 63,))])


def test_full_table_round_trip(tmp_path):
    table = KLTable(4).build(progress=False)
    cache = KLCache(tmp_path)
    cache.save(4, table.to_records())
    restored = KLTable.from_records(4, cache.load(4))
    for y, w, poly in table.items():
        assert restored.h(y, w) == poly
    assert restored.frozen


def test_clear(tmp_path):
    cache = KLCache(tmp_path)
    cache.save(3, RECORDS)
    cache.clear(3)
    assert not any(path.exists() for path in cache.paths(3))
