"""
On-disk cache for KL polynomial tables.

One payload per rank (``kl_S{n}.bin``) holding length-prefixed records
``(y_index, w_index, coefficients)`` and a JSON manifest (``kl_S{n}.json``)
with the format version, a fingerprint of the generator conventions, the
record count and a sha256 of the payload. Element indices refer to
`all_permutations(n)` (length, then lexicographic one-line order).
"""
from __future__ import annotations

import hashlib
import json
import logging
from pathlib import Path
from typing import Iterable

import numpy as np

from src.core.errors import CacheFormatError

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1
CONVENTIONS = (
    "H_s^2 = 1 + (v^-1 - v) H_s; b_s = H_s + v; b_w = sum_y h_{y,w} H_y with h in vZ[v]; "
    "one-line images, (xy)(i) = x(y(i)); elements indexed by (length, one-line)"
)
FINGERPRINT = hashlib.sha1(CONVENTIONS.encode("utf-8")).hexdigest()

HEADER_DTYPE = np.dtype("<i4")
COEFF_DTYPE = np.dtype("<i8")
INT64_BOUND = 2 ** 63

Records = dict[tuple[int, int], tuple[int, ...]]


class KLCache:
    """
    Reads and writes KL tables under a cache directory.

    Parameters
    ----------
    directory : Path
        Cache directory; created on first write
    """

    def __init__(self, directory: str | Path):
        self.directory = Path(directory)

    def paths(self, n: int) -> tuple[Path, Path]:
        return self.directory / f"kl_S{n}.bin", self.directory / f"kl_S{n}.json"

    @staticmethod
    def encode(records: Iterable[tuple[int, int, tuple[int, ...]]]) -> tuple[bytes, int]:
        """Serializes records in the given order; returns the payload and record count."""
        chunks = []
        count = 0
        for y_index, w_index, coeffs in records:
            if any(abs(c) >= INT64_BOUND for c in coeffs):
                raise ValueError(f"Coefficient overflow in record ({y_index}, {w_index})")
            header = np.array([y_index, w_index, len(coeffs)], dtype=HEADER_DTYPE).tobytes()
            body = np.array(coeffs, dtype=COEFF_DTYPE).tobytes()
            record = header + body
            chunks.append(np.array([len(record)], dtype=HEADER_DTYPE).tobytes())
            chunks.append(record)
            count += 1
        return b"".join(chunks), count

    @staticmethod
    def decode(payload: bytes) -> Records:
        records: Records = {}
        offset = 0
        size = len(payload)
        step = HEADER_DTYPE.itemsize
        while offset < size:
            if offset + step > size:
                raise CacheFormatError("Truncated length prefix")
            (length,) = np.frombuffer(payload, dtype=HEADER_DTYPE, count=1, offset=offset)
            offset += step
            if offset + int(length) > size or length < 3 * step:
                raise CacheFormatError("Truncated record")
            y_index, w_index, ncoeffs = np.frombuffer(payload, dtype=HEADER_DTYPE, count=3, offset=offset)
            if int(length) != 3 * step + int(ncoeffs) * COEFF_DTYPE.itemsize:
                raise CacheFormatError("Record length does not match its coefficient count")
            coeffs = np.frombuffer(payload, dtype=COEFF_DTYPE, count=int(ncoeffs), offset=offset + 3 * step)
            records[(int(y_index), int(w_index))] = tuple(int(c) for c in coeffs)
            offset += int(length)
        return records

    def save(self, n: int, records: Iterable[tuple[int, int, tuple[int, ...]]]) -> Path:
        """
        Writes the table for S_n.

        Records are sorted by ``(w_index, y_index)`` so the payload is
        byte-deterministic.

        Returns
        -------
        Path
            Path of the payload file
        """
        ordered = sorted(records, key=lambda rec: (rec[1], rec[0]))
        payload, count = self.encode(ordered)
        self.directory.mkdir(parents=True, exist_ok=True)
        bin_path, manifest_path = self.paths(n)
        bin_path.write_bytes(payload)
        manifest = {
            "format_version": FORMAT_VERSION,
            "fingerprint": FINGERPRINT,
            "n": n,
            "records": count,
            "sha256": hashlib.sha256(payload).hexdigest(),
        }
        manifest_path.write_text(json.dumps(manifest, sort_keys=True, indent=2))
        logger.info("Wrote KL table for S_%d (%d records) to %s", n, count, bin_path)
        return bin_path

    def load(self, n: int) -> Records | None:
        """
        Reads the table for S_n.

        Returns
        -------
        dict or None
            ``(y_index, w_index) -> coefficients``; None when missing or
            stale (wrong version, fingerprint or checksum)
        """
        bin_path, manifest_path = self.paths(n)
        if not (bin_path.exists() and manifest_path.exists()):
            logger.info("No cached KL table for S_%d in %s", n, self.directory)
            return None
        try:
            manifest = json.loads(manifest_path.read_text())
        except json.JSONDecodeError:
            logger.warning("Ignoring unreadable manifest %s", manifest_path)
            return None
        if manifest.get("format_version") != FORMAT_VERSION or manifest.get("fingerprint") != FINGERPRINT:
            logger.warning("Ignoring stale KL cache for S_%d (version or conventions changed)", n)
            return None
        if manifest.get("n") != n:
            logger.warning("Ignoring KL cache %s: manifest is for S_%s", bin_path, manifest.get("n"))
            return None
        payload = bin_path.read_bytes()
        if hashlib.sha256(payload).hexdigest() != manifest.get("sha256"):
            logger.warning("Ignoring KL cache for S_%d: checksum mismatch", n)
            return None
        records = self.decode(payload)
        if len(records) != manifest.get("records"):
            raise CacheFormatError(f"Record count mismatch in {bin_path}")
        logger.info("Loaded KL table for S_%d from cache (%d records)", n, len(records))
        return records

    def clear(self, n: int) -> None:
        for path in self.paths(n):
            path.unlink(missing_ok=True)
