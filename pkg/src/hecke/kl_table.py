"""
Memoized table of Kazhdan–Lusztig polynomials h_{y,w} for S_n.

Columns ``y -> h_{y,w}`` are built by the left multiplication rule

    b_s b_x = b_{sx} + Σ_{z < x, sz < z} μ(z, x) b_z        (sx > x)

with ``s`` the smallest left descent of ``w`` and ``x = s w``. In the
standard basis ``(H_s + v) H_y`` equals ``H_{sy} + v H_y`` when ``sy > y`` and
``H_{sy} + v^-1 H_y`` otherwise, so

    h_{y,w} = h_{sy,x} + v^{±1} h_{y,x} - Σ μ(z, x) h_{y,z}.

Polynomials are stored as coefficient tuples of ``Z[v]`` indexed by exponent.
"""
from __future__ import annotations

import logging
import threading
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator

from tqdm import tqdm

from src.core.errors import RankBoundError
from src.core.permutations import Permutation, all_permutations, bruhat_leq
from src.core.scalars import LaurentScalar

from .cache import KLCache

logger = logging.getLogger(__name__)

Poly = tuple[int, ...]


def _trim(coeffs: dict[int, int]) -> Poly:
    items = {e: c for e, c in coeffs.items() if c}
    if not items:
        return ()
    if min(items) < 0:
        raise ArithmeticError(f"KL recursion produced a negative exponent: {items}")
    return tuple(items.get(e, 0) for e in range(max(items) + 1))


class KLTable:
    """
    KL polynomials of S_n with lazy, thread-safe column construction.

    Parameters
    ----------
    n : int
        Rank

    Attributes
    ----------
    elements : tuple[Permutation, ...]
        S_n in (length, one-line) order; positions are the cache indices
    index : dict[Permutation, int]
        Inverse of `elements`
    """

    def __init__(self, n: int):
        if n < 1:
            raise ValueError(f"Rank must be positive, got {n}")
        self.n = n
        self.elements = all_permutations(n)
        self.index = {w: i for i, w in enumerate(self.elements)}
        self._columns: dict[Permutation, dict[Permutation, Poly]] = {}
        self._mu: dict[Permutation, tuple[tuple[Permutation, int], ...]] = {}
        self._lock = threading.Lock()
        self.frozen = False

    # ------------------------------------------------------------------
    # construction
    # ------------------------------------------------------------------
    def column(self, w: Permutation) -> dict[Permutation, Poly]:
        """``{y: h_{y,w}}`` over the Bruhat interval ``[1, w]``."""
        col = self._columns.get(w)
        if col is not None:
            return col
        if w.n != self.n:
            raise ValueError(f"Element of S_{w.n} queried in the table for S_{self.n}")
        col = self._compute_column(w)
        with self._lock:
            return self._columns.setdefault(w, col)

    def _compute_column(self, w: Permutation) -> dict[Permutation, Poly]:
        if w.length == 0:
            return {w: (1,)}
        i = min(w.left_descents)
        x = w.left_mul_simple(i)
        acc: dict[Permutation, dict[int, int]] = defaultdict(lambda: defaultdict(int))

        for y, poly in self.column(x).items():
            sy = y.left_mul_simple(i)
            for e, c in enumerate(poly):
                if c:
                    acc[sy][e] += c
            shift = -1 if i in y.left_descents else 1
            for e, c in enumerate(poly):
                if c:
                    acc[y][e + shift] += c

        for z, m in self.mu_list(x):
            if i not in z.left_descents:
                continue
            for y, poly in self.column(z).items():
                for e, c in enumerate(poly):
                    if c:
                        acc[y][e] -= m * c

        column = {}
        for y, coeffs in acc.items():
            poly = _trim(coeffs)
            if poly:
                column[y] = poly
        return column

    def build(self, workers: int = 1, progress: bool = True) -> KLTable:
        """
        Computes every column, one length level at a time.

        Columns of a level only depend on shorter elements, so a level can fan
        out across ``workers`` threads.
        """
        levels: dict[int, list[Permutation]] = defaultdict(list)
        for w in self.elements:
            levels[w.length].append(w)
        bar = tqdm(total=len(self.elements), desc=f"KL table S_{self.n}", disable=not progress)
        with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
            for length in sorted(levels):
                todo = [w for w in levels[length] if w not in self._columns]
                if workers > 1 and len(todo) > 1:
                    list(pool.map(self.column, todo))
                else:
                    for w in todo:
                        self.column(w)
                for w in levels[length]:
                    self.mu_list(w)
                bar.update(len(levels[length]))
                logger.debug("S_%d: finished length %d (%d elements)", self.n, length, len(levels[length]))
        bar.close()
        self.frozen = True
        return self

    # ------------------------------------------------------------------
    # queries
    # ------------------------------------------------------------------
    def h(self, y: Permutation, w: Permutation) -> Poly:
        return self.column(w).get(y, ())

    def kl_polynomial(self, y: Permutation, w: Permutation) -> LaurentScalar:
        """``h_{y,w}`` as a Laurent scalar; zero unless ``y <= w``."""
        if y.n != w.n:
            raise ValueError(f"Rank mismatch: S_{y.n} vs S_{w.n}")
        return LaurentScalar.from_dense(0, self.h(y, w))

    def mu(self, z: Permutation, w: Permutation) -> int:
        """Coefficient of ``v^1`` in ``h_{z,w}`` (zero on the diagonal)."""
        if z == w:
            return 0
        poly = self.h(z, w)
        return poly[1] if len(poly) > 1 else 0

    def mu_list(self, w: Permutation) -> tuple[tuple[Permutation, int], ...]:
        """Nonzero ``(z, μ(z, w))`` for ``z < w``."""
        cached = self._mu.get(w)
        if cached is not None:
            return cached
        entries = tuple(
            sorted(
                ((z, poly[1]) for z, poly in self.column(w).items() if z != w and len(poly) > 1 and poly[1]),
                key=lambda item: item[0].sort_key,
            )
        )
        with self._lock:
            return self._mu.setdefault(w, entries)

    def items(self) -> Iterator[tuple[Permutation, Permutation, Poly]]:
        """``(y, w, h_{y,w})`` for every computed nonzero entry."""
        for w, col in self._columns.items():
            for y, poly in col.items():
                yield y, w, poly

    # ------------------------------------------------------------------
    # persistence
    # ------------------------------------------------------------------
    def to_records(self) -> Iterator[tuple[int, int, Poly]]:
        for y, w, poly in self.items():
            yield self.index[y], self.index[w], poly

    @classmethod
    def from_records(cls, n: int, records: dict[tuple[int, int], Poly]) -> KLTable:
        table = cls(n)
        columns: dict[Permutation, dict[Permutation, Poly]] = defaultdict(dict)
        for (y_index, w_index), poly in records.items():
            columns[table.elements[w_index]][table.elements[y_index]] = poly
        if len(columns) != len(table.elements):
            raise ValueError(f"Cached table for S_{n} is incomplete")
        table._columns = dict(columns)
        for w in table.elements:
            table.mu_list(w)
        table.frozen = True
        return table

    def check_support(self, w: Permutation) -> bool:
        """The column of ``w`` is supported exactly on the Bruhat interval below ``w``."""
        support = set(self.column(w))
        expected = {y for y in self.elements if bruhat_leq(y, w)}
        return support == expected


# ----------------------------------------------------------------------
# per-rank registry
# ----------------------------------------------------------------------
@dataclass
class TableSettings:
    """Process-wide options for KL tables (set from config or CLI flags)."""

    cache_dir: Path | None = None
    use_cache: bool = False
    workers: int = 1
    progress: bool = False
    max_rank: int = 7


SETTINGS = TableSettings()
_TABLES: dict[int, KLTable] = {}
_REGISTRY_LOCK = threading.Lock()


def configure_tables(**options) -> TableSettings:
    """Updates `SETTINGS`; unknown option names raise ``TypeError``."""
    for key, value in options.items():
        if not hasattr(SETTINGS, key):
            raise TypeError(f"Unknown table setting: {key}")
        setattr(SETTINGS, key, value)
    return SETTINGS


def check_rank(n: int, force: bool = False) -> None:
    if n < 1:
        raise ValueError(f"Rank must be positive, got {n}")
    if n > SETTINGS.max_rank and not force:
        raise RankBoundError(f"S_{n} exceeds the configured maximum rank {SETTINGS.max_rank}; use --force")


def get_kl_table(n: int, force: bool = False) -> KLTable:
    """
    Shared table for S_n.

    Loaded from the cache when caching is enabled and a valid file exists;
    otherwise an empty table whose columns fill in on demand.
    """
    table = _TABLES.get(n)
    if table is not None:
        return table
    check_rank(n, force)
    loaded = None
    if SETTINGS.use_cache and SETTINGS.cache_dir is not None:
        records = KLCache(SETTINGS.cache_dir).load(n)
        if records is not None:
            loaded = KLTable.from_records(n, records)
    with _REGISTRY_LOCK:
        return _TABLES.setdefault(n, loaded or KLTable(n))


def build_kl_table(n: int, force: bool = False) -> KLTable:
    """Completes the table for S_n and writes it to the cache when enabled."""
    table = get_kl_table(n, force)
    if not table.frozen:
        logger.info("Building KL table for S_%d", n)
        table.build(workers=SETTINGS.workers, progress=SETTINGS.progress)
        if SETTINGS.use_cache and SETTINGS.cache_dir is not None:
            KLCache(SETTINGS.cache_dir).save(n, table.to_records())
    return table


def reset_tables() -> None:
    """Drops all in-memory tables."""
    with _REGISTRY_LOCK:
        _TABLES.clear()
