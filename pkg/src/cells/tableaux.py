"""
Partitions, Young tableaux and the Robinson–Schensted correspondence.

For ``w`` in one-line notation, ``rsk(w) = (P, Q)`` where ``P`` is the
insertion tableau of the word ``w(1) ... w(n)`` and ``Q`` records the order in
which boxes were created. In these coordinates left cells are the fibres of
``Q``, right cells the fibres of ``P`` and two-sided cells the shapes, and
``rsk(w^-1) = (Q, P)``.
"""
from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import accumulate, zip_longest
from typing import Iterable, Sequence

from src.core.permutations import Permutation


@dataclass(frozen=True)
class Partition:
    """
    Integer partition, read as a Young diagram in English notation.

    Parameters
    ----------
    parts : sequence of int
        Weakly decreasing positive row lengths
    """

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p <= 0 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"Not a partition: {self.parts!r}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> Partition:
        tokens = text.strip().strip("()[]").replace(",", " ").split()
        return cls(tuple(int(t) for t in tokens))

    @property
    def n(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    @cached_property
    def transpose(self) -> Partition:
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p > j) for j in range(self.parts[0])))

    @property
    def column_sizes(self) -> tuple[int, ...]:
        return self.transpose.parts

    @property
    def r(self) -> int:
        """Row statistic ``Σ (i-1) λ_i``; equals ``Σ binom(column size, 2)``."""
        return sum(i * p for i, p in enumerate(self.parts))

    @property
    def c(self) -> int:
        return self.transpose.r

    @property
    def x(self) -> int:
        """Total content ``c - r``."""
        return self.c - self.r

    def boxes(self) -> list[tuple[int, int]]:
        return [(i, j) for i, p in enumerate(self.parts) for j in range(p)]

    def dominance_leq(self, other: Partition) -> bool:
        """``self <= other`` in dominance order (prefix sums)."""
        if self.n != other.n:
            raise ValueError(f"Dominance undefined between partitions of {self.n} and {other.n}")
        mine = accumulate(self.parts)
        theirs = accumulate(other.parts)
        return all(a <= b for a, b in zip_longest(mine, theirs, fillvalue=self.n))

    def dominance_lt(self, other: Partition) -> bool:
        return self != other and self.dominance_leq(other)

    def comparable(self, other: Partition) -> bool:
        return self.dominance_leq(other) or other.dominance_leq(self)

    def addable(self) -> list[Partition]:
        """Partitions obtained by adding one box, top row first."""
        result = []
        parts = list(self.parts)
        for i in range(len(parts) + 1):
            above = parts[i - 1] if i > 0 else None
            current = parts[i] if i < len(parts) else 0
            if above is None or above > current:
                grown = parts[:]
                if i < len(parts):
                    grown[i] += 1
                else:
                    grown.append(1)
                result.append(Partition(tuple(grown)))
        return result

    def removable(self) -> list[Partition]:
        result = []
        parts = list(self.parts)
        for i, p in enumerate(parts):
            below = parts[i + 1] if i + 1 < len(parts) else 0
            if p > below:
                shrunk = parts[:]
                shrunk[i] -= 1
                result.append(Partition(tuple(q for q in shrunk if q)))
        return result

    def to_json(self) -> list[int]:
        return list(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


@lru_cache(maxsize=None)
def all_partitions(n: int) -> tuple[Partition, ...]:
    """Partitions of n in reverse lexicographic order, ``(n)`` first."""
    def build(remaining: int, largest: int) -> list[tuple[int, ...]]:
        if remaining == 0:
            return [()]
        out = []
        for first in range(min(remaining, largest), 0, -1):
            out.extend((first,) + rest for rest in build(remaining - first, first))
        return out

    return tuple(Partition(p) for p in build(n, n))


def statistics(shape: Partition) -> tuple[int, int, int]:
    """``(r, c, x)`` of a shape."""
    return shape.r, shape.c, shape.x


@dataclass(frozen=True)
class Tableau:
    """
    Filling of a Young diagram by ``1..n``, each used once.

    Standardness (increasing rows and columns) is not enforced here because
    Specht generators are defined for arbitrary fillings; see `is_standard`.
    """

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(e) for e in row) for row in self.rows)
        Partition(tuple(len(row) for row in rows))
        entries = sorted(e for row in rows for e in row)
        if entries != list(range(1, len(entries) + 1)):
            raise ValueError(f"Tableau entries must be 1..n: {self.rows!r}")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def parse(cls, text: str) -> Tableau:
        """Parses ``"1,3;2"`` or ``"13/2"`` (digits only when n < 10)."""
        rows = []
        for chunk in text.strip().replace("/", ";").split(";"):
            chunk = chunk.strip()
            if "," in chunk or " " in chunk:
                rows.append(tuple(int(t) for t in chunk.replace(",", " ").split()))
            else:
                rows.append(tuple(int(ch) for ch in chunk))
        return cls(tuple(rows))

    @classmethod
    def from_json(cls, payload: Iterable[Iterable[int]]) -> Tableau:
        return cls(tuple(tuple(row) for row in payload))

    @classmethod
    def row(cls, n: int) -> Tableau:
        return cls((tuple(range(1, n + 1)),))

    @classmethod
    def column(cls, n: int) -> Tableau:
        return cls(tuple((i,) for i in range(1, n + 1)))

    @classmethod
    def column_reading(cls, shape: Partition) -> Tableau:
        """``P_col``: columns filled top to bottom, left to right."""
        rows = [[0] * p for p in shape.parts]
        entry = 1
        for j, size in enumerate(shape.column_sizes):
            for i in range(size):
                rows[i][j] = entry
                entry += 1
        return cls(tuple(tuple(row) for row in rows))

    @classmethod
    def from_path(cls, shapes: Sequence[Partition]) -> Tableau:
        """Inverse of `path`: entry k sits in the box added at step k."""
        rows: list[list[int]] = []
        previous = Partition(())
        for k, shape in enumerate(shapes, start=1):
            if shape.n != k or shape not in previous.addable():
                raise ValueError(f"Invalid tableau path at step {k}: {shape}")
            grown_row = next(
                i for i in range(len(shape.parts))
                if i >= len(previous.parts) or shape.parts[i] != previous.parts[i]
            )
            if grown_row == len(rows):
                rows.append([])
            rows[grown_row].append(k)
            previous = shape
        return cls(tuple(tuple(row) for row in rows))

    @property
    def n(self) -> int:
        return sum(len(row) for row in self.rows)

    @cached_property
    def shape(self) -> Partition:
        return Partition(tuple(len(row) for row in self.rows))

    @property
    def columns(self) -> tuple[tuple[int, ...], ...]:
        return tuple(
            tuple(row[j] for row in self.rows if len(row) > j)
            for j in range(len(self.rows[0]) if self.rows else 0)
        )

    @property
    def is_standard(self) -> bool:
        rows_ok = all(a < b for row in self.rows for a, b in zip(row, row[1:]))
        cols_ok = all(a < b for col in self.columns for a, b in zip(col, col[1:]))
        return rows_ok and cols_ok

    def transpose(self) -> Tableau:
        return Tableau(self.columns)

    def position(self, entry: int) -> tuple[int, int]:
        for i, row in enumerate(self.rows):
            if entry in row:
                return i, row.index(entry)
        raise ValueError(f"{entry} not in tableau")

    def content(self, entry: int) -> int:
        i, j = self.position(entry)
        return j - i

    def restrict(self, k: int) -> Tableau:
        """``T^k``: the subtableau of entries ``<= k`` (T standard)."""
        rows = tuple(tuple(e for e in row if e <= k) for row in self.rows)
        return Tableau(tuple(row for row in rows if row))

    def path(self) -> tuple[Partition, ...]:
        """Shapes ``λ^1 ⊂ ... ⊂ λ^n`` of the restrictions."""
        return tuple(self.restrict(k).shape for k in range(1, self.n + 1))

    def act(self, w: Permutation) -> Tableau:
        """``w(T)``: replaces each entry i by w(i)."""
        if w.n != self.n:
            raise ValueError(f"S_{w.n} cannot act on a tableau with {self.n} boxes")
        return Tableau(tuple(tuple(w.images[e - 1] for e in row) for row in self.rows))

    @property
    def sort_key(self) -> tuple:
        return tuple(-p for p in self.shape.parts), self.rows

    def to_json(self) -> list[list[int]]:
        return [list(row) for row in self.rows]

    def __str__(self) -> str:
        sep = "" if self.n < 10 else ","
        return "/".join(sep.join(map(str, row)) for row in self.rows)


@lru_cache(maxsize=None)
def standard_tableaux(shape: Partition) -> tuple[Tableau, ...]:
    """All standard Young tableaux of ``shape`` in sorted order."""
    if shape.n == 0:
        return ()
    if shape.n == 1:
        return (Tableau(((1,),)),)
    n = shape.n
    result = []
    for smaller in shape.removable():
        grown_row = next(
            i for i in range(len(shape.parts))
            if i >= len(smaller.parts) or shape.parts[i] != smaller.parts[i]
        )
        for sub in standard_tableaux(smaller):
            rows = [list(row) for row in sub.rows]
            if grown_row == len(rows):
                rows.append([])
            rows[grown_row].append(n)
            result.append(Tableau(tuple(tuple(row) for row in rows)))
    return tuple(sorted(result, key=lambda t: t.rows))


def _row_insert(rows: list[list[int]], value: int) -> int:
    """Schensted row insertion; returns the row index of the new box."""
    for i, row in enumerate(rows):
        j = bisect_left(row, value)
        if j == len(row):
            row.append(value)
            return i
        row[j], value = value, row[j]
    rows.append([value])
    return len(rows) - 1


def rsk(w: Permutation) -> tuple[Tableau, Tableau]:
    """
    Robinson–Schensted correspondence.

    Parameters
    ----------
    w : Permutation
        Element of S_n

    Returns
    -------
    tuple[Tableau, Tableau]
        ``(P, Q)``: insertion and recording tableaux of equal shape
    """
    p_rows: list[list[int]] = []
    q_rows: list[list[int]] = []
    for step, value in enumerate(w.images, start=1):
        i = _row_insert(p_rows, value)
        if i == len(q_rows):
            q_rows.append([])
        q_rows[i].append(step)
    return (
        Tableau(tuple(tuple(r) for r in p_rows)),
        Tableau(tuple(tuple(r) for r in q_rows)),
    )


def rsk_inverse(P: Tableau, Q: Tableau) -> Permutation:
    """
    Inverse bumping: the permutation ``w(P, Q)``.

    Raises
    ------
    ValueError
        If the tableaux are not standard or have different shapes
    """
    if P.shape != Q.shape:
        raise ValueError(f"Shape mismatch: {P.shape} vs {Q.shape}")
    if not (P.is_standard and Q.is_standard):
        raise ValueError("rsk_inverse needs standard tableaux")
    rows = [list(row) for row in P.rows]
    images = [0] * P.n
    for k in range(P.n, 0, -1):
        i, _ = Q.position(k)
        value = rows[i].pop()
        for above in range(i - 1, -1, -1):
            row = rows[above]
            j = bisect_left(row, value) - 1
            row[j], value = value, row[j]
        images[k - 1] = value
    return Permutation(tuple(images))


def schutzenberger_dual(P: Tableau) -> Tableau:
    """
    ``P^∨``: transpose of the insertion tableau of ``w0 * w(P, P)``.

    Left multiplication by ``w0`` complements the values, which transposes the
    insertion tableau up to this duality.
    """
    w = rsk_inverse(P, P)
    complemented = Permutation(tuple(P.n + 1 - v for v in w.images))
    return rsk(complemented)[0].transpose()


@dataclass(frozen=True)
class CellDescriptor:
    """Cell coordinates of an element: shape, left cell (Q) and right cell (P)."""

    two_sided: Partition
    left: Tableau
    right: Tableau

    def to_json(self) -> dict:
        return {
            "lambda": self.two_sided.to_json(),
            "left": self.left.to_json(),
            "right": self.right.to_json(),
        }


@lru_cache(maxsize=None)
def cell_of(w: Permutation) -> CellDescriptor:
    P, Q = rsk(w)
    return CellDescriptor(two_sided=P.shape, left=Q, right=P)
