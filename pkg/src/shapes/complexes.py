"""
Decategorified shapes of minimal complexes.

A shape records, per homological degree, which ``B_x(k)`` occur and how
often. Its Euler characteristic ``Σ (-1)^i v^k b_x`` lives in the Hecke
algebra, which is all that can be checked here: differentials are never
modelled.
"""
from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable

from src.cells.asymptotics import CellAnalyzer
from src.cells.tableaux import Partition, all_partitions, cell_of
from src.core.errors import VerificationError
from src.core.permutations import Permutation
from src.core.scalars import LaurentScalar
from src.hecke.algebra import Basis, HeckeAlgebra, HeckeElement

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Summand:
    """``mult`` copies of ``B_x(shift)``."""

    x: Permutation
    shift: int
    mult: int = 1

    def to_json(self) -> list:
        return [str(self.x), self.shift, self.mult]


@dataclass
class ComplexShape:
    """
    Graded multiplicities of a complex of Soergel bimodules.

    Parameters
    ----------
    n : int
        Rank
    entries : dict
        Homological degree -> list of `Summand`
    """

    n: int
    entries: dict[int, list[Summand]] = field(default_factory=dict)

    @classmethod
    def from_rows(cls, n: int, rows: Iterable[tuple[int, Permutation, int, int]]) -> ComplexShape:
        """Builds a shape from ``(degree, x, shift, mult)`` rows, merging repeats."""
        counts: dict[tuple[int, Permutation, int], int] = defaultdict(int)
        for degree, x, shift, mult in rows:
            if x.n != n:
                raise ValueError(f"{x} does not lie in S_{n}")
            counts[(degree, x, shift)] += mult
        entries: dict[int, list[Summand]] = defaultdict(list)
        for (degree, x, shift), mult in counts.items():
            if mult:
                entries[degree].append(Summand(x, shift, mult))
        for summands in entries.values():
            summands.sort(key=lambda s: (s.x.sort_key, s.shift))
        return cls(n, dict(entries))

    @property
    def degrees(self) -> list[int]:
        return sorted(self.entries)

    def summands(self) -> Iterable[tuple[int, Summand]]:
        for degree in self.degrees:
            for summand in self.entries[degree]:
                yield degree, summand

    @property
    def size(self) -> int:
        """Number of indecomposable summands counted with multiplicity."""
        return sum(s.mult for _, s in self.summands())

    def is_perverse(self) -> bool:
        """Every summand in degree i is shifted by exactly i."""
        return all(s.shift == degree for degree, s in self.summands())

    def euler_characteristic(self) -> HeckeElement:
        return euler_characteristic(self)

    def shifted(self, degree: int = 0, grading: int = 0) -> ComplexShape:
        """``[degree](grading)``: moves summands to degree ``i + degree``, shift ``k + grading``."""
        return ComplexShape.from_rows(
            self.n, ((d + degree, s.x, s.shift + grading, s.mult) for d, s in self.summands())
        )

    def in_cell(self, shape: Partition) -> ComplexShape:
        """Restriction to the summands ``B_x`` with ``x`` in the two-sided cell ``shape``."""
        return ComplexShape.from_rows(
            self.n, ((d, s.x, s.shift, s.mult) for d, s in self.summands() if cell_of(s.x).two_sided == shape)
        )

    def min_degree(self) -> int | None:
        return self.degrees[0] if self.entries else None

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "degrees": {str(d): [s.to_json() for s in self.entries[d]] for d in self.degrees},
        }

    def __str__(self) -> str:
        parts = []
        for d in self.degrees:
            items = ", ".join(
                f"{s.mult}*B_{s.x}({s.shift})" if s.mult > 1 else f"B_{s.x}({s.shift})" for s in self.entries[d]
            )
            parts.append(f"{d}: {items}")
        return "{" + "; ".join(parts) + "}"


def euler_characteristic(shape: ComplexShape) -> HeckeElement:
    """``Σ (-1)^i v^k b_x`` over summands ``B_x(k)`` in degree i, in the KL basis."""
    terms: dict[Permutation, LaurentScalar] = defaultdict(LaurentScalar.zero)
    for degree, s in shape.summands():
        sign = -s.mult if degree % 2 else s.mult
        terms[s.x] = terms[s.x] + LaurentScalar.monomial(s.shift, sign)
    return HeckeElement(shape.n, Basis.KL, terms)


def rouquier_shape(w: Permutation, algebra: HeckeAlgebra | None = None) -> ComplexShape:
    """
    Shape of the minimal Rouquier complex ``F_w``.

    Each monomial ``a v^i`` of ``h_{w0 w, w0 x}`` contributes ``a`` copies of
    ``B_x(i)`` in degree i, so that the Euler characteristic is ``H_w``.

    Raises
    ------
    VerificationError
        If a coefficient is negative, or a monomial has the wrong parity
        ``(-1)^i != (-1)^{l(w) - l(x)}``
    """
    algebra = algebra or HeckeAlgebra.for_rank(w.n)
    w0 = algebra.w0
    rows = []
    for x in algebra.elements:
        h = algebra.kl_polynomial(w0 * w, w0 * x)
        for i, a in h.items():
            if a < 0:
                raise VerificationError("rouquier_shape_sign", {"w": str(w), "x": str(x), "degree": i, "coeff": a})
            if (i - w.length + x.length) % 2:
                raise VerificationError("rouquier_shape_parity", {"w": str(w), "x": str(x), "degree": i})
            rows.append((i, x, i, a))
    return ComplexShape.from_rows(w.n, rows)


def half_twist_shape(n: int) -> ComplexShape:
    """``HT_n = F_{w0}``."""
    return rouquier_shape(Permutation.longest(n))


def minimal_cell_degrees(shape: ComplexShape) -> tuple[dict[Partition, int | None], dict[Partition, int | None]]:
    """
    Per two-sided cell λ: ``p(λ)``, the least degree of a summand in λ, and
    ``m(λ) = min_{μ >= λ} p(μ)``.
    """
    p = {lam: shape.in_cell(lam).min_degree() for lam in all_partitions(shape.n)}
    m = {}
    for lam in p:
        above = [p[mu] for mu in p if lam.dominance_leq(mu) and p[mu] is not None]
        m[lam] = min(above) if above else None
    return p, m


def ht_support_stats(n: int) -> dict[Partition, dict]:
    """
    Cell-by-cell support of ``HT_n``.

    For each λ the first cell-λ summand appears in degree ``c(λ)``, and the
    degree-``c(λ)`` summands in λ are exactly ``B_{w0 d}(c(λ))`` for ``d``
    a distinguished involution of ``λ^t``.

    Returns
    -------
    dict
        λ -> {"p", "m", "c", "summands"}

    Raises
    ------
    VerificationError
        On the first cell that deviates
    """
    shape = half_twist_shape(n)
    analyzer = CellAnalyzer(n)
    w0 = analyzer.algebra.w0
    p, m = minimal_cell_degrees(shape)
    stats = {}
    for lam in all_partitions(n):
        cell_part = shape.in_cell(lam)
        lowest = cell_part.entries.get(lam.c, [])
        found = {s.x for s in lowest}
        expected = {w0 * d for d in analyzer.distinguished_involutions(lam.transpose)}
        witness = {"n": n, "lambda": lam.to_json(), "p": p[lam], "c": lam.c}
        if p[lam] != lam.c:
            raise VerificationError("ht_min_degree", witness)
        if found != expected or any(s.shift != lam.c or s.mult != 1 for s in lowest):
            raise VerificationError(
                "ht_lowest_summands",
                {**witness, "found": sorted(map(str, found)), "expected": sorted(map(str, expected))},
            )
        stats[lam] = {"p": p[lam], "m": m[lam], "c": lam.c, "summands": sorted(found, key=lambda x: x.sort_key)}

    for lam in stats:
        for mu in stats:
            if lam.dominance_lt(mu) and not stats[lam]["p"] < stats[mu]["p"]:
                raise VerificationError("ht_min_degree_order", {"lambda": lam.to_json(), "mu": mu.to_json()})
    logger.info("HT_%d support checked on %d cells", n, len(stats))
    return stats
