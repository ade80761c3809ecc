"""
Lusztig's asymptotic data for S_n: the r-function, Δ, distinguished
involutions, the constants t^z_{x,y} of the J-ring and the cellular form.

Cells are read off RSK: ``w(P, Q)`` lies in the left cell indexed by ``Q``,
the right cell indexed by ``P`` and the two-sided cell of their shape.
"""
from __future__ import annotations

import logging
from collections import defaultdict
from functools import cached_property
from itertools import product

from tqdm import tqdm

from src.core.errors import MethodDisagreementError
from src.core.permutations import Permutation
from src.core.scalars import LaurentScalar
from src.hecke.algebra import HeckeAlgebra

from .tableaux import Partition, Tableau, all_partitions, cell_of, rsk_inverse, standard_tableaux

logger = logging.getLogger(__name__)


class CellAnalyzer:
    """
    Cell-level invariants of H(S_n).

    Parameters
    ----------
    n : int
        Rank
    algebra : HeckeAlgebra, optional
        Shared algebra of rank n by default
    """

    def __init__(self, n: int, algebra: HeckeAlgebra | None = None):
        self.n = n
        self.algebra = algebra or HeckeAlgebra.for_rank(n)
        self.identity = Permutation.identity(n)

    # ------------------------------------------------------------------
    # cell bookkeeping
    # ------------------------------------------------------------------
    @cached_property
    def cells(self) -> dict[Partition, dict[Tableau, list[Permutation]]]:
        """``λ -> Q -> members of the left cell`` in element order."""
        cells: dict[Partition, dict[Tableau, list[Permutation]]] = defaultdict(lambda: defaultdict(list))
        for w in self.algebra.elements:
            cell = cell_of(w)
            cells[cell.two_sided][cell.left].append(w)
        return {shape: dict(left) for shape, left in cells.items()}

    def two_sided_cell(self, shape: Partition) -> list[Permutation]:
        return [w for members in self.cells.get(shape, {}).values() for w in members]

    def left_cell(self, w: Permutation) -> list[Permutation]:
        cell = cell_of(w)
        return self.cells[cell.two_sided][cell.left]

    @staticmethod
    def shape(w: Permutation) -> Partition:
        return cell_of(w).two_sided

    @staticmethod
    def same_left_cell(x: Permutation, y: Permutation) -> bool:
        return cell_of(x).left == cell_of(y).left

    @staticmethod
    def same_right_cell(x: Permutation, y: Permutation) -> bool:
        return cell_of(x).right == cell_of(y).right

    @staticmethod
    def distinguished_of_left_cell(w: Permutation) -> Permutation:
        Q = cell_of(w).left
        return rsk_inverse(Q, Q)

    # ------------------------------------------------------------------
    # r and Δ
    # ------------------------------------------------------------------
    def r_function(self, w: Permutation, method: str = "both") -> int:
        """
        Lusztig's r-function.

        Parameters
        ----------
        w : Permutation
            Any element
        method : {"rows", "structure", "both"}
            ``rows``: the row statistic of the RSK shape; ``structure``: minus
            the lowest v-power of ``c^d_{d,d}`` for the distinguished
            involution ``d`` of the left cell of ``w``; ``both`` compares them.

        Raises
        ------
        MethodDisagreementError
            When the two methods disagree
        """
        by_rows = self.shape(w).r
        if method == "rows":
            return by_rows
        d = self.distinguished_of_left_cell(w)
        constant = self.algebra.structure_constant(d, d, d)
        by_structure = -constant.min_degree
        if method == "structure":
            return by_structure
        if method != "both":
            raise ValueError(f"Unknown method {method!r}")
        if by_rows != by_structure:
            raise MethodDisagreementError(
                f"r({w}) disagrees: rows={by_rows}, structure={by_structure}",
                witness={"w": w.to_json(), "rows": by_rows, "structure": by_structure},
            )
        return by_rows

    def delta(self, w: Permutation) -> int:
        """Lowest exponent of ``h_{1,w}``."""
        poly = self.algebra.table.h(self.identity, w)
        return next(e for e, c in enumerate(poly) if c)

    def delta_pair(self, P: Tableau, Q: Tableau) -> int:
        return self.delta(rsk_inverse(P, Q))

    def d_stat(self, P: Tableau, Q: Tableau) -> int:
        """``d(P, Q) = Δ(w(P, Q)) - r(λ)``."""
        return self.delta_pair(P, Q) - P.shape.r

    def distinguished_involutions(self, shape: Partition) -> set[Permutation]:
        """
        Distinguished involutions of the two-sided cell ``shape``.

        Computed as ``{w(P, P)}`` and independently as ``{w : Δ(w) = r(w)}``.
        """
        by_tableaux = {rsk_inverse(P, P) for P in standard_tableaux(shape)}
        r = shape.r
        by_delta = {w for w in self.two_sided_cell(shape) if self.delta(w) == r}
        if by_tableaux != by_delta:
            raise MethodDisagreementError(
                f"Distinguished involutions of {shape} disagree",
                witness={
                    "lambda": shape.to_json(),
                    "tableaux": sorted(w.to_json() for w in by_tableaux),
                    "delta": sorted(w.to_json() for w in by_delta),
                },
            )
        return by_tableaux

    # ------------------------------------------------------------------
    # J-ring
    # ------------------------------------------------------------------
    def leading_constant(self, x: Permutation, y: Permutation, z: Permutation) -> int:
        """Coefficient of ``v^{-r(z)}`` in ``c^z_{x,y}`` without any cell gate."""
        return self.algebra.structure_constant(x, y, z).coefficient(-self.shape(z).r)

    def j_constant(self, x: Permutation, y: Permutation, z: Permutation) -> int:
        """``t^z_{x,y}``; zero unless all three share a two-sided cell."""
        shape = self.shape(z)
        if self.shape(x) != shape or self.shape(y) != shape:
            return 0
        return self.leading_constant(x, y, z)

    def j_multiply(self, x: Permutation, y: Permutation) -> dict[Permutation, int]:
        """``j_x j_y = Σ_z t^z_{x,y} j_z``."""
        shape = self.shape(x)
        if self.shape(y) != shape:
            return {}
        r = shape.r
        product_ = self.algebra.kl_basis_product(x, y)
        result = {}
        for z, c in product_.sorted_terms():
            if self.shape(z) == shape and c.coefficient(-r):
                result[z] = c.coefficient(-r)
        return result

    # ------------------------------------------------------------------
    # cellular form
    # ------------------------------------------------------------------
    def _phi(self, P: Tableau, Q: Tableau, U: Tableau, V: Tableau) -> LaurentScalar:
        left = rsk_inverse(P, Q)
        right = rsk_inverse(U, V)
        return self.algebra.kl_basis_product(left, right).coefficient(rsk_inverse(P, V))

    def cellular_form(self, Q: Tableau, U: Tableau) -> LaurentScalar:
        """
        ``φ(Q, U)``: coefficient of ``b_{P,V}`` in ``b_{P,Q} b_{U,V}``.

        Computed for the first and the last standard tableaux ``(P, V)`` of
        the shape and required to agree.

        Raises
        ------
        MethodDisagreementError
            If the two choices of ``(P, V)`` give different values
        """
        if Q.shape != U.shape:
            raise ValueError(f"Shape mismatch: {Q.shape} vs {U.shape}")
        tableaux = standard_tableaux(Q.shape)
        first = self._phi(tableaux[0], Q, U, tableaux[0])
        second = self._phi(tableaux[-1], Q, U, tableaux[-1])
        if first != second:
            raise MethodDisagreementError(
                f"Cellular form φ({Q}, {U}) depends on (P, V)",
                witness={"Q": Q.to_json(), "U": U.to_json(), "first": first.to_json(), "second": second.to_json()},
            )
        return first

    def a_value(self, P: Tableau, Q: Tableau) -> int | None:
        """Lowest exponent of ``φ(P, Q)``; None when ``φ`` vanishes."""
        phi = self.cellular_form(P, Q)
        return None if phi.is_zero else phi.min_degree

    # ------------------------------------------------------------------
    # Δ as a distance on tableaux
    # ------------------------------------------------------------------
    def find_metric_failure(self, progress: bool = False) -> tuple[Tableau, Tableau, Tableau] | None:
        """
        Searches for ``(P, Q, R)`` of a common shape with
        ``d(P, Q) + d(Q, R) < d(P, R)``.

        Shapes are scanned in the order of `all_partitions`; tableaux in sorted
        order. Returns the first violating triple or None.
        """
        for shape in tqdm(all_partitions(self.n), desc=f"triangle search S_{self.n}", disable=not progress):
            tableaux = standard_tableaux(shape)
            d = {(P, Q): self.d_stat(P, Q) for P, Q in product(tableaux, repeat=2)}
            for P, Q, R in product(tableaux, repeat=3):
                if d[P, Q] + d[Q, R] < d[P, R]:
                    logger.info("Triangle inequality fails for shape %s: %s, %s, %s", shape, P, Q, R)
                    return P, Q, R
        return None

    # ------------------------------------------------------------------
    # reports
    # ------------------------------------------------------------------
    def cell_report(self) -> list[dict]:
        """One entry per two-sided cell, ``(n)`` first."""
        report = []
        for shape in all_partitions(self.n):
            left_cells = self.cells.get(shape, {})
            report.append({
                "lambda": shape.to_json(),
                "r": shape.r,
                "c": shape.c,
                "x": shape.x,
                "left_cells": [
                    {"Q": Q.to_json(), "members": [w.to_json() for w in members]}
                    for Q, members in sorted(left_cells.items(), key=lambda item: item[0].rows)
                ],
                "distinguished": sorted(w.to_json() for w in self.distinguished_involutions(shape)),
            })
        return report
