"""
Exhaustive checks of Lusztig's properties for S_n.

`CellClosure` computes the left, right and two-sided preorders directly
from KL-basis generator products and transitive closure. `PropertyVerifier`
runs the property checks one by one, raising `VerificationError` with a
witness on the first violation, and reports the checked cases as a table.
"""
from __future__ import annotations

import logging
from collections import deque
from functools import cached_property

import pandas as pd
from tqdm import tqdm

from src.core.errors import RankBoundError, VerificationError
from src.core.permutations import Permutation
from src.hecke.algebra import HeckeAlgebra

from .asymptotics import CellAnalyzer
from .tableaux import cell_of

logger = logging.getLogger(__name__)


class CellClosure:
    """
    Cell preorders from structure constants.

    ``x <=_L y`` when ``b_x`` occurs in some ``h b_y``; since H is generated
    by the ``b_s``, the relation is the transitive closure of "occurs in
    ``b_s b_y``". Likewise on the right, and the two-sided preorder uses
    both edge sets.

    Parameters
    ----------
    n : int
        Rank
    algebra : HeckeAlgebra, optional
    max_rank : int, default 5
        Ranks above this need ``force=True``
    force : bool, default False
    """

    def __init__(self, n: int, algebra: HeckeAlgebra | None = None, max_rank: int = 5, force: bool = False):
        if n > max_rank and not force:
            raise RankBoundError(f"Cell closure for S_{n} exceeds the bound {max_rank}")
        self.n = n
        self.algebra = algebra or HeckeAlgebra.for_rank(n)
        self.elements = self.algebra.elements

    def _edges(self, side: str) -> dict[Permutation, set[Permutation]]:
        """``y -> {x : b_x occurs in b_s b_y (or b_y b_s)}``."""
        edges = {}
        for y in self.elements:
            below = set()
            for i in range(1, self.n):
                if side == "left":
                    product = self.algebra.left_mul_kl_generator(i, self.algebra.kl(y))
                else:
                    product = self.algebra.right_mul_kl_generator(self.algebra.kl(y), i)
                below.update(product.support)
            edges[y] = below
        return edges

    @staticmethod
    def _closure(edges: dict[Permutation, set[Permutation]]) -> dict[Permutation, frozenset[Permutation]]:
        below = {}
        for y in edges:
            seen = {y}
            queue = deque([y])
            while queue:
                for x in edges[queue.popleft()]:
                    if x not in seen:
                        seen.add(x)
                        queue.append(x)
            below[y] = frozenset(seen)
        return below

    @cached_property
    def below_left(self) -> dict[Permutation, frozenset[Permutation]]:
        return self._closure(self._edges("left"))

    @cached_property
    def below_right(self) -> dict[Permutation, frozenset[Permutation]]:
        return self._closure(self._edges("right"))

    @cached_property
    def below_two_sided(self) -> dict[Permutation, frozenset[Permutation]]:
        left, right = self._edges("left"), self._edges("right")
        return self._closure({y: left[y] | right[y] for y in self.elements})

    def leq_left(self, x: Permutation, y: Permutation) -> bool:
        return x in self.below_left[y]

    def leq_right(self, x: Permutation, y: Permutation) -> bool:
        return x in self.below_right[y]

    def leq_two_sided(self, x: Permutation, y: Permutation) -> bool:
        return x in self.below_two_sided[y]

    @staticmethod
    def _classes(below: dict[Permutation, frozenset[Permutation]]) -> set[frozenset[Permutation]]:
        return {frozenset(x for x in below[y] if y in below[x]) for y in below}

    def left_cells(self) -> set[frozenset[Permutation]]:
        return self._classes(self.below_left)

    def right_cells(self) -> set[frozenset[Permutation]]:
        return self._classes(self.below_right)

    def two_sided_cells(self) -> set[frozenset[Permutation]]:
        return self._classes(self.below_two_sided)

    def check_against_rsk(self) -> int:
        """
        Closure cells equal the RSK cells, and the two-sided order equals
        dominance of shapes. Returns the number of pairs compared.
        """
        def grouped(key) -> set[frozenset[Permutation]]:
            groups: dict = {}
            for w in self.elements:
                groups.setdefault(key(w), set()).add(w)
            return {frozenset(g) for g in groups.values()}

        expectations = [
            ("left_cells", self.left_cells(), grouped(lambda w: cell_of(w).left)),
            ("right_cells", self.right_cells(), grouped(lambda w: cell_of(w).right)),
            ("two_sided_cells", self.two_sided_cells(), grouped(lambda w: cell_of(w).two_sided)),
        ]
        for name, found, expected in expectations:
            if found != expected:
                extra = sorted(sorted(w.to_json() for w in c) for c in found - expected)
                raise VerificationError(f"closure_{name}", {"n": self.n, "unexpected": extra})

        pairs = 0
        for x in self.elements:
            for y in self.elements:
                by_closure = self.leq_two_sided(x, y)
                by_shapes = cell_of(x).two_sided.dominance_leq(cell_of(y).two_sided)
                if by_closure != by_shapes:
                    raise VerificationError(
                        "closure_dominance",
                        {"x": x.to_json(), "y": y.to_json(), "closure": by_closure, "dominance": by_shapes},
                    )
                pairs += 1
        return pairs


class PropertyVerifier:
    """
    Exhaustive verification of the P-properties over S_n.

    Parameters
    ----------
    n : int
        Rank
    closure_max_rank : int, default 5
        The closure oracle (needed for P9, P10, P11, left-cell
        incomparability and order reversal) runs only up to this rank;
        above it the RSK description of the preorders is used
    progress : bool, default False
    """

    def __init__(self, n: int, closure_max_rank: int = 5, progress: bool = False):
        self.n = n
        self.analyzer = CellAnalyzer(n)
        self.algebra = self.analyzer.algebra
        self.elements = self.algebra.elements
        self.progress = progress
        self.closure = CellClosure(n, self.algebra) if n <= closure_max_rank else None

    # ------------------------------------------------------------------
    # shared data
    # ------------------------------------------------------------------
    @cached_property
    def leading_constants(self) -> dict[tuple[Permutation, Permutation, Permutation], int]:
        """
        Nonzero ``t^z_{x,y}`` over all triples; also checks that no
        ``c^z_{x,y}`` has a term below ``v^{-r(z)}``.
        """
        table = {}
        for x in tqdm(self.elements, desc=f"t-constants S_{self.n}", disable=not self.progress):
            for y in self.elements:
                for z, c in self.algebra.kl_basis_product(x, y).terms.items():
                    r = cell_of(z).two_sided.r
                    if c.min_degree < -r:
                        raise VerificationError(
                            "a_bound",
                            {"x": x.to_json(), "y": y.to_json(), "z": z.to_json(), "c": c.to_json()},
                        )
                    value = c.coefficient(-r)
                    if value:
                        table[x, y, z] = value
        return table

    def _leq_lr(self, x: Permutation, y: Permutation) -> bool:
        if self.closure is not None:
            return self.closure.leq_two_sided(x, y)
        return cell_of(x).two_sided.dominance_leq(cell_of(y).two_sided)

    @staticmethod
    def _fail(check: str, **witness) -> None:
        payload = {k: (v.to_json() if hasattr(v, "to_json") else v) for k, v in witness.items()}
        raise VerificationError(check, payload)

    # ------------------------------------------------------------------
    # properties
    # ------------------------------------------------------------------
    def check_p1(self) -> int:
        """Δ(z) >= r(z)."""
        for z in self.elements:
            if self.analyzer.delta(z) < cell_of(z).two_sided.r:
                self._fail("P1", z=z, delta=self.analyzer.delta(z))
        return len(self.elements)

    def check_p4(self) -> int:
        """``x <=_LR y`` implies ``r(x) >= r(y)``."""
        cases = 0
        for x in self.elements:
            for y in self.elements:
                if self._leq_lr(x, y):
                    cases += 1
                    if cell_of(x).two_sided.r < cell_of(y).two_sided.r:
                        self._fail("P4", x=x, y=y)
        return cases

    def check_p7(self) -> int:
        """``t^z_{x,y} = t^{x^-1}_{y,z^-1}``."""
        table = self.leading_constants
        for (x, y, z), value in table.items():
            rotated = table.get((y, z.inverse, x.inverse), 0)
            if rotated != value:
                self._fail("P7", x=x, y=y, z=z, value=value, rotated=rotated)
        return len(table)

    def check_p8(self) -> int:
        """``t^z_{x,y} != 0`` implies ``x ~_L y^-1``, ``y ~_L z`` and ``x ~_R z``."""
        for x, y, z in self.leading_constants:
            if not (
                self.analyzer.same_left_cell(x, y.inverse)
                and self.analyzer.same_left_cell(y, z)
                and self.analyzer.same_right_cell(x, z)
            ):
                self._fail("P8", x=x, y=y, z=z)
        return len(self.leading_constants)

    def check_p3(self) -> int:
        """For distinguished d: ``t^d_{x,y} != 0`` iff ``x = y^-1`` and ``y ~_L d``; the value is 1."""
        distinguished = {w for w in self.elements if w == self.analyzer.distinguished_of_left_cell(w)}
        found = {}
        for (x, y, z), value in self.leading_constants.items():
            if z in distinguished:
                found[x, y, z] = value
        expected = {
            (y.inverse, y, d)
            for d in distinguished
            for y in self.analyzer.left_cell(d)
        }
        if set(found) != expected:
            missing = sorted(
                [x.to_json(), y.to_json(), z.to_json()] for x, y, z in set(found) ^ expected
            )
            self._fail("P3", mismatched=missing)
        for key, value in found.items():
            if value != 1:
                self._fail("P3", x=key[0], y=key[1], d=key[2], value=value)
        return len(expected)

    def check_p5(self) -> int:
        """The coefficient of ``v^{Δ(d)}`` in ``h_{1,d}`` is 1 for distinguished d."""
        identity = Permutation.identity(self.n)
        cases = 0
        for shape in self.analyzer.cells:
            for d in self.analyzer.distinguished_involutions(shape):
                poly = self.algebra.table.h(identity, d)
                if poly[self.analyzer.delta(d)] != 1:
                    self._fail("P5", d=d)
                cases += 1
        return cases

    def check_p9_p11(self) -> int:
        """
        Comparable elements with equal r lie in one cell: on the left (P9),
        the right (P10) and two-sided (P11).
        """
        cases = 0
        for x in self.elements:
            rx = cell_of(x).two_sided.r
            for y in self.elements:
                if cell_of(y).two_sided.r != rx:
                    continue
                cases += 1
                if self._leq_lr(x, y) and cell_of(x).two_sided != cell_of(y).two_sided:
                    self._fail("P11", x=x, y=y)
                if self.closure is None:
                    continue
                if self.closure.leq_left(x, y) and not self.analyzer.same_left_cell(x, y):
                    self._fail("P9", x=x, y=y)
                if self.closure.leq_right(x, y) and not self.analyzer.same_right_cell(x, y):
                    self._fail("P10", x=x, y=y)
        return cases

    def check_p13(self) -> int:
        """
        Each left cell holds exactly one distinguished involution d, and
        ``t^d_{x^-1,x} != 0`` for every x in it; distinguished elements are
        involutions (P6).
        """
        cases = 0
        for shape, left_cells in self.analyzer.cells.items():
            distinguished = self.analyzer.distinguished_involutions(shape)
            for Q, members in left_cells.items():
                inside = [d for d in distinguished if d in members]
                if len(inside) != 1:
                    self._fail("P13", Q=Q, distinguished=[d.to_json() for d in inside])
                d = inside[0]
                if not d.is_involution:
                    self._fail("P6", d=d)
                for x in members:
                    if not self.leading_constants.get((x.inverse, x, d)):
                        self._fail("P13", x=x, d=d)
                    cases += 1
        return cases

    def check_p14(self) -> int:
        """``z ~_LR z^-1``."""
        for z in self.elements:
            if cell_of(z).two_sided != cell_of(z.inverse).two_sided:
                self._fail("P14", z=z)
        return len(self.elements)

    def check_left_incomparable(self) -> int:
        """Distinct left cells inside one two-sided cell are incomparable."""
        if self.closure is None:
            return 0
        cases = 0
        for left_cells in self.analyzer.cells.values():
            reps = [members[0] for members in left_cells.values()]
            for x in reps:
                for y in reps:
                    if x != y:
                        cases += 1
                        if self.closure.leq_left(x, y):
                            self._fail("left_incomparable", x=x, y=y)
        return cases

    def check_w0_on_cells(self) -> int:
        """
        ``w0 ·`` and ``· w0`` transpose shapes and reverse the left and right
        preorders.
        """
        w0 = self.algebra.w0
        cases = 0
        for x in self.elements:
            shape = cell_of(x).two_sided
            if cell_of(w0 * x).two_sided != shape.transpose or cell_of(x * w0).two_sided != shape.transpose:
                self._fail("w0_on_cells", x=x)
            cases += 1
        if self.closure is None:
            return cases
        for x in self.elements:
            for y in self.elements:
                left = self.closure.leq_left(x, y)
                right = self.closure.leq_right(x, y)
                if left != self.closure.leq_left(y * w0, x * w0) or right != self.closure.leq_right(w0 * y, w0 * x):
                    self._fail("w0_on_cells", x=x, y=y)
                cases += 1
        return cases

    def check_distinguished_action(self) -> int:
        """
        ``v^{r(λ)} b_d b_x``: the coefficient on ``b_x`` lies in ``1 + vZ[v]``
        when ``x ~_R d``; every other cell-λ coefficient lies in ``vZ[v]``.
        """
        cases = 0
        for shape in self.analyzer.cells:
            r = shape.r
            for d in self.analyzer.distinguished_involutions(shape):
                for x in self.analyzer.two_sided_cell(shape):
                    for z, c in self.algebra.kl_basis_product(d, x).terms.items():
                        if cell_of(z).two_sided != shape:
                            continue
                        shifted = c.shift(r)
                        if z == x and self.analyzer.same_right_cell(x, d):
                            shifted = shifted - 1
                        if not shifted.in_positive_part():
                            self._fail("distinguished_action", d=d, x=x, z=z, coefficient=c.to_json())
                    cases += 1
        return cases

    def check_tau(self) -> int:
        """τ preserves Δ and r."""
        for w in self.elements:
            if self.analyzer.delta(w.tau()) != self.analyzer.delta(w):
                self._fail("tau", w=w)
            if cell_of(w.tau()).two_sided.r != cell_of(w).two_sided.r:
                self._fail("tau", w=w)
        return len(self.elements)

    def check_closure(self) -> int:
        return 0 if self.closure is None else self.closure.check_against_rsk()

    # ------------------------------------------------------------------
    # driver
    # ------------------------------------------------------------------
    CHECKS = {
        "P1": "check_p1",
        "P3": "check_p3",
        "P4": "check_p4",
        "P5": "check_p5",
        "P7": "check_p7",
        "P8": "check_p8",
        "P9-P11": "check_p9_p11",
        "P13/P6": "check_p13",
        "P14": "check_p14",
        "left_incomparable": "check_left_incomparable",
        "w0_on_cells": "check_w0_on_cells",
        "distinguished_action": "check_distinguished_action",
        "tau": "check_tau",
        "closure": "check_closure",
    }

    def run(self) -> pd.DataFrame:
        """
        Runs every check in order.

        Returns
        -------
        pd.DataFrame
            One row per check with columns ``n``, ``check``, ``cases``,
            ``passed`` (zero cases means the check was skipped)

        Raises
        ------
        VerificationError
            On the first violation
        """
        results = []
        for name, method in self.CHECKS.items():
            logger.info("S_%d: checking %s", self.n, name)
            cases = getattr(self, method)()
            results.append({"n": self.n, "check": name, "cases": cases, "passed": True})
        return pd.DataFrame(results)


def verify_p_properties(n: int, closure_max_rank: int = 5, progress: bool = False) -> pd.DataFrame:
    """Exhaustive P-property report for S_n; see `PropertyVerifier.run`."""
    return PropertyVerifier(n, closure_max_rank=closure_max_rank, progress=progress).run()
