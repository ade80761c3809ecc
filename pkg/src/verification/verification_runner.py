"""
Acceptance suite orchestrator.

`VerificationRunner` runs each criterion in turn up to the rank of the
requested level, recording cases, timing and, on failure, the witness. The
result is a report table in the same shape as the other analyzers produce.
"""
from __future__ import annotations

import json
import logging
import random
import time
from typing import Callable

import pandas as pd
from tqdm import tqdm

from src.cells.asymptotics import CellAnalyzer
from src.cells.properties import verify_p_properties
from src.cells.schutzenberger import (
    distinguished_image_check,
    full_twist_cell_scalar,
    schutzenberger_L,
    twisted_action_check,
)
from src.cells.tableaux import Tableau, all_partitions
from src.core.errors import MethodDisagreementError, VerificationError
from src.core.multipoly import root
from src.core.permutations import Permutation, all_permutations
from src.core.scalars import LaurentScalar
from src.hecke.algebra import Basis, HeckeAlgebra, HeckeElement
from src.shapes.complexes import ht_support_stats, rouquier_shape
from src.shapes.fixtures import fixture_euler_checks, load_fixtures
from src.specht.polynomials import membership_in_span, specht_suite
from src.twists.braids import eigenvalue_separation_check, longest_times_cell, thick_crossing_identity
from src.twists.idempotents import (
    all_paths,
    annihilation_check,
    idempotent_suite,
    series_check,
    specialization_check,
)
from src.twists.relative import relative_suite

logger = logging.getLogger(__name__)

LEVELS = {"fast": 4, "full": 5, "deep": 6}

V = LaurentScalar.monomial(1)
QUANTUM_TWO = LaurentScalar.quantum_integer(2)


class VerificationRunner:
    """
    Runs the acceptance criteria.

    Parameters
    ----------
    level : {"fast", "full", "deep"}
        Largest rank checked: 4, 5 or 6 (overridable through ``levels``)
    seed : int, default 0
        Seed for the randomized checks
    closure_max_rank : int, default 5
        Largest rank for the cell-closure oracle
    levels : dict, optional
        Level name -> rank, usually ``config["verify"]["levels"]``
    progress : bool, default False
        Show tqdm bars on long loops
    """

    def __init__(
        self,
        level: str = "fast",
        seed: int = 0,
        closure_max_rank: int = 5,
        levels: dict | None = None,
        progress: bool = False,
    ):
        levels = levels or LEVELS
        if level not in levels:
            raise ValueError(f"Unknown level {level!r}, expected one of {sorted(levels)}")
        self.level = level
        self.max_rank = int(levels[level])
        self.seed = seed
        self.closure_max_rank = closure_max_rank
        self.progress = progress

        self.criteria: list[tuple[str, Callable[[], int]]] = [
            ("kl_fixtures", self.check_kl_fixtures),
            ("half_twist_expansion", self.check_half_twist_expansion),
            ("kl_squares", self.check_kl_squares),
            ("ht4_shape", self.check_ht4_shape),
            ("mathas", self.check_mathas),
            ("p_properties", self.check_p_properties),
            ("idempotents", self.check_idempotents),
            ("euler_fixtures", self.check_euler_fixtures),
            ("smoothness", self.check_smoothness),
            ("relative_cells", self.check_relative_cells),
            ("specht", self.check_specht),
            ("thick_crossing", self.check_thick_crossing),
            ("metric_failure", self.check_metric_failure),
            ("ht_support", self.check_ht_support),
            ("longest_times_cell", self.check_longest_times_cell),
            ("random_associativity", self.check_random_associativity),
        ]

    # ------------------------------------------------------------------
    # criteria
    # ------------------------------------------------------------------
    def check_kl_fixtures(self) -> int:
        algebra = HeckeAlgebra.for_rank(4)
        identity = Permutation.identity(4)
        expected = {
            "tsut": LaurentScalar({2: 1, 4: 1}),
            "sutsu": LaurentScalar({3: 1, 5: 1}),
        }
        for word, h in expected.items():
            got = algebra.kl_polynomial(identity, Permutation.parse(word, 4))
            if got != h:
                raise VerificationError("kl_fixtures", {"w": word, "h": got.to_json(), "expected": h.to_json()})
        return len(expected)

    def check_half_twist_expansion(self) -> int:
        """``H_sts = b_sts - v(b_st + b_ts) + v^2(b_s + b_t) - v^3``."""
        algebra = HeckeAlgebra.for_rank(3)
        p = lambda word: Permutation.parse(word, 3)
        expected = HeckeElement(3, Basis.KL, {
            p("sts"): 1,
            p("st"): -V, p("ts"): -V,
            p("s"): V * V, p("t"): V * V,
            p("1"): -(V ** 3),
        })
        got = algebra.to_kl(algebra.standard(p("sts")))
        if got != expected:
            raise VerificationError("half_twist_expansion", {"got": got.to_json()})
        return 1

    def check_kl_squares(self) -> int:
        """``b_x b_x`` for ``x = tsut`` and ``b_w b_w`` for ``w = sutsu`` in S_4."""
        algebra = HeckeAlgebra.for_rank(4)
        p = lambda word: Permutation.parse(word, 4)
        two_sq = QUANTUM_TWO * QUANTUM_TWO
        squares = {
            "tsut": {
                p("tsut"): two_sq, algebra.w0: two_sq,
                p("tut"): QUANTUM_TWO, p("sts"): QUANTUM_TWO, p("stsut"): QUANTUM_TWO, p("tsuts"): QUANTUM_TWO,
            },
            "sutsu": {p("sutsu"): QUANTUM_TWO ** 3, algebra.w0: QUANTUM_TWO ** 4},
        }
        for word, terms in squares.items():
            x = p(word)
            got = algebra.kl_basis_product(x, x)
            if got != HeckeElement(4, Basis.KL, terms):
                raise VerificationError("kl_squares", {"x": word, "got": got.to_json()})
        return len(squares)

    def check_ht4_shape(self) -> int:
        computed = rouquier_shape(Permutation.longest(4))
        transcribed = load_fixtures()["HT4"]["shape"]
        if computed != transcribed or computed.size != 26 or not computed.is_perverse():
            raise VerificationError("ht4_shape", {"computed": computed.to_json()})
        return computed.size

    def check_mathas(self) -> int:
        cases = 0
        for n in range(1, min(self.max_rank, 5) + 1):
            algebra = HeckeAlgebra.for_rank(n)
            for y in tqdm(algebra.elements, desc=f"mathas S_{n}", disable=not self.progress):
                schutzenberger_L(y, method="both", algebra=algebra)
                full_twist_cell_scalar(y, algebra)
                cases += 1
            analyzer = CellAnalyzer(n, algebra)
            for shape in all_partitions(n):
                distinguished_image_check(shape, analyzer)
            if n <= 4:
                for y in algebra.elements:
                    twisted_action_check(y, analyzer)
        return cases

    def check_p_properties(self) -> int:
        cases = 0
        for n in range(2, min(self.max_rank, 5) + 1):
            report = verify_p_properties(n, closure_max_rank=self.closure_max_rank, progress=self.progress)
            cases += int(report["cases"].sum())
        return cases

    def check_idempotents(self) -> int:
        cases = 0
        for n in range(1, min(self.max_rank, 4) + 1):
            cases += sum(idempotent_suite(n).values())
            cases += eigenvalue_separation_check(n)
            specialization_check(n)
            for T in all_paths(n):
                cases += annihilation_check(T)
                series_check(T, order=4)
        return cases

    def check_euler_fixtures(self) -> int:
        return len(fixture_euler_checks())

    def check_smoothness(self) -> int:
        cases = 0
        for n in range(1, self.max_rank + 1):
            algebra = HeckeAlgebra.for_rank(n)
            for w in tqdm(algebra.elements, desc=f"smoothness S_{n}", disable=not self.progress):
                algebra.is_smooth(w)
                cases += 1
        return cases

    def check_relative_cells(self) -> int:
        return sum(relative_suite(4, (2, 3)).values())

    def check_specht(self) -> int:
        cases = 0
        for n in range(1, self.max_rank + 1):
            cases += sum(specht_suite(n).values())
        # (x1 - x4)(x3 - x2) for the (2, 2) shape
        p = root(1, 4, 4) * root(3, 2, 4)
        if not membership_in_span(p, Tableau.parse("1,3;2,4").shape):
            raise VerificationError("specht_membership", {"p": p.to_json()})
        return cases + 1

    def check_thick_crossing(self) -> int:
        top = min(4, self.max_rank - 1)
        for k in range(1, top + 1):
            thick_crossing_identity(k)
        return top

    def check_metric_failure(self) -> int:
        if self.max_rank < 6:
            return 0
        triple = CellAnalyzer(6).find_metric_failure(progress=self.progress)
        if triple is None:
            raise VerificationError("metric_failure", {"n": 6}, "No triangle inequality failure found in S_6")
        logger.info("Triangle inequality failure: %s", ", ".join(map(str, triple)))
        return 1

    def check_ht_support(self) -> int:
        return sum(len(ht_support_stats(n)) for n in range(1, min(self.max_rank, 5) + 1))

    def check_longest_times_cell(self) -> int:
        cases = 0
        for n in range(2, min(self.max_rank, 4) + 1):
            for x in all_permutations(n):
                descents = sorted(x.left_descents)
                for size in range(1, len(descents) + 1):
                    longest_times_cell(descents[:size], x)
                    cases += 1
        return cases

    def check_random_associativity(self) -> int:
        """``(b_x b_y) b_z = b_x (b_y b_z)`` on random triples."""
        rng = random.Random(self.seed)
        n = min(self.max_rank, 5)
        algebra = HeckeAlgebra.for_rank(n)
        elements = algebra.elements
        trials = 20
        for _ in range(trials):
            x, y, z = (rng.choice(elements) for _ in range(3))
            left = algebra.kl_mul(algebra.kl_basis_product(x, y), algebra.kl(z))
            right = algebra.kl_mul(algebra.kl(x), algebra.kl_basis_product(y, z))
            if left != right:
                raise VerificationError(
                    "random_associativity",
                    {"seed": self.seed, "x": x.to_json(), "y": y.to_json(), "z": z.to_json()},
                )
        return trials

    # ------------------------------------------------------------------
    # orchestration
    # ------------------------------------------------------------------
    def run(self, only: list[str] | None = None) -> pd.DataFrame:
        """
        Runs the criteria (all of them, or those named in ``only``).

        Failures do not stop the run: the row is marked failed with its
        witness.

        Returns
        -------
        pd.DataFrame
            One row per criterion: ``level``, ``criterion``, ``cases``,
            ``passed``, ``seconds``, ``error``, ``witness`` (JSON text)
        """
        names = [name for name, _ in self.criteria]
        if only:
            unknown = set(only) - set(names)
            if unknown:
                raise ValueError(f"Unknown criteria: {sorted(unknown)}")
        rows = []
        for name, check in self.criteria:
            if only and name not in only:
                continue
            logger.info("[%s] %s: start", self.level, name)
            start = time.perf_counter()
            row = {"level": self.level, "criterion": name, "cases": 0, "passed": True, "error": "", "witness": ""}
            try:
                row["cases"] = check()
            except (VerificationError, MethodDisagreementError) as exc:
                row.update(passed=False, error=str(exc), witness=json.dumps(exc.witness, sort_keys=True, default=str))
                logger.error("[%s] %s failed: %s (seed=%s)", self.level, name, exc, self.seed)
            row["seconds"] = round(time.perf_counter() - start, 3)
            logger.info("[%s] %s: %s in %.2fs", self.level, name, "pass" if row["passed"] else "FAIL", row["seconds"])
            rows.append(row)
        return pd.DataFrame(rows, columns=["level", "criterion", "cases", "passed", "seconds", "error", "witness"])

    @staticmethod
    def summary(report: pd.DataFrame) -> dict:
        return {
            "criteria": len(report),
            "passed": int(report["passed"].sum()),
            "failed": int((~report["passed"]).sum()),
            "cases": int(report["cases"].sum()),
            "seconds": float(report["seconds"].sum()),
        }
