"""
Diagonalization of the full-twist tower: quasi-idempotents ``k_T``, the
scalars ``γ_T`` and Young idempotents ``p_T = k_T / γ_T`` indexed by standard
tableaux, and central idempotents ``p_λ``.

For ``T`` with shapes ``λ^1 ⊂ ... ⊂ λ^n``,

    k_T = Π_{k=2..n} Π_{ν ⊃ λ^{k-1}, ν ≠ λ^k} (ft_k ⊔ 1 - v^{2x(ν)})
    γ_T = Π_{k=2..n} Π_{ν ⊃ λ^{k-1}, ν ≠ λ^k} (v^{2x(λ^k)} - v^{2x(ν)})

with factors taken in the order k = 2, ..., n.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator

from src.cells.tableaux import Partition, Tableau, all_partitions, rsk, standard_tableaux
from src.core.errors import VerificationError
from src.core.permutations import Permutation
from src.core.scalars import LaurentScalar, RationalScalar, laurent_gcd
from src.hecke.algebra import Basis, HeckeAlgebra, HeckeElement

from .braids import embed, full_twist, jm_element

logger = logging.getLogger(__name__)

WARN_RANK = 5


@dataclass(frozen=True)
class TableauPath:
    """Tower of shapes ``λ^1 ⊂ ... ⊂ λ^n``, each adding one box."""

    shapes: tuple[Partition, ...]

    def __post_init__(self):
        shapes = tuple(self.shapes)
        previous = Partition(())
        for k, shape in enumerate(shapes, start=1):
            if shape.n != k or shape not in previous.addable():
                raise ValueError(f"Invalid tableau path at step {k}: {shape}")
            previous = shape
        object.__setattr__(self, "shapes", shapes)

    @classmethod
    def from_tableau(cls, T: Tableau) -> TableauPath:
        if not T.is_standard:
            raise ValueError(f"{T} is not standard")
        return cls(T.path())

    @classmethod
    def parse(cls, text: str) -> TableauPath:
        """Parses ``"1;2;2,1"`` (shapes separated by ``;``)."""
        return cls(tuple(Partition.parse(chunk) for chunk in text.split(";")))

    @classmethod
    def coerce(cls, value: TableauPath | Tableau) -> TableauPath:
        return value if isinstance(value, TableauPath) else cls.from_tableau(value)

    @property
    def n(self) -> int:
        return len(self.shapes)

    @property
    def shape(self) -> Partition:
        return self.shapes[-1]

    def tableau(self) -> Tableau:
        return Tableau.from_path(self.shapes)

    def restrict(self, k: int) -> TableauPath:
        return TableauPath(self.shapes[:k])

    def steps(self) -> Iterator[tuple[int, Partition, list[Partition]]]:
        """``(k, λ^k, [ν ⊃ λ^{k-1} with ν ≠ λ^k])`` for k = 2..n."""
        for k in range(2, self.n + 1):
            current = self.shapes[k - 1]
            others = [nu for nu in self.shapes[k - 2].addable() if nu != current]
            yield k, current, others

    def dominance_leq(self, other: TableauPath) -> bool:
        """``S <= T`` when ``λ_S^k <= λ_T^k`` for every k."""
        if self.n != other.n:
            raise ValueError(f"Paths of different lengths: {self.n} vs {other.n}")
        return all(a.dominance_leq(b) for a, b in zip(self.shapes, other.shapes))

    def to_json(self) -> list[list[int]]:
        return [shape.to_json() for shape in self.shapes]

    def __str__(self) -> str:
        return ";".join(",".join(map(str, shape.parts)) for shape in self.shapes)


def dominance_leq_tableau(S: TableauPath | Tableau, T: TableauPath | Tableau) -> bool:
    return TableauPath.coerce(S).dominance_leq(TableauPath.coerce(T))


def all_paths(n: int) -> list[TableauPath]:
    """Every standard tableau of size n as a path, grouped by shape."""
    return [TableauPath.from_tableau(T) for shape in all_partitions(n) for T in standard_tableaux(shape)]


def gamma(T: TableauPath | Tableau) -> LaurentScalar:
    """``γ_T``; equals 1 for n = 1."""
    T = TableauPath.coerce(T)
    result = LaurentScalar.one()
    for _, current, others in T.steps():
        top = LaurentScalar.monomial(2 * current.x)
        for nu in others:
            result = result * (top - LaurentScalar.monomial(2 * nu.x))
    return result


# ----------------------------------------------------------------------
# rational elements
# ----------------------------------------------------------------------
class RationalHeckeElement:
    """
    Element of ``H_n ⊗ Q(v)`` as an integral KL-basis numerator over one
    common denominator.

    Canonical form: the denominator is a polynomial with nonzero constant
    term and positive leading coefficient, and its gcd with all numerator
    coefficients is 1.
    """

    __slots__ = ("numerator", "denominator")
    __hash__ = None

    def __init__(self, numerator: HeckeElement, denominator: LaurentScalar | int = 1):
        denominator = LaurentScalar.coerce(denominator)
        if denominator.is_zero:
            raise ZeroDivisionError("RationalHeckeElement with zero denominator")
        numerator = numerator.algebra.to_kl(numerator)
        if numerator.is_zero:
            self.numerator, self.denominator = numerator, LaurentScalar.one()
            return
        common = laurent_gcd([*numerator.terms.values(), denominator])
        denominator = denominator.exact_divide(common)
        sign = -1 if denominator.coefficient(denominator.max_degree) < 0 else 1
        # v-powers and the sign move to the numerator
        unit = LaurentScalar.monomial(-denominator.min_degree, sign)
        self.numerator = HeckeElement(
            numerator.n, Basis.KL, {w: c.exact_divide(common) * unit for w, c in numerator.terms.items()}
        )
        self.denominator = denominator * unit

    @classmethod
    def coerce(cls, value: RationalHeckeElement | HeckeElement) -> RationalHeckeElement:
        return value if isinstance(value, RationalHeckeElement) else cls(value)

    @property
    def n(self) -> int:
        return self.numerator.n

    @property
    def algebra(self) -> HeckeAlgebra:
        return HeckeAlgebra.for_rank(self.n)

    @property
    def is_zero(self) -> bool:
        return self.numerator.is_zero

    @property
    def support(self) -> list[Permutation]:
        return self.numerator.support

    def coefficient(self, w: Permutation) -> RationalScalar:
        return RationalScalar(self.numerator.coefficient(w), self.denominator)

    def terms(self) -> dict[Permutation, RationalScalar]:
        return {w: self.coefficient(w) for w in self.support}

    def __add__(self, other: RationalHeckeElement | HeckeElement | int) -> RationalHeckeElement:
        if isinstance(other, int):
            other = self.algebra.scalar(other, Basis.KL)
        other = RationalHeckeElement.coerce(other)
        if other.denominator == self.denominator:
            return RationalHeckeElement(self.numerator + other.numerator, self.denominator)
        return RationalHeckeElement(
            self.numerator.scale(other.denominator) + other.numerator.scale(self.denominator),
            self.denominator * other.denominator,
        )

    __radd__ = __add__

    def __neg__(self) -> RationalHeckeElement:
        return RationalHeckeElement(-self.numerator, self.denominator)

    def __sub__(self, other) -> RationalHeckeElement:
        if isinstance(other, int):
            other = self.algebra.scalar(other, Basis.KL)
        return self + (-RationalHeckeElement.coerce(other))

    def __rsub__(self, other) -> RationalHeckeElement:
        return (-self) + other

    def __mul__(self, other) -> RationalHeckeElement:
        if isinstance(other, (int, LaurentScalar)):
            return RationalHeckeElement(self.numerator.scale(other), self.denominator)
        if isinstance(other, RationalScalar):
            return RationalHeckeElement(
                self.numerator.scale(other.numerator), self.denominator * other.denominator
            )
        other = RationalHeckeElement.coerce(other)
        return RationalHeckeElement(
            self.algebra.kl_mul(self.numerator, other.numerator),
            self.denominator * other.denominator,
        )

    def __rmul__(self, other) -> RationalHeckeElement:
        if isinstance(other, HeckeElement):
            return RationalHeckeElement(other) * self
        return self * other

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = self.algebra.scalar(other, Basis.KL)
        if isinstance(other, HeckeElement):
            other = RationalHeckeElement(other)
        if not isinstance(other, RationalHeckeElement):
            return NotImplemented
        return self.denominator == other.denominator and self.numerator == other.numerator

    def specialize(self, value: int | Fraction = 1) -> dict[Permutation, Fraction]:
        """
        Coefficients in the standard basis at ``v = value``; at ``v = 1``
        these are group-algebra coefficients.

        Raises
        ------
        ZeroDivisionError
            If the denominator vanishes at ``value``
        """
        den = self.denominator.evaluate(value)
        if den == 0:
            raise ZeroDivisionError(f"Denominator {self.denominator} vanishes at v={value}")
        standard = self.algebra.to_std(self.numerator)
        result = {}
        for w, c in standard.sorted_terms():
            coefficient = c.evaluate(value) / den
            if coefficient:
                result[w] = coefficient
        return result

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "basis": Basis.KL.value,
            "terms": [[w.to_json(), self.coefficient(w).to_json()] for w in self.support],
        }

    def __str__(self) -> str:
        if self.denominator == LaurentScalar.one():
            return str(self.numerator)
        return f"({self.numerator}) / ({self.denominator})"

    def __repr__(self) -> str:
        return f"RationalHeckeElement(n={self.n}, {self})"


# ----------------------------------------------------------------------
# idempotents
# ----------------------------------------------------------------------
@lru_cache(maxsize=None)
def _full_twist_kl(k: int, n: int) -> HeckeElement:
    algebra = HeckeAlgebra.for_rank(k)
    return embed(algebra.to_kl(full_twist(k)), n)


def _warn_cost(n: int, warn_rank: int) -> None:
    if n >= warn_rank:
        logger.warning("Building idempotents of H(S_%d); coefficients grow quickly from rank %d", n, warn_rank)


@lru_cache(maxsize=None)
def _quasi_idempotent(T: TableauPath, reverse: bool) -> HeckeElement:
    n = T.n
    algebra = HeckeAlgebra.for_rank(n)
    factors = []
    for k, _, others in T.steps():
        ft = _full_twist_kl(k, n)
        for nu in others:
            factors.append(ft - algebra.scalar(LaurentScalar.monomial(2 * nu.x), Basis.KL))
    if reverse:
        factors.reverse()
    result = algebra.one(Basis.KL)
    for factor in factors:
        result = algebra.kl_mul(result, factor)
    return result


def quasi_idempotent(T: TableauPath | Tableau, reverse: bool = False, warn_rank: int = WARN_RANK) -> HeckeElement:
    """
    ``k_T`` in the KL basis.

    Parameters
    ----------
    T : TableauPath or Tableau
    reverse : bool, default False
        Multiply the factors in the opposite order (they commute)
    warn_rank : int
        Logs a cost warning from this rank on
    """
    T = TableauPath.coerce(T)
    _warn_cost(T.n, warn_rank)
    return _quasi_idempotent(T, reverse)


def young_idempotent(T: TableauPath | Tableau, warn_rank: int = WARN_RANK) -> RationalHeckeElement:
    """``p_T = k_T / γ_T``."""
    T = TableauPath.coerce(T)
    g = gamma(T)
    if g.is_zero:
        raise ArithmeticError(f"γ vanishes for the path {T}")
    return RationalHeckeElement(quasi_idempotent(T, warn_rank=warn_rank), g)


def central_idempotent(shape: Partition, warn_rank: int = WARN_RANK) -> RationalHeckeElement:
    """``p_λ = Σ_{sh(T) = λ} p_T``."""
    algebra = HeckeAlgebra.for_rank(shape.n)
    result = RationalHeckeElement(algebra.zero(Basis.KL))
    for T in standard_tableaux(shape):
        result = result + young_idempotent(T, warn_rank=warn_rank)
    return result


# ----------------------------------------------------------------------
# series form
# ----------------------------------------------------------------------
def inverse_series(g: LaurentScalar, lowest: int) -> LaurentScalar:
    """
    Terms of exponent ``>= lowest`` of ``1/g`` expanded in ``Z[v][[v^-1]]``.

    Raises
    ------
    ValueError
        If the top coefficient of ``g`` is not ``±1``
    """
    if g.is_zero:
        raise ZeroDivisionError("Series inverse of zero")
    top = g.max_degree
    lead = g.coefficient(top)
    if abs(lead) != 1:
        raise ValueError(f"Top coefficient of {g} is not a unit")
    # g = lead v^top (1 + tail), tail in v^-1 Z[v^-1]
    tail = {top - e: c * lead for e, c in g.coeffs.items() if e != top}
    depth = lowest + top
    if depth > 0:
        return LaurentScalar.zero()
    series = {0: 1}
    for m in range(1, -depth + 1):
        series[m] = -sum(tail.get(j, 0) * series[m - j] for j in range(1, m + 1))
    return LaurentScalar({-m - top: c * lead for m, c in series.items()})


def young_idempotent_series(T: TableauPath | Tableau, order: int) -> HeckeElement:
    """
    ``p_T`` with coefficients expanded in ``Z[v][[v^-1]]`` and truncated to
    exponents ``>= -order``.
    """
    T = TableauPath.coerce(T)
    k_T = quasi_idempotent(T)
    g = gamma(T)
    terms = {}
    for w, c in k_T.terms.items():
        expanded = c * inverse_series(g, -order - c.max_degree)
        terms[w] = LaurentScalar({e: a for e, a in expanded.coeffs.items() if e >= -order})
    return HeckeElement(T.n, Basis.KL, terms)


def series_check(T: TableauPath | Tableau, order: int) -> bool:
    """``γ_T`` times the truncated series agrees with ``k_T`` in exponents ``>= -order + deg γ_T``."""
    T = TableauPath.coerce(T)
    g = gamma(T)
    bound = -order + g.max_degree
    difference = young_idempotent_series(T, order).scale(g) - quasi_idempotent(T)
    for w, c in difference.terms.items():
        if c.max_degree >= bound:
            raise VerificationError("series", {"T": T.to_json(), "order": order, "w": w.to_json()})
    return True


# ----------------------------------------------------------------------
# checks
# ----------------------------------------------------------------------
def annihilation_check(T: TableauPath | Tableau) -> int:
    """
    ``b_{P,Q} p_T = 0`` unless ``Q >= T`` and ``p_T b_{P,Q} = 0`` unless
    ``P >= T``. Returns the number of pairs checked.
    """
    T = TableauPath.coerce(T)
    p = young_idempotent(T)
    algebra = HeckeAlgebra.for_rank(T.n)
    cases = 0
    for w in algebra.elements:
        P, Q = rsk(w)
        b = RationalHeckeElement(algebra.kl(w))
        if not T.dominance_leq(TableauPath.from_tableau(Q)) and not (b * p).is_zero:
            raise VerificationError("annihilation_left", {"T": T.to_json(), "w": w.to_json()})
        if not T.dominance_leq(TableauPath.from_tableau(P)) and not (p * b).is_zero:
            raise VerificationError("annihilation_right", {"T": T.to_json(), "w": w.to_json()})
        cases += 1
    return cases


def idempotent_suite(n: int, warn_rank: int = WARN_RANK) -> dict[str, int]:
    """
    Exact checks over all paths of size n: idempotence, orthogonality,
    completeness, centrality of ``p_λ``, full-twist and JM eigenvalues,
    ``k_T = γ_T p_T``, order independence of the factors.

    Returns
    -------
    dict
        check name -> number of cases
    """
    algebra = HeckeAlgebra.for_rank(n)
    paths = all_paths(n)
    idempotents = {T: young_idempotent(T, warn_rank=warn_rank) for T in paths}
    counts = {
        "idempotent": 0, "orthogonal": 0, "complete": 1, "central": 0,
        "full_twist_eigenvalue": 0, "jm_eigenvalue": 0, "gamma": 0, "factor_order": 0,
    }

    for T, p in idempotents.items():
        witness = {"T": T.to_json()}
        if p * p != p:
            raise VerificationError("idempotent", witness)
        counts["idempotent"] += 1
        for U, q in idempotents.items():
            if U != T:
                if not (p * q).is_zero:
                    raise VerificationError("orthogonal", {**witness, "U": U.to_json()})
                counts["orthogonal"] += 1
        for k in range(1, n + 1):
            ft = RationalHeckeElement(_full_twist_kl(k, n))
            if ft * p != p * LaurentScalar.monomial(2 * T.shapes[k - 1].x):
                raise VerificationError("full_twist_eigenvalue", {**witness, "k": k})
            counts["full_twist_eigenvalue"] += 1
            y = RationalHeckeElement(jm_element(k, n))
            content = T.tableau().content(k)
            if y * p != p * LaurentScalar.monomial(2 * content):
                raise VerificationError("jm_eigenvalue", {**witness, "k": k})
            counts["jm_eigenvalue"] += 1
        if p * gamma(T) != RationalHeckeElement(quasi_idempotent(T)):
            raise VerificationError("gamma", witness)
        counts["gamma"] += 1
        if quasi_idempotent(T, reverse=True) != quasi_idempotent(T):
            raise VerificationError("factor_order", witness)
        counts["factor_order"] += 1

    total = RationalHeckeElement(algebra.zero(Basis.KL))
    for p in idempotents.values():
        total = total + p
    if total != 1:
        raise VerificationError("complete", {"n": n, "sum": str(total)})

    for shape in all_partitions(n):
        p_shape = central_idempotent(shape, warn_rank=warn_rank)
        for i in range(1, n):
            h = RationalHeckeElement(algebra.generator(i))
            if h * p_shape != p_shape * h:
                raise VerificationError("central", {"lambda": shape.to_json(), "i": i})
            counts["central"] += 1
    return counts


def specialization_check(n: int) -> bool:
    """At ``v = 1`` the ``p_T`` have rational coefficients and still sum to 1."""
    identity = Permutation.identity(n)
    total: dict[Permutation, Fraction] = {}
    for T in all_paths(n):
        for w, c in young_idempotent(T).specialize(1).items():
            total[w] = total.get(w, Fraction(0)) + c
    total = {w: c for w, c in total.items() if c}
    if total != {identity: Fraction(1)}:
        raise VerificationError("specialization", {"n": n, "support": sorted(w.to_json() for w in total)})
    return True


def paths_of_shape(shape: Partition) -> Iterable[TableauPath]:
    return (TableauPath.from_tableau(T) for T in standard_tableaux(shape))
