from fractions import Fraction

import pytest

from src.cells.tableaux import Partition, Tableau
from src.core.permutations import Permutation
from src.core.scalars import LaurentScalar
from src.hecke.algebra import Basis, HeckeAlgebra, HeckeElement
from src.twists.idempotents import (
    RationalHeckeElement,
    TableauPath,
    all_paths,
    annihilation_check,
    central_idempotent,
    dominance_leq_tableau,
    gamma,
    idempotent_suite,
    inverse_series,
    quasi_idempotent,
    series_check,
    specialization_check,
    young_idempotent,
    young_idempotent_series,
)

V = LaurentScalar.monomial(1)
Q2 = LaurentScalar.quantum_integer(2)


class TestTableauPath:
    def test_parse_and_tableau(self):
        T = TableauPath.parse("1;1,1;2,1")
        assert T.n == 3
        assert T.shape == Partition((2, 1))
        assert T.tableau() == Tableau.parse("1,3;2")
        assert str(T) == "1;1,1;2,1"
        assert TableauPath.from_tableau(T.tableau()) == T

    @pytest.mark.parametrize("text", ["1;3", "2", "1;1,1;3"])
    def test_invalid(self, text):
        with pytest.raises(ValueError):
            TableauPath.parse(text)

    def test_non_standard_tableau(self):
        with pytest.raises(ValueError):
            TableauPath.from_tableau(Tableau.parse("2,1"))

    def test_dominance(self):
        column, row = TableauPath.parse("1;1,1"), TableauPath.parse("1;2")
        assert dominance_leq_tableau(column, row)
        assert not dominance_leq_tableau(row, column)
        with pytest.raises(ValueError):
            column.dominance_leq(TableauPath.parse("1"))

    def test_dominance_of_tableaux(self):
        lower = Tableau(((1, 4), (2,), (3,)))
        upper = Tableau(((1, 2, 3), (4,)))
        assert dominance_leq_tableau(lower, upper)
        assert not dominance_leq_tableau(upper, lower)

    def test_all_paths(self):
        assert len(all_paths(4)) == 10


class TestTwoStrands:
    def test_column(self):
        algebra = HeckeAlgebra.for_rank(2)
        s = Permutation.parse("s", 2)
        T = TableauPath.parse("1;1,1")
        assert quasi_idempotent(T) == algebra.kl(s).scale(V ** -1 - V)
        assert gamma(T) == V ** -2 - V ** 2
        assert young_idempotent(T) == RationalHeckeElement(algebra.kl(s), Q2)

    def test_row_and_completeness(self):
        algebra = HeckeAlgebra.for_rank(2)
        s = Permutation.parse("s", 2)
        row = young_idempotent(TableauPath.parse("1;2"))
        assert row == 1 - RationalHeckeElement(algebra.kl(s), Q2)
        assert row + young_idempotent(TableauPath.parse("1;1,1")) == 1

    def test_gamma_trivial(self):
        assert gamma(TableauPath.parse("1")) == 1


def test_column_quasi_idempotent_s3():
    T = TableauPath.parse("1;1,1;1,1,1")
    expected = HeckeElement(3, Basis.KL, {Permutation.longest(3): LaurentScalar({-5: 1, -3: -2, -1: 1})})
    assert quasi_idempotent(T) == expected


def test_factor_order_irrelevant():
    for T in all_paths(3):
        assert quasi_idempotent(T, reverse=True) == quasi_idempotent(T)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_suite(n):
    counts = idempotent_suite(n)
    assert counts["complete"] == 1
    assert counts["idempotent"] == len(all_paths(n))


@pytest.mark.slow
def test_suite_s4():
    assert idempotent_suite(4)["idempotent"] == 10


@pytest.mark.parametrize("n", [2, 3])
def test_specialization(n):
    assert specialization_check(n)


def test_specialization_values():
    p = young_idempotent(TableauPath.parse("1;1,1"))
    s = Permutation.parse("s", 2)
    assert p.specialize(1) == {Permutation.identity(2): Fraction(1, 2), s: Fraction(1, 2)}


def test_annihilation():
    for T in all_paths(3):
        assert annihilation_check(T) == 6


def test_central_idempotent_of_sign():
    column = Partition((1, 1, 1))
    assert central_idempotent(column) == young_idempotent(TableauPath.parse("1;1,1;1,1,1"))


class TestSeries:
    def test_inverse_series(self):
        assert inverse_series(Q2, -5) == LaurentScalar({-1: 1, -3: -1, -5: 1})
        assert inverse_series(Q2, 0).is_zero
        with pytest.raises(ValueError):
            inverse_series(LaurentScalar.monomial(1, 2), 0)
        with pytest.raises(ZeroDivisionError):
            inverse_series(LaurentScalar.zero(), 0)

    def test_series_of_column(self):
        series = young_idempotent_series(TableauPath.parse("1;1,1"), order=5)
        s = Permutation.parse("s", 2)
        assert series == HeckeElement(2, Basis.KL, {s: LaurentScalar({-1: 1, -3: -1, -5: 1})})

    @pytest.mark.parametrize("order", [2, 4, 6])
    def test_series_check(self, order):
        for T in all_paths(3):
            assert series_check(T, order)


class TestRationalHeckeElement:
    def test_normal_form(self):
        algebra = HeckeAlgebra.for_rank(2)
        b = algebra.kl(Permutation.parse("s", 2))
        a = RationalHeckeElement(b.scale(Q2 * V), Q2 * Q2 * V ** 3)
        assert a == RationalHeckeElement(b, Q2 * V ** 2)
        assert a.denominator.min_degree == 0
        assert a.denominator.coefficient(a.denominator.max_degree) > 0

    def test_arithmetic(self):
        algebra = HeckeAlgebra.for_rank(2)
        b = RationalHeckeElement(algebra.kl(Permutation.parse("s", 2)), Q2)
        assert b * b == b
        assert b * Q2 == RationalHeckeElement(algebra.kl(Permutation.parse("s", 2)))
        assert (b - b).is_zero
        with pytest.raises(ZeroDivisionError):
            RationalHeckeElement(algebra.one(Basis.KL), 0)

    def test_json(self):
        p = young_idempotent(TableauPath.parse("1;1,1"))
        payload = p.to_json()
        assert payload["basis"] == "KL"
        assert payload["terms"][0][0] == [2, 1]
