import pytest

from src.cells.tableaux import Partition, all_partitions
from src.core.permutations import Permutation
from src.core.scalars import LaurentScalar
from src.hecke.algebra import HeckeAlgebra
from src.shapes.complexes import (
    ComplexShape,
    Summand,
    euler_characteristic,
    half_twist_shape,
    ht_support_stats,
    minimal_cell_degrees,
    rouquier_shape,
)

V = LaurentScalar.monomial(1)


@pytest.fixture
def f_s():
    return rouquier_shape(Permutation.parse("s", 2))


class TestComplexShape:
    def test_rouquier_complex_of_s(self, f_s):
        assert f_s.entries == {
            0: [Summand(Permutation.parse("s", 2), 0, 1)],
            1: [Summand(Permutation.identity(2), 1, 1)],
        }
        assert str(f_s) == "{0: B_s(0); 1: B_1(1)}"
        assert f_s.to_json() == {"n": 2, "degrees": {"0": [["s", 0, 1]], "1": [["1", 1, 1]]}}

    def test_from_rows_merges(self):
        s = Permutation.parse("s", 2)
        shape = ComplexShape.from_rows(2, [(0, s, 1, 1), (0, s, 1, 2), (1, s, 0, 0)])
        assert shape.entries == {0: [Summand(s, 1, 3)]}
        assert shape.size == 3
        assert str(shape) == "{0: 3*B_s(1)}"
        with pytest.raises(ValueError):
            ComplexShape.from_rows(3, [(0, s, 0, 1)])

    def test_shifts(self, f_s):
        algebra = HeckeAlgebra.for_rank(2)
        euler = f_s.euler_characteristic()
        assert f_s.shifted(degree=1).euler_characteristic() == -euler
        assert f_s.shifted(grading=1).euler_characteristic() == euler.scale(V)
        assert f_s.shifted(1, 1).degrees == [1, 2]
        assert not f_s.shifted(grading=1).is_perverse()
        assert euler == algebra.generator(1)

    def test_cells_and_min_degree(self, f_s):
        assert f_s.in_cell(Partition((1, 1))).degrees == [0]
        assert f_s.in_cell(Partition((2,))).min_degree() == 1
        assert ComplexShape(2).min_degree() is None
        assert euler_characteristic(ComplexShape(2)).is_zero


def test_rouquier_euler_characteristic_is_standard_element():
    algebra = HeckeAlgebra.for_rank(4)
    for w in algebra.elements:
        shape = rouquier_shape(w, algebra)
        assert shape.is_perverse()
        assert shape.euler_characteristic() == algebra.standard(w)


def test_half_twist_four():
    shape = half_twist_shape(4)
    assert shape.size == 26
    assert [sum(s.mult for s in shape.entries[d]) for d in shape.degrees] == [1, 3, 6, 7, 5, 3, 1]


def test_minimal_cell_degrees_s3():
    p, m = minimal_cell_degrees(half_twist_shape(3))
    three, hook, column = all_partitions(3)
    assert p == {three: 3, hook: 1, column: 0}
    assert m == {three: 3, hook: 1, column: 0}


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_half_twist_support(n):
    stats = ht_support_stats(n)
    assert set(stats) == set(all_partitions(n))
    for shape, entry in stats.items():
        assert entry["p"] == shape.c


@pytest.mark.slow
def test_half_twist_support_s5():
    assert len(ht_support_stats(5)) == 7


def test_negative_coefficients_rejected(monkeypatch):
    from src.core.errors import VerificationError

    algebra = HeckeAlgebra.for_rank(2)
    monkeypatch.setattr(algebra, "kl_polynomial", lambda y, w: LaurentScalar({0: -1}))
    with pytest.raises(VerificationError):
        rouquier_shape(Permutation.parse("s", 2), algebra)
