import pytest

from src.cells.tableaux import (
    Partition,
    Tableau,
    all_partitions,
    cell_of,
    rsk,
    rsk_inverse,
    schutzenberger_dual,
    standard_tableaux,
    statistics,
)
from src.core.permutations import Permutation, all_permutations


class TestPartition:
    def test_all_partitions_order(self):
        assert [p.parts for p in all_partitions(4)] == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
        assert len(all_partitions(6)) == 11

    @pytest.mark.parametrize(
        "parts, stats",
        [((3,), (0, 3, 3)), ((2, 1), (1, 1, 0)), ((1, 1, 1), (3, 0, -3)), ((2,), (0, 1, 1)), ((1, 1), (1, 0, -1))],
    )
    def test_statistics(self, parts, stats):
        assert statistics(Partition(parts)) == stats

    def test_r_counts_column_pairs(self):
        for shape in all_partitions(6):
            assert shape.r == sum(k * (k - 1) // 2 for k in shape.column_sizes)

    def test_transpose(self):
        assert Partition((3, 1)).transpose == Partition((2, 1, 1))
        for shape in all_partitions(5):
            assert shape.transpose.transpose == shape

    def test_dominance(self):
        assert Partition((2, 2)).dominance_leq(Partition((3, 1)))
        assert Partition((2, 2)).dominance_lt(Partition((3, 1)))
        assert not Partition((3, 1)).dominance_leq(Partition((2, 2)))
        assert not Partition((3, 1, 1, 1)).comparable(Partition((2, 2, 2)))
        with pytest.raises(ValueError):
            Partition((2,)).dominance_leq(Partition((2, 1)))

    def test_addable_and_removable(self):
        assert Partition((1,)).addable() == [Partition((2,)), Partition((1, 1))]
        assert Partition((2, 1)).removable() == [Partition((1, 1)), Partition((2,))]

    @pytest.mark.parametrize("parts", [(1, 2), (2, 0)])
    def test_invalid(self, parts):
        with pytest.raises(ValueError):
            Partition(parts)

    def test_parse(self):
        assert Partition.parse("(3,1)") == Partition((3, 1))
        assert str(Partition((2, 1))) == "(2,1)"


class TestTableau:
    def test_parse(self):
        assert Tableau.parse("1,3;2").rows == ((1, 3), (2,))
        assert Tableau.parse("13/2") == Tableau.parse("1,3;2")
        with pytest.raises(ValueError):
            Tableau.parse("1,3")

    @pytest.mark.parametrize("parts, count", [((2, 1), 2), ((2, 2), 2), ((3, 2), 5), ((3, 2, 1), 16), ((4,), 1)])
    def test_standard_tableaux_counts(self, parts, count):
        tableaux = standard_tableaux(Partition(parts))
        assert len(tableaux) == count
        assert all(T.is_standard for T in tableaux)

    def test_column_reading(self):
        assert Tableau.column_reading(Partition((2, 1))).rows == ((1, 3), (2,))
        assert Tableau.column_reading(Partition((2, 2))).rows == ((1, 3), (2, 4))

    def test_path_round_trip(self):
        for shape in all_partitions(5):
            for T in standard_tableaux(shape):
                assert Tableau.from_path(T.path()) == T

    def test_invalid_path(self):
        with pytest.raises(ValueError):
            Tableau.from_path([Partition((1,)), Partition((3,))])

    def test_content_and_restrict(self):
        T = Tableau.parse("1,2;3")
        assert (T.content(1), T.content(2), T.content(3)) == (0, 1, -1)
        assert T.restrict(2) == Tableau.row(2)

    def test_act(self):
        T = Tableau.parse("1,2;3")
        assert T.act(Permutation((3, 2, 1))).rows == ((3, 2), (1,))
        assert not T.act(Permutation((3, 2, 1))).is_standard


class TestRSK:
    def test_example(self):
        P, Q = rsk(Permutation((2, 3, 1)))
        assert P == Tableau.parse("1,3;2")
        assert Q == Tableau.parse("1,2;3")

    def test_bijection(self):
        pairs = {rsk(w) for w in all_permutations(5)}
        assert len(pairs) == 120
        for w in all_permutations(5):
            assert rsk_inverse(*rsk(w)) == w

    def test_inverse_swaps_tableaux(self):
        for w in all_permutations(4):
            P, Q = rsk(w)
            assert rsk(w.inverse) == (Q, P)

    def test_inverse_rejects_mismatch(self):
        with pytest.raises(ValueError):
            rsk_inverse(Tableau.row(2), Tableau.column(2))

    def test_cell_descriptor(self):
        w = Permutation((2, 3, 1))
        cell = cell_of(w)
        assert cell.two_sided == Partition((2, 1))
        assert cell.to_json() == {"lambda": [2, 1], "left": [[1, 2], [3]], "right": [[1, 3], [2]]}

    def test_schutzenberger_dual_is_involution(self):
        for shape in all_partitions(5):
            for P in standard_tableaux(shape):
                dual = schutzenberger_dual(P)
                assert dual.shape == shape and dual.is_standard
                assert schutzenberger_dual(dual) == P
        assert schutzenberger_dual(Tableau.row(3)) == Tableau.row(3)
