import pytest

from src.cells.asymptotics import CellAnalyzer
from src.cells.schutzenberger import (
    distinguished_image_check,
    full_twist_cell_scalar,
    mathas_decompose,
    schutzenberger_L,
    schutzenberger_R,
    twisted_action_check,
    w0_twisted_involutions,
)
from src.cells.tableaux import all_partitions, cell_of
from src.core.permutations import Permutation, all_permutations
from src.core.scalars import LaurentScalar
from src.hecke.algebra import Basis, HeckeElement


def test_schutzenberger_of_s():
    s = Permutation.parse("s", 3)
    assert schutzenberger_L(s) == Permutation.parse("ts", 3)
    assert schutzenberger_R(s) == Permutation.parse("st", 3)


def test_mathas_decomposition_of_s():
    s = Permutation.parse("s", 3)
    decomposition = mathas_decompose(s)
    assert decomposition.head == Permutation.parse("ts", 3)
    assert decomposition.coefficient == -1
    expected = HeckeElement(3, Basis.KL, {Permutation.longest(3): LaurentScalar.monomial(-1)})
    assert decomposition.remainder == expected
    assert decomposition.to_json()["sign_exponent"] == 1


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_methods_agree(n):
    for w in all_permutations(n):
        assert schutzenberger_L(w, method="both") == schutzenberger_L(w)
        assert schutzenberger_R(w, method="both") == schutzenberger_R(w)


def test_involution_preserving_cells():
    for w in all_permutations(4):
        image = schutzenberger_L(w)
        assert schutzenberger_L(image) == w
        assert cell_of(image).left == cell_of(w).left
        assert cell_of(schutzenberger_R(w)).right == cell_of(w).right


def test_unknown_method():
    with pytest.raises(ValueError):
        schutzenberger_L(Permutation.identity(3), method="guess")


@pytest.mark.parametrize("n, count", [(3, 4), (4, 10)])
def test_w0_twisted_involutions(n, count):
    twisted = w0_twisted_involutions(n)
    assert len(twisted) == count
    assert all(w.inverse == w.tau() for w in twisted)


@pytest.mark.parametrize("word, exponent", [("1", 6), ("s", 0), ("st", 0), ("sts", -6)])
def test_full_twist_cell_scalar(word, exponent):
    assert full_twist_cell_scalar(Permutation.parse(word, 3)) == LaurentScalar.monomial(exponent)


def test_twisted_action():
    analyzer = CellAnalyzer(3)
    for y in all_permutations(3):
        d, z = twisted_action_check(y, analyzer)
        assert z == schutzenberger_L(y)
        assert d.is_involution


def test_distinguished_images():
    analyzer = CellAnalyzer(4)
    for shape in all_partitions(4):
        distinguished_image_check(shape, analyzer)
