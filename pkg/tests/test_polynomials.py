import pytest
from sympy import Rational
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from src.cells.tableaux import Partition, Tableau, all_partitions, standard_tableaux
from src.core.multipoly import MultiPoly, root
from src.specht.polynomials import (
    commutant_dimension,
    coordinates,
    coxeter_relations_hold,
    g_polynomial,
    hook_length_dimension,
    membership_in_span,
    positive_roots_product,
    representation_matrices,
    representation_matrix,
    specht_basis,
    specht_dimension,
    specht_suite,
)


def test_g_polynomial():
    assert g_polynomial(Tableau.parse("1,3;2")) == root(1, 2, 3)
    assert g_polynomial(Tableau.row(3)) == MultiPoly.one(3)
    assert g_polynomial(Tableau.column(3)) == root(1, 2, 3) * root(1, 3, 3) * root(2, 3, 3)


def test_g_polynomial_degree_is_r():
    for shape in all_partitions(5):
        for T in standard_tableaux(shape):
            g = g_polynomial(T)
            assert g.is_homogeneous and g.degree == shape.r


def test_positive_roots_product():
    assert positive_roots_product((2, 1)) == root(1, 2, 3)
    assert positive_roots_product((2, 2)) == root(1, 2, 4) * root(3, 4, 4)
    with pytest.raises(ValueError):
        positive_roots_product((2, 0))


@pytest.mark.parametrize("parts, dim", [((3,), 1), ((2, 1), 2), ((2, 2), 2), ((3, 2), 5), ((3, 2, 1), 16), ((4, 1, 1), 10)])
def test_dimensions(parts, dim):
    shape = Partition(parts)
    assert hook_length_dimension(shape) == dim
    if shape.n <= 5:
        assert specht_dimension(shape) == dim


def test_coordinates():
    basis = [root(1, 2, 3), root(1, 3, 3)]
    assert coordinates(basis, root(2, 3, 3)) == [Rational(-1), Rational(1)]
    assert coordinates(basis, MultiPoly.variable(1, 3)) is None


class TestMembership:
    def test_mixed_roots_in_two_two(self):
        p = root(1, 4, 4) * root(3, 2, 4)
        assert membership_in_span(p, Partition((2, 2)))

    def test_other_fillings_in_span(self):
        shape = Partition((2, 1))
        assert membership_in_span(root(2, 3, 3), shape)
        assert not membership_in_span(MultiPoly.variable(1, 3), shape)

    def test_wrong_degree_is_not_member(self):
        p = root(1, 2, 3) * root(1, 2, 3)
        assert not membership_in_span(p, Partition((2, 1)))

    def test_zero_is_member(self):
        assert membership_in_span(MultiPoly(3), Partition((2, 1)))

    def test_invalid_inputs(self):
        with pytest.raises(ValueError):
            membership_in_span(root(1, 2, 3) + MultiPoly.one(3), Partition((2, 1)))
        with pytest.raises(ValueError):
            membership_in_span(root(1, 2, 4), Partition((2, 1)))


class TestRepresentation:
    def test_matrices_satisfy_coxeter_relations(self):
        for shape in all_partitions(4):
            assert coxeter_relations_hold(representation_matrices(shape))

    def test_relations_ignore_storage_format(self):
        assert coxeter_relations_hold(representation_matrices(Partition((2,))))
        assert coxeter_relations_hold([DomainMatrix([[QQ(1)]], (1, 1), QQ)])
        assert coxeter_relations_hold([DomainMatrix.eye(2, QQ).to_sparse()])

    def test_relations_can_fail(self):
        doubled = DomainMatrix([[QQ(2)]], (1, 1), QQ)
        assert not coxeter_relations_hold([doubled])
        swap = DomainMatrix([[QQ(0), QQ(1)], [QQ(1), QQ(0)]], (2, 2), QQ)
        assert not coxeter_relations_hold([swap, DomainMatrix.eye(2, QQ)])

    def test_sign_representation(self):
        matrix = representation_matrix(Partition((1, 1, 1)), 1)
        assert matrix.to_Matrix().tolist() == [[-1]]

    def test_irreducible(self):
        shape = Partition((2, 1))
        matrices = representation_matrices(shape)
        assert commutant_dimension(matrices, len(specht_basis(shape))) == 1

    def test_bad_generator(self):
        with pytest.raises(ValueError):
            representation_matrix(Partition((2, 1)), 3)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_suite(n):
    counts = specht_suite(n)
    assert counts["dimension"] == len(all_partitions(n))
    assert counts["commutant"] == len(all_partitions(n))


@pytest.mark.slow
def test_suite_s5():
    assert specht_suite(5)["closure"] == 7
