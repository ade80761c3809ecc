import random

import pytest

from src.core.errors import MethodDisagreementError
from src.core.permutations import Permutation, all_permutations
from src.core.scalars import LaurentScalar
from src.hecke.algebra import Basis, HeckeAlgebra, HeckeElement

V = LaurentScalar.monomial(1)
V_INV = LaurentScalar.monomial(-1)
Q2 = LaurentScalar.quantum_integer(2)


class TestStandardBasis:
    def test_quadratic_relation(self, s3):
        H_s = s3.generator(1)
        assert H_s * H_s == s3.one() + H_s.scale(V_INV - V)

    def test_braid_relation(self, s3):
        H_s, H_t = s3.generator(1), s3.generator(2)
        assert H_s * H_t * H_s == H_t * H_s * H_t == s3.half_twist()

    def test_products_of_reduced_words(self, s4):
        for w in all_permutations(4):
            product = s4.one()
            for i in w.reduced_word:
                product = product * s4.generator(i)
            assert product == s4.standard(w)

    def test_bar_is_involution(self, s4):
        for w in all_permutations(4):
            assert s4.bar_element(s4.bar_standard(w)) == s4.standard(w)

    def test_bar_inverts_generators(self, s3):
        H_s = s3.generator(1)
        assert s3.bar_element(H_s) * H_s == s3.one()


class TestKLBasis:
    def test_b_s(self, s3):
        s = Permutation.parse("s", 3)
        assert s3.kl_element(s) == s3.generator(1) + s3.one().scale(V)

    def test_kl_elements_are_bar_invariant(self, s4):
        for w in all_permutations(4):
            b = s4.kl_element(w)
            assert s4.bar_element(b) == b

    def test_bar_solver_agrees_with_recursion(self, s4):
        for w in all_permutations(4):
            assert s4.kl_element_by_bar_solver(w) == s4.kl_element(w)

    def test_basis_change_methods_agree(self, s4):
        for w in all_permutations(4):
            H_w = s4.standard(w)
            assert s4.to_kl(H_w) == s4.to_kl_inversion(H_w)
            assert s4.to_std(s4.to_kl(H_w)) == H_w

    def test_half_twist_expansion(self, s3):
        p = lambda word: Permutation.parse(word, 3)
        expected = HeckeElement(3, Basis.KL, {
            p("sts"): 1, p("st"): -V, p("ts"): -V, p("s"): V * V, p("t"): V * V, p("1"): -(V ** 3),
        })
        assert s3.to_kl(s3.half_twist()) == expected
        assert s3.half_twist_kl() == expected

    def test_b_s_squared(self, s4):
        s = Permutation.parse("s", 4)
        assert s4.kl_basis_product(s, s) == s4.kl(s).scale(Q2)

    def test_longest_element_square(self, s3):
        w0 = s3.w0
        assert s3.kl_basis_product(w0, w0) == s3.kl(w0).scale(Q2 * LaurentScalar.quantum_integer(3))

    def test_tsut_square(self, s4):
        p = lambda word: Permutation.parse(word, 4)
        x = p("tsut")
        two_sq = Q2 * Q2
        expected = HeckeElement(4, Basis.KL, {
            x: two_sq, s4.w0: two_sq, p("tut"): Q2, p("sts"): Q2, p("stsut"): Q2, p("tsuts"): Q2,
        })
        assert s4.kl_basis_product(x, x) == expected
        assert s4.to_std(expected) == s4.std_mul(s4.kl_element(x), s4.kl_element(x))

    def test_product_matches_standard_multiplication(self, s4):
        rng = random.Random(7)
        elements = all_permutations(4)
        for _ in range(15):
            x, y = rng.choice(elements), rng.choice(elements)
            via_kl = s4.kl_basis_product(x, y)
            via_std = s4.std_mul(s4.kl_element(x), s4.kl_element(y))
            assert s4.to_std(via_kl) == via_std, f"seed=7 x={x} y={y}"

    def test_structure_constants_positive(self, s4):
        for x in all_permutations(4):
            for w in (Permutation.parse("tsut", 4), s4.w0):
                for _, c in s4.kl_basis_product(x, w).sorted_terms():
                    assert c.is_nonnegative()

    def test_mu_requires_ascent(self, s3):
        s = Permutation.parse("s", 3)
        with pytest.raises(ValueError):
            s3.mu(s, 1, Permutation.identity(3))
        assert s3.mu(Permutation.identity(3), 2, s) == 0


class TestElements:
    def test_mixed_bases_align(self, s3):
        s = Permutation.parse("s", 3)
        assert s3.kl(s) == s3.generator(1) + V
        assert s3.kl(s) - s3.generator(1) == s3.one().scale(V)

    def test_rank_mismatch(self, s3, s4):
        with pytest.raises(ValueError):
            s3.one() + s4.one()
        with pytest.raises(ValueError):
            HeckeElement(3, Basis.KL, {Permutation.identity(4): 1})

    def test_json_and_str(self, s3):
        element = s3.kl(Permutation.parse("s", 3)).scale(V) - s3.kl(Permutation.identity(3))
        assert element.to_json() == {"n": 3, "basis": "KL", "terms": [[[1, 2, 3], [[0, -1]]], [[2, 1, 3], [[1, 1]]]]}
        assert str(element) == "-b_1 + (v)b_s"

    def test_power(self, s3):
        H_s = s3.generator(1)
        assert H_s ** 0 == s3.one()
        assert H_s ** 2 == H_s * H_s
        with pytest.raises(ValueError):
            H_s ** -1

    def test_map_terms(self, s3):
        b = s3.kl(Permutation.parse("s", 3))
        assert b.map_terms(Permutation.tau) == s3.kl(Permutation.parse("t", 3))


class TestSmoothness:
    def test_s4_smooth_count(self, s4):
        assert sum(s4.is_smooth(w) for w in all_permutations(4)) == 22

    def test_disagreement_raises(self, s4, monkeypatch):
        import src.hecke.algebra as algebra_module

        monkeypatch.setattr(algebra_module, "avoids_singular_patterns", lambda w: False)
        with pytest.raises(MethodDisagreementError):
            s4.is_smooth(Permutation.identity(4))


def test_shared_instances():
    assert HeckeAlgebra.for_rank(3) is HeckeAlgebra.for_rank(3)
