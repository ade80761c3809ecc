import itertools

import pytest

from src.core.permutations import (
    Permutation,
    Word,
    all_permutations,
    avoids_singular_patterns,
    bruhat_leq,
    bruhat_leq_subword,
    cabled_crossing,
    cabled_half_twist,
    coset_decompose_left,
    coset_decompose_right,
    parabolic_longest,
    remove_largest,
    tail,
)


class TestParsing:
    @pytest.mark.parametrize(
        "text, images",
        [
            ("sts", (3, 2, 1)),
            ("st", (2, 3, 1)),
            ("ts", (3, 1, 2)),
            ("id", (1, 2, 3)),
            ("e", (1, 2, 3)),
            ("[2,1,3]", (2, 1, 3)),
            ("2 1 3", (2, 1, 3)),
            ("213", (2, 1, 3)),
        ],
    )
    def test_parse(self, text, images):
        assert Permutation.parse(text, 3).images == images

    @pytest.mark.parametrize("text", ["q", "sx", "[1,1,2]", "12", "s-t"])
    def test_parse_rejects(self, text):
        with pytest.raises(ValueError):
            Permutation.parse(text, 3)

    def test_identity_needs_rank(self):
        with pytest.raises(ValueError):
            Permutation.parse("id")

    def test_not_a_bijection(self):
        with pytest.raises(ValueError):
            Permutation((1, 1))


class TestGroupStructure:
    def test_product_is_composition(self):
        s, t = Permutation.simple(1, 3), Permutation.simple(2, 3)
        assert s * t == Permutation.from_word((1, 2), 3)
        assert (s * t)(3) == s(t(3))

    def test_simple_multiplication_sides(self):
        w = Permutation((2, 3, 1))
        assert w.right_mul_simple(1) == w * Permutation.simple(1, 3)
        assert w.left_mul_simple(1) == Permutation.simple(1, 3) * w

    def test_lengths(self):
        assert Permutation.longest(4).length == 6
        assert Permutation.parse("tsut", 4).length == 4
        assert sum(1 for _ in all_permutations(4)) == 24

    def test_inverse(self):
        for w in all_permutations(4):
            assert (w * w.inverse).is_identity
            assert w.inverse.length == w.length

    def test_descents(self):
        w = Permutation.parse("st", 3)
        assert w.right_descents == {2}
        assert w.left_descents == {1}

    def test_reduced_word_and_printing(self):
        for w in all_permutations(4):
            assert Word(w.reduced_word, 4).is_reduced
            assert Permutation.parse(str(w), 4) == w
        assert str(Permutation.from_word((2, 1, 2), 3)) == "sts"
        assert str(Permutation.identity(3)) == "1"

    def test_tau(self):
        s, t = Permutation.simple(1, 3), Permutation.simple(2, 3)
        assert s.tau() == t
        w0 = Permutation.longest(4)
        for w in all_permutations(4):
            assert w.tau() == w0 * w * w0

    def test_extend_and_restrict(self):
        s = Permutation.simple(1, 2)
        assert s.extend(4).images == (2, 1, 3, 4)
        assert s.extend(4).restrict(2) == s
        with pytest.raises(ValueError):
            Permutation.longest(3).restrict(2)

    def test_direct_sum(self):
        s = Permutation.simple(1, 2)
        assert s.direct_sum(s).images == (2, 1, 4, 3)


class TestBruhat:
    def test_criteria_agree_on_s4(self):
        for x, w in itertools.product(all_permutations(4), repeat=2):
            assert bruhat_leq(x, w) == bruhat_leq_subword(x, w), (x, w)

    def test_extremes(self):
        w0 = Permutation.longest(4)
        for w in all_permutations(4):
            assert bruhat_leq(Permutation.identity(4), w)
            assert bruhat_leq(w, w0)

    def test_incomparable(self):
        s, t = Permutation.simple(1, 3), Permutation.simple(2, 3)
        assert not bruhat_leq(s, t)
        assert not bruhat_leq(t, s)


class TestParabolic:
    def test_parabolic_longest(self):
        assert parabolic_longest((2, 1)).images == (2, 1, 3)
        assert parabolic_longest((2, 3)).length == 4
        with pytest.raises(ValueError):
            parabolic_longest((2, 0))

    @pytest.mark.parametrize("sizes", [(1, 1, 1), (2, 1), (2, 2), (3, 1), (1, 2, 1), (4,)])
    def test_cabled_half_twist_factorizes_w0(self, sizes):
        x = cabled_half_twist(sizes)
        w_sizes = parabolic_longest(sizes)
        w0 = Permutation.longest(sum(sizes))
        assert x * w_sizes == w0
        assert x.length + w_sizes.length == w0.length

    def test_cabled_crossing(self):
        assert cabled_crossing(1, 2).images == (3, 1, 2)
        assert cabled_crossing(2, 2).length == 4

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_coset_decompositions(self, k):
        for w in all_permutations(4):
            t, x = coset_decompose_left(w, k)
            assert x * t.extend(4) == w
            assert x.length + t.length == w.length
            assert list(x.images[:k]) == sorted(x.images[:k])

            u, y = coset_decompose_right(w, k)
            assert u.extend(4) * y == w
            assert u.length + y.length == w.length

    def test_longest_element_left_coset(self):
        t, x = coset_decompose_left(Permutation.longest(4), 2)
        assert t.images == (2, 1)
        assert x.images == (3, 4, 2, 1)
        assert x * t.extend(4) == Permutation.longest(4)

    def test_coset_rank_checked(self):
        with pytest.raises(ValueError):
            coset_decompose_left(Permutation.identity(3), 4)


class TestPatterns:
    def test_singular_patterns_in_s4(self):
        singular = [w for w in all_permutations(4) if not avoids_singular_patterns(w)]
        assert sorted(w.images for w in singular) == [(3, 4, 1, 2), (4, 2, 3, 1)]

    def test_remove_largest_and_tail(self):
        assert remove_largest(Permutation((3, 1, 2))).images == (1, 2)
        assert tail(Permutation((2, 3, 1))) == (1,)
        assert tail(Permutation.identity(3)) == ()

    @pytest.mark.parametrize("n", [4, 5])
    def test_decreasing_tail_keeps_avoidance(self, n):
        for w in all_permutations(n):
            rest = tail(w)
            decreasing = all(a > b for a, b in zip(rest, rest[1:]))
            if decreasing and avoids_singular_patterns(remove_largest(w)):
                assert avoids_singular_patterns(w), w
