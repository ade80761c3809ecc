import pytest

from src.cells.tableaux import Partition, Tableau, all_partitions, standard_tableaux
from src.core.errors import VerificationError
from src.core.permutations import Permutation, all_permutations
from src.twists.relative import (
    coset_prefix_check,
    geck_check,
    minimal_right_coset_representatives,
    relative_action_check,
    relative_suite,
    sh_L_k,
)


def test_relative_shape():
    w = Permutation((2, 3, 1))
    assert sh_L_k(w, 2) == Partition((1, 1))
    assert sh_L_k(w, 3) == Partition((2, 1))
    assert sh_L_k(w, 1) == Partition((1,))
    with pytest.raises(ValueError):
        sh_L_k(w, 4)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_coset_prefixes(k):
    for w in all_permutations(4):
        assert coset_prefix_check(w, k)


@pytest.mark.parametrize("n, k, count", [(3, 2, 3), (4, 2, 12), (4, 3, 4)])
def test_minimal_representatives(n, k, count):
    reps = minimal_right_coset_representatives(n, k)
    assert len(reps) == count
    assert Permutation.identity(n) in reps


def test_relative_action_s3():
    for shape in all_partitions(2):
        for V in standard_tableaux(shape):
            for w in all_permutations(3):
                assert relative_action_check(V, w)


def test_relative_action_needs_standard():
    with pytest.raises(ValueError):
        relative_action_check(Tableau.parse("2,1"), Permutation.identity(3))


def test_geck_s3():
    parabolic = [p.extend(3) for p in all_permutations(2)]
    for y in minimal_right_coset_representatives(3, 2):
        for w in parabolic:
            for t in parabolic:
                assert geck_check(w, t, y, 2)


def test_geck_rejects_non_minimal():
    s = Permutation.parse("s", 3)
    with pytest.raises(ValueError):
        geck_check(s, s, s, 2)


def test_suite_s3():
    counts = relative_suite(3)
    assert counts == {"coset_prefix": 6, "relative_action": 12, "geck": 12}


@pytest.mark.slow
def test_suite_s4():
    counts = relative_suite(4, (2, 3))
    assert counts["coset_prefix"] == 48


def test_failure_carries_witness(monkeypatch):
    import src.twists.relative as relative

    monkeypatch.setattr(relative, "coset_decompose_left", lambda w, k: (Permutation.identity(k), w))
    with pytest.raises(VerificationError) as info:
        coset_prefix_check(Permutation.parse("s", 3), 2)
    assert info.value.witness["k"] == 2
