import pytest

from src.core.errors import RankBoundError
from src.core.permutations import Permutation, all_permutations, bruhat_leq
from src.core.scalars import LaurentScalar
from src.hecke.kl_table import (
    KLTable,
    build_kl_table,
    check_rank,
    configure_tables,
    get_kl_table,
    reset_tables,
)


@pytest.mark.parametrize(
    "word, expected",
    [
        ("tsut", {2: 1, 4: 1}),
        ("sutsu", {3: 1, 5: 1}),
        ("stu", {3: 1}),
    ],
)
def test_known_polynomials_from_identity(word, expected):
    table = KLTable(4)
    h = table.kl_polynomial(Permutation.identity(4), Permutation.parse(word, 4))
    assert h == LaurentScalar(expected)


def test_s3_is_smooth_everywhere():
    table = KLTable(3)
    for w in all_permutations(3):
        for y in all_permutations(3):
            expected = LaurentScalar.monomial(w.length - y.length) if bruhat_leq(y, w) else LaurentScalar.zero()
            assert table.kl_polynomial(y, w) == expected


def test_columns_supported_on_bruhat_intervals():
    table = KLTable(4)
    for w in all_permutations(4):
        assert table.check_support(w)


def test_off_diagonal_entries_in_positive_part():
    table = KLTable(4).build(progress=False)
    for y, w, _ in table.items():
        h = table.kl_polynomial(y, w)
        if y == w:
            assert h == 1
        else:
            assert h.in_positive_part() and h.is_nonnegative()


def test_mu_values():
    table = KLTable(4)
    tsut = Permutation.parse("tsut", 4)
    # h_{t,tsut} = v + v^3
    assert table.kl_polynomial(Permutation.parse("t", 4), tsut) == LaurentScalar({1: 1, 3: 1})
    assert table.mu(Permutation.parse("t", 4), tsut) == 1
    assert table.mu(tsut, tsut) == 0
    s = Permutation.parse("s", 4)
    assert table.mu(Permutation.identity(4), s) == 1
    assert all(m > 0 for _, m in table.mu_list(Permutation.longest(4)))


def test_parallel_build_matches_serial():
    serial = KLTable(4).build(workers=1, progress=False)
    parallel = KLTable(4).build(workers=4, progress=False)
    assert dict(((y, w), p) for y, w, p in serial.items()) == dict(((y, w), p) for y, w, p in parallel.items())
    assert parallel.frozen


def test_rank_bound():
    configure_tables(max_rank=5)
    with pytest.raises(RankBoundError):
        check_rank(6)
    check_rank(6, force=True)
    with pytest.raises(ValueError):
        check_rank(0)


def test_unknown_setting():
    with pytest.raises(TypeError):
        configure_tables(colour="blue")


def test_wrong_rank_query():
    with pytest.raises(ValueError):
        KLTable(3).column(Permutation.identity(4))


def test_cached_table_is_reloaded(tmp_path):
    configure_tables(use_cache=True, cache_dir=tmp_path)
    reset_tables()
    built = build_kl_table(4)
    assert (tmp_path / "kl_S4.bin").exists()
    reset_tables()
    loaded = get_kl_table(4)
    assert loaded is not built and loaded.frozen
    w = Permutation.parse("tsut", 4)
    assert loaded.kl_polynomial(Permutation.identity(4), w) == LaurentScalar({2: 1, 4: 1})
    reset_tables()
