"""
Images of positive braids in the Hecke algebra: external products and
embeddings, half and full twists, Jucys–Murphy elements, the thick crossing
identity and parabolic longest elements acting on a cell.

A positive braid ``σ_{i_1} ... σ_{i_d}`` maps to ``H_{s_{i_1}} ... H_{s_{i_d}}``,
so the positive lift of ``w`` maps to ``H_w``.
"""
from __future__ import annotations

import logging
from functools import lru_cache

from src.cells.tableaux import Partition, Tableau, all_partitions, rsk_inverse, schutzenberger_dual
from src.core.errors import VerificationError
from src.core.permutations import Permutation, parabolic_longest, positive_lift_word
from src.core.scalars import LaurentScalar, quantum_factorial_product
from src.hecke.algebra import Basis, HeckeAlgebra, HeckeElement

logger = logging.getLogger(__name__)

V = LaurentScalar.monomial(1)


def external_product(a: HeckeElement, b: HeckeElement) -> HeckeElement:
    """
    ``a ⊔ b`` in ``H_{i+j}``: ``H_w ⊔ H_x = H_{w ⊔ x}`` and
    ``b_w ⊔ b_x = b_{w ⊔ x}``. ``b`` is converted to the basis of ``a``.
    """
    if b.basis is not a.basis:
        b = b.algebra.convert(b, a.basis)
    terms = {}
    for w, c in a.terms.items():
        for x, d in b.terms.items():
            terms[w.direct_sum(x)] = c * d
    return HeckeElement(a.n + b.n, a.basis, terms)


def embed(a: HeckeElement, n: int) -> HeckeElement:
    """``a ⊔ 1`` in ``H_n``."""
    if n < a.n:
        raise ValueError(f"Cannot embed H(S_{a.n}) into H(S_{n})")
    if n == a.n:
        return a
    return external_product(a, HeckeAlgebra.for_rank(n - a.n).one(a.basis))


def braid_image(word, n: int) -> HeckeElement:
    """Image of the positive braid ``σ_{i_1} ... σ_{i_d}`` in the standard basis."""
    algebra = HeckeAlgebra.for_rank(n)
    result = algebra.one()
    for i in word:
        result = algebra.right_mul_generator(result, i)
    return result


def half_twist(k: int, n: int | None = None) -> HeckeElement:
    """``ht_k = H_{w0}`` of S_k, embedded in ``H_n`` (standard basis)."""
    n = k if n is None else n
    word = positive_lift_word(Permutation.longest(k))
    return embed(braid_image(word, k), n)


@lru_cache(maxsize=None)
def _full_twist(k: int) -> HeckeElement:
    algebra = HeckeAlgebra.for_rank(k)
    ht = half_twist(k)
    return algebra.std_mul(ht, ht)


def full_twist(k: int, n: int | None = None) -> HeckeElement:
    """``ft_k = ht_k^2`` embedded in ``H_n`` (standard basis)."""
    n = k if n is None else n
    if not 1 <= k <= n:
        raise ValueError(f"Need 1 <= k <= n, got k={k}, n={n}")
    return embed(_full_twist(k), n)


def jm_element(k: int, n: int) -> HeckeElement:
    """
    Jucys–Murphy element ``y_k`` in ``H_n``: ``y_1 = 1`` and
    ``y_k = H_{s_{k-1}} y_{k-1} H_{s_{k-1}}``.

    With this indexing ``y_1 y_2 ... y_k = ft_k``.
    """
    if not 1 <= k <= n:
        raise ValueError(f"Need 1 <= k <= n, got k={k}, n={n}")
    algebra = HeckeAlgebra.for_rank(n)
    y = algebra.one()
    for j in range(1, k):
        y = algebra.right_mul_generator(algebra.left_mul_generator(j, y), j)
    return y


def jm_product(k: int, n: int) -> HeckeElement:
    """``y_1 y_2 ... y_k`` in ``H_n``."""
    algebra = HeckeAlgebra.for_rank(n)
    result = algebra.one()
    for j in range(1, k + 1):
        result = algebra.std_mul(result, jm_element(j, n))
    return result


def eigenvalue(shape: Partition) -> LaurentScalar:
    """Scalar ``v^{2x(λ)}`` by which the full twist acts on the cell λ."""
    return LaurentScalar.monomial(2 * shape.x)


def eigenvalue_separation_check(n: int) -> int:
    """
    Along strict dominance ``ν ◁ λ``: ``r(ν) > r(λ)``, ``c(ν) < c(λ)`` and
    ``x(ν) < x(λ)``, so distinct comparable cells get distinct eigenvalues.

    Returns the number of comparable pairs checked.
    """
    shapes = all_partitions(n)
    pairs = 0
    for nu in shapes:
        for lam in shapes:
            if not nu.dominance_lt(lam):
                continue
            if not (nu.r > lam.r and nu.c < lam.c and nu.x < lam.x):
                raise VerificationError("eigenvalue_separation", {"nu": nu.to_json(), "lambda": lam.to_json()})
            pairs += 1
    return pairs


def commutes_with_generators(a: HeckeElement) -> bool:
    """``a H_s = H_s a`` for every simple s."""
    algebra = HeckeAlgebra.for_rank(a.n)
    a = algebra.to_std(a)
    return all(
        algebra.right_mul_generator(a, i) == algebra.left_mul_generator(i, a)
        for i in range(1, a.n)
    )


def thick_crossing_index(k: int) -> Permutation:
    """``w(T^∨, T)`` for ``T = ((1, k+1), (2), ..., (k))`` (a row when k = 1)."""
    rows = ((1, k + 1),) + tuple((i,) for i in range(2, k + 1))
    T = Tableau(rows)
    return rsk_inverse(schutzenberger_dual(T), T)


def thick_crossing_identity(k: int) -> bool:
    """
    Checks ``H_{s_1 ... s_k} b_{w_k ⊔ 1} = b_{w_{k+1}} - v b_u`` in ``H_{k+1}``
    with ``u = (s_2 ... s_k)(w_k ⊔ 1) = w(T^∨, T)``.

    Raises
    ------
    VerificationError
        If either identity fails
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    n = k + 1
    algebra = HeckeAlgebra.for_rank(n)
    wk = Permutation.longest(k).extend(n)
    crossing = Permutation.from_word(range(1, k + 1), n)
    lhs = algebra.left_mul_standard_kl(crossing, algebra.kl(wk))

    u = Permutation.from_word(range(2, k + 1), n) * wk
    if u != thick_crossing_index(k):
        raise VerificationError(
            "thick_crossing_index",
            {"k": k, "u": u.to_json(), "tableau_index": thick_crossing_index(k).to_json()},
        )
    rhs = HeckeElement(n, Basis.KL, {Permutation.longest(n): 1, u: -V})
    if lhs != rhs:
        raise VerificationError("thick_crossing", {"k": k, "lhs": lhs.to_json(), "rhs": rhs.to_json()})
    return True


def _blocks_from_indices(indices, n: int) -> tuple[int, ...]:
    """Block sizes of the parabolic subgroup generated by ``{s_i : i in indices}``."""
    indices = set(indices)
    if any(not 1 <= i < n for i in indices):
        raise ValueError(f"Simple reflection indices {sorted(indices)} out of range for S_{n}")
    sizes, current = [], 1
    for i in range(1, n):
        if i in indices:
            current += 1
        else:
            sizes.append(current)
            current = 1
    sizes.append(current)
    return tuple(sizes)


def longest_times_cell(indices, x: Permutation) -> HeckeElement:
    """
    ``b_{w_I} b_x = π(W_I) b_x`` when every ``s_i``, ``i ∈ I``, is a left
    descent of ``x``.

    Returns
    -------
    HeckeElement
        The product, after checking it against ``π(W_I) b_x``
    """
    indices = set(indices)
    if not indices <= x.left_descents:
        raise ValueError(f"{sorted(indices)} are not all left descents of {x}")
    algebra = HeckeAlgebra.for_rank(x.n)
    sizes = _blocks_from_indices(indices, x.n)
    w_I = parabolic_longest(sizes)
    product = algebra.kl_basis_product(w_I, x)
    expected = algebra.kl(x).scale(quantum_factorial_product(sizes))
    if product != expected:
        raise VerificationError("longest_times_cell", {"I": sorted(indices), "x": x.to_json()})
    return product
