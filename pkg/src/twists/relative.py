"""
Relative cell theory for the parabolic ``S_k ⊔ 1 ⊂ S_n``.

Left multiplication by ``H_k ⊔ 1`` acts on the values ``1..k`` of the
one-line notation, so an element's relative left cell is read off ``P^k``,
the part of its insertion tableau holding ``1..k``.
"""
from __future__ import annotations

import logging

from src.cells.tableaux import Partition, Tableau, all_partitions, rsk, rsk_inverse, standard_tableaux
from src.core.errors import VerificationError
from src.core.permutations import (
    Permutation,
    all_permutations,
    bruhat_leq,
    coset_decompose_left,
    coset_decompose_right,
)
from src.hecke.algebra import HeckeAlgebra

logger = logging.getLogger(__name__)


def sh_L_k(w: Permutation, k: int) -> Partition:
    """Shape of ``P^k`` where ``rsk(w) = (P, Q)``."""
    if not 1 <= k <= w.n:
        raise ValueError(f"k={k} out of range for S_{w.n}")
    P, _ = rsk(w)
    return P.restrict(k).shape


def coset_prefix_check(w: Permutation, k: int) -> bool:
    """
    The factor ``t`` of ``w = x t`` has Q-symbol ``Q^k``, and the factor
    ``u`` of ``w = u y`` has P-symbol ``P^k``.
    """
    P, Q = rsk(w)
    t, _ = coset_decompose_left(w, k)
    u, _ = coset_decompose_right(w, k)
    if rsk(t)[1] != Q.restrict(k):
        raise VerificationError("coset_prefix_left", {"w": w.to_json(), "k": k, "t": t.to_json()})
    if rsk(u)[0] != P.restrict(k):
        raise VerificationError("coset_prefix_right", {"w": w.to_json(), "k": k, "u": u.to_json()})
    return True


def relative_action_check(V: Tableau, w: Permutation) -> bool:
    """
    For ``V`` standard of shape ``μ ⊢ k``, checks that
    ``v^{r(μ)} (b_{V,V} ⊔ 1) b_w`` has coefficient ``δ_{V,P^k}`` on ``b_w``
    modulo ``vZ[v]``, that every other term with relative shape μ has its
    coefficient in ``vZ[v]``, and that all remaining terms have relative shape
    strictly below μ.

    Raises
    ------
    VerificationError
        With the offending term as witness
    """
    if not V.is_standard:
        raise ValueError(f"{V} is not standard")
    k, n = V.n, w.n
    mu = V.shape
    algebra = HeckeAlgebra.for_rank(n)
    d = rsk_inverse(V, V).extend(n)
    product = algebra.kl_basis_product(d, w)
    head = 1 if rsk(w)[0].restrict(k) == V else 0
    witness = {"V": V.to_json(), "w": w.to_json()}

    for z, c in product.terms.items():
        shifted = c.shift(mu.r)
        shape = sh_L_k(z, k)
        if z == w:
            shifted = shifted - head
        if shape == mu:
            if not shifted.in_positive_part():
                raise VerificationError("relative_action", {**witness, "z": z.to_json(), "c": c.to_json()})
        elif not shape.dominance_lt(mu):
            raise VerificationError("relative_action", {**witness, "z": z.to_json(), "shape": shape.to_json()})
    if head and product.coefficient(w).is_zero:
        raise VerificationError("relative_action", {**witness, "missing_head": True})
    return True


def geck_check(w: Permutation, t: Permutation, y: Permutation, k: int) -> bool:
    """
    For ``w, t`` in ``S_k ⊔ 1`` and ``y`` minimal in ``S_k y``: every term
    ``b_{u x}`` of ``b_w b_{t y}`` has ``x <= y`` in Bruhat order, and for
    ``x = y`` the coefficient equals ``c^u_{w,t}`` computed in S_k.
    """
    n = y.n
    u_y, _ = coset_decompose_right(y, k)
    if not u_y.is_identity:
        raise ValueError(f"{y} is not minimal in its coset S_{k} y")
    w_k, t_k = w.restrict(k), t.restrict(k)
    big = HeckeAlgebra.for_rank(n)
    small = HeckeAlgebra.for_rank(k)
    product = big.kl_basis_product(w, t * y)
    expected = {u.extend(n) * y: c for u, c in small.kl_basis_product(w_k, t_k).terms.items()}
    witness = {"w": w.to_json(), "t": t.to_json(), "y": y.to_json(), "k": k}

    for z, c in product.terms.items():
        _, x = coset_decompose_right(z, k)
        if not bruhat_leq(x, y):
            raise VerificationError("geck_support", {**witness, "z": z.to_json()})
        if x == y and expected.get(z) != c:
            raise VerificationError("geck_coefficient", {**witness, "z": z.to_json(), "c": c.to_json()})
    for z in expected:
        if product.coefficient(z) != expected[z]:
            raise VerificationError("geck_coefficient", {**witness, "z": z.to_json()})
    return True


def minimal_right_coset_representatives(n: int, k: int) -> list[Permutation]:
    """``Y_I``: elements listing the values ``1..k`` in increasing order."""
    return [y for y in all_permutations(n) if coset_decompose_right(y, k)[0].is_identity]


def relative_suite(n: int, ks=None) -> dict[str, int]:
    """Exhaustive prefix-shape, relative action and Geck checks over S_n."""
    ks = ks or range(2, n)
    counts = {"coset_prefix": 0, "relative_action": 0, "geck": 0}
    elements = all_permutations(n)
    for k in ks:
        for w in elements:
            coset_prefix_check(w, k)
            counts["coset_prefix"] += 1
        for shape in all_partitions(k):
            for V in standard_tableaux(shape):
                for w in elements:
                    relative_action_check(V, w)
                    counts["relative_action"] += 1
        parabolic = [p.extend(n) for p in all_permutations(k)]
        for y in minimal_right_coset_representatives(n, k):
            for w in parabolic:
                for t in parabolic:
                    geck_check(w, t, y, k)
                    counts["geck"] += 1
    logger.info("Relative checks for S_%d: %s", n, counts)
    return counts
