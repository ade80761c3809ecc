"""
Specht modules inside ``Q[x_1, ..., x_n]``.

``g_T`` is the product of ``x_i - x_j`` over pairs ``i`` above ``j`` in a
column of ``T``. For standard ``T`` these form a basis of an irreducible
S_n-submodule; all linear algebra here is exact over QQ through sympy's
`DomainMatrix`.
"""
from __future__ import annotations

import logging
from functools import lru_cache
from math import factorial
from typing import Sequence

from sympy import Rational
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from src.cells.tableaux import Partition, Tableau, all_partitions, standard_tableaux
from src.core.errors import VerificationError
from src.core.multipoly import MultiPoly, root
from src.core.permutations import Permutation, all_permutations

logger = logging.getLogger(__name__)


def g_polynomial(T: Tableau) -> MultiPoly:
    """``g_T``; ``T`` may be any filling of its shape by ``1..n``."""
    result = MultiPoly.one(T.n)
    for column in T.columns:
        for a in range(len(column)):
            for b in range(a + 1, len(column)):
                result = result * root(column[a], column[b], T.n)
    return result


def positive_roots_product(column_sizes: Sequence[int]) -> MultiPoly:
    """``Π (x_i - x_j)`` over ``i < j`` in the same block of consecutive integers."""
    sizes = tuple(column_sizes)
    if not sizes or any(k <= 0 for k in sizes):
        raise ValueError(f"Block sizes must be positive, got {sizes}")
    n = sum(sizes)
    result = MultiPoly.one(n)
    start = 1
    for size in sizes:
        block = range(start, start + size)
        for i in block:
            for j in block:
                if i < j:
                    result = result * root(i, j, n)
        start += size
    return result


def hook_length_dimension(shape: Partition) -> int:
    """``n! / Π hooks``."""
    columns = shape.transpose.parts
    hooks = 1
    for i, row in enumerate(shape.parts):
        for j in range(row):
            hooks *= (row - j - 1) + (columns[j] - i - 1) + 1
    return factorial(shape.n) // hooks


def _matrix(polys: Sequence[MultiPoly], extra: MultiPoly | None = None) -> tuple[DomainMatrix, int]:
    """Coefficient matrix with one column per polynomial (``extra`` last)."""
    columns = list(polys) + ([extra] if extra is not None else [])
    monomials = sorted({m for p in columns for m, _ in p.terms()})
    rows = [[QQ(p.coefficient(m)) for p in columns] for m in monomials]
    if not rows:
        rows = [[QQ(0)] * len(columns)]
    return DomainMatrix(rows, (len(rows), len(columns)), QQ), len(columns)


def span_rank(polys: Sequence[MultiPoly]) -> int:
    if not polys:
        return 0
    matrix, _ = _matrix(polys)
    return matrix.rank()


def coordinates(basis: Sequence[MultiPoly], p: MultiPoly) -> list[Rational] | None:
    """Coordinates of ``p`` in the linearly independent ``basis``; None outside the span."""
    matrix, width = _matrix(basis, p)
    reduced, pivots = matrix.rref()
    dim = width - 1
    if dim in pivots:
        return None
    dense = reduced.to_Matrix()
    values = [Rational(0)] * dim
    for row, column in enumerate(pivots):
        values[column] = dense[row, dim]
    return values


@lru_cache(maxsize=None)
def specht_basis(shape: Partition) -> tuple[MultiPoly, ...]:
    """
    ``g_T`` for ``T`` standard of shape λ, in `standard_tableaux` order.

    Raises
    ------
    VerificationError
        If the polynomials are linearly dependent
    """
    basis = tuple(g_polynomial(T) for T in standard_tableaux(shape))
    rank = span_rank(basis)
    if rank != len(basis):
        raise VerificationError("specht_independence", {"lambda": shape.to_json(), "rank": rank, "size": len(basis)})
    return basis


def specht_dimension(shape: Partition) -> int:
    """Dimension of the span of the ``g_T``, checked against the hook length formula."""
    dim = span_rank(specht_basis(shape))
    expected = hook_length_dimension(shape)
    if dim != expected:
        raise VerificationError("specht_dimension", {"lambda": shape.to_json(), "rank": dim, "expected": expected})
    return dim


def membership_in_span(p: MultiPoly, shape: Partition) -> bool:
    """
    Whether ``p`` lies in the span of ``{g_T : T standard of shape λ}``.

    A homogeneous ``p`` of degree other than ``r(λ)`` is never in the span.

    Raises
    ------
    ValueError
        If ``p`` is not homogeneous or has the wrong number of variables
    """
    if p.n != shape.n:
        raise ValueError(f"Polynomial in {p.n} variables, shape of size {shape.n}")
    if not p.is_homogeneous:
        raise ValueError(f"{p} is not homogeneous")
    if p.is_zero:
        return True
    if p.degree != shape.r:
        return False
    return coordinates(specht_basis(shape), p) is not None


def all_tableaux_span_check(shape: Partition) -> bool:
    """``g_T`` for every filling ``T`` of λ lies in the standard span."""
    basis = specht_basis(shape)
    seed = standard_tableaux(shape)[0]
    seen = set()
    for w in all_permutations(shape.n):
        T = seed.act(w)
        g = g_polynomial(T)
        if g in seen:
            continue
        seen.add(g)
        if coordinates(basis, g) is None:
            raise VerificationError("specht_closure", {"lambda": shape.to_json(), "T": T.to_json()})
    return True


def representation_matrix(shape: Partition, i: int) -> DomainMatrix:
    """
    ``ρ_λ(s_i)`` in the ``g_T`` basis: column j holds the coordinates of
    ``s_i(g_{T_j}) = g_{s_i(T_j)}``.
    """
    n = shape.n
    if not 1 <= i < n:
        raise ValueError(f"s_{i} is not a simple reflection of S_{n}")
    basis = specht_basis(shape)
    s = Permutation.simple(i, n)
    columns = []
    for g in basis:
        coords = coordinates(basis, g.act(s))
        if coords is None:
            raise VerificationError("specht_closure", {"lambda": shape.to_json(), "i": i})
        columns.append([QQ(int(c.p), int(c.q)) for c in coords])
    d = len(basis)
    rows = [[columns[j][k] for j in range(d)] for k in range(d)]
    return DomainMatrix(rows, (d, d), QQ)


def representation_matrices(shape: Partition) -> list[DomainMatrix]:
    return [representation_matrix(shape, i) for i in range(1, shape.n)]


def _same_matrix(A: DomainMatrix, B: DomainMatrix) -> bool:
    # DomainMatrix equality also compares the dense/sparse representation
    return A.shape == B.shape and A.to_Matrix() == B.to_Matrix()


def coxeter_relations_hold(matrices: Sequence[DomainMatrix]) -> bool:
    """``ρ_i^2 = 1``, braid relations for neighbours, commutation otherwise."""
    if not matrices:
        return True
    d = matrices[0].shape[0]
    identity = DomainMatrix.eye(d, QQ)
    for a, A in enumerate(matrices):
        if not _same_matrix(A * A, identity):
            return False
        for b in range(a + 1, len(matrices)):
            B = matrices[b]
            if b == a + 1:
                if not _same_matrix(A * B * A, B * A * B):
                    return False
            elif not _same_matrix(A * B, B * A):
                return False
    return True


def commutant_dimension(matrices: Sequence[DomainMatrix], d: int) -> int:
    """Dimension of ``{X : X ρ_i = ρ_i X for all i}``."""
    if not matrices:
        return d * d
    rows = []
    for M in matrices:
        m = M.to_Matrix()
        for a in range(d):
            for b in range(d):
                # (M X - X M)[a, b] = 0 in the unknowns X[k, l] at index k*d + l
                row = [QQ(0)] * (d * d)
                for k in range(d):
                    row[k * d + b] += QQ(int(m[a, k].p), int(m[a, k].q))
                    row[a * d + k] -= QQ(int(m[k, b].p), int(m[k, b].q))
                rows.append(row)
    system = DomainMatrix(rows, (len(rows), d * d), QQ)
    return d * d - system.rank()


def specht_suite(n: int) -> dict[str, int]:
    """
    Dimension, roots product, closure, Coxeter and commutant checks for
    every λ ⊢ n.
    """
    counts = {"dimension": 0, "roots_product": 0, "closure": 0, "coxeter": 0, "commutant": 0}
    for shape in all_partitions(n):
        specht_dimension(shape)
        counts["dimension"] += 1
        if positive_roots_product(shape.column_sizes) != g_polynomial(Tableau.column_reading(shape)):
            raise VerificationError("roots_product", {"lambda": shape.to_json()})
        counts["roots_product"] += 1
        if n <= 5:
            all_tableaux_span_check(shape)
            counts["closure"] += 1
            matrices = representation_matrices(shape)
            if not coxeter_relations_hold(matrices):
                raise VerificationError("specht_coxeter", {"lambda": shape.to_json()})
            counts["coxeter"] += 1
            d = len(specht_basis(shape))
            dim = commutant_dimension(matrices, d)
            if dim != 1:
                raise VerificationError("specht_commutant", {"lambda": shape.to_json(), "dimension": dim})
            counts["commutant"] += 1
    logger.info("Specht checks for n=%d: %s", n, counts)
    return counts
