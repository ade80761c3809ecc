"""
Schützenberger involution on left cells and the half-twist action on the KL
basis.

Left multiplication by the half twist sends ``b_y`` to
``(-1)^{c(λ)} v^{x(λ)} b_{Sch_L(y)}`` plus terms in strictly lower cells.
`schutzenberger_L` reads ``Sch_L`` off RSK and, independently, off this
product.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

from src.core.errors import MethodDisagreementError, VerificationError
from src.core.permutations import Permutation
from src.core.scalars import LaurentScalar
from src.hecke.algebra import Basis, HeckeAlgebra, HeckeElement

from .asymptotics import CellAnalyzer
from .tableaux import Partition, cell_of, rsk, rsk_inverse, schutzenberger_dual

logger = logging.getLogger(__name__)

METHODS = ("combinatorial", "mathas", "both")


@dataclass(frozen=True)
class MathasDecomposition:
    """``H_{w0} b_y = (-1)^sign_exponent v^v_power b_head + remainder``."""

    y: Permutation
    sign_exponent: int
    v_power: int
    head: Permutation
    remainder: HeckeElement

    @property
    def coefficient(self) -> LaurentScalar:
        sign = -1 if self.sign_exponent % 2 else 1
        return LaurentScalar.monomial(self.v_power, sign)

    def to_json(self) -> dict:
        return {
            "y": self.y.to_json(),
            "sign_exponent": self.sign_exponent,
            "v_power": self.v_power,
            "head": self.head.to_json(),
            "remainder": self.remainder.to_json(),
        }


def _cell_split(element: HeckeElement, shape: Partition) -> tuple[dict, dict]:
    """Splits KL-basis terms into those of cell ``shape`` and the rest."""
    inside, outside = {}, {}
    for z, c in element.terms.items():
        (inside if cell_of(z).two_sided == shape else outside)[z] = c
    return inside, outside


def mathas_decompose(y: Permutation, algebra: HeckeAlgebra | None = None) -> MathasDecomposition:
    """
    Expands ``H_{w0} b_y`` in the KL basis and splits off its cell-λ term.

    Raises
    ------
    VerificationError
        If the cell-λ part is not a single term with coefficient
        ``(-1)^{c(λ)} v^{x(λ)}``, or the remainder is not strictly below λ
    """
    algebra = algebra or HeckeAlgebra.for_rank(y.n)
    shape = cell_of(y).two_sided
    product = algebra.left_mul_standard_kl(algebra.w0, algebra.kl(y))
    inside, outside = _cell_split(product, shape)
    witness = {"y": y.to_json(), "lambda": shape.to_json()}

    if len(inside) != 1:
        raise VerificationError(
            "mathas",
            {**witness, "cell_terms": sorted(z.to_json() for z in inside)},
            f"H_w0 b_{y} has {len(inside)} terms in cell {shape}",
        )
    (head, coefficient), = inside.items()
    expected = LaurentScalar.monomial(shape.x, -1 if shape.c % 2 else 1)
    if coefficient != expected:
        raise VerificationError(
            "mathas",
            {**witness, "coefficient": coefficient.to_json(), "expected": expected.to_json()},
            f"H_w0 b_{y}: coefficient {coefficient} on b_{head}, expected {expected}",
        )
    for z in outside:
        if not cell_of(z).two_sided.dominance_lt(shape):
            raise VerificationError(
                "mathas",
                {**witness, "z": z.to_json()},
                f"H_w0 b_{y} has a term b_{z} outside the cells below {shape}",
            )
    return MathasDecomposition(
        y=y,
        sign_exponent=shape.c,
        v_power=shape.x,
        head=head,
        remainder=HeckeElement(y.n, Basis.KL, outside),
    )


def schutzenberger_L(w: Permutation, method: str = "combinatorial", algebra: HeckeAlgebra | None = None) -> Permutation:
    """
    Left Schützenberger involution: ``w(P, Q) -> w(P^∨, Q)``.

    Parameters
    ----------
    w : Permutation
        Any element
    method : {"combinatorial", "mathas", "both"}
        RSK duality, the head of the half-twist product, or both compared

    Raises
    ------
    MethodDisagreementError
        If ``method="both"`` and the two answers differ
    """
    if method not in METHODS:
        raise ValueError(f"Unknown method {method!r}, expected one of {METHODS}")
    combinatorial = None
    if method in ("combinatorial", "both"):
        P, Q = rsk(w)
        combinatorial = rsk_inverse(schutzenberger_dual(P), Q)
        if method == "combinatorial":
            return combinatorial
    head = mathas_decompose(w, algebra).head
    if combinatorial is not None and head != combinatorial:
        raise MethodDisagreementError(
            f"Sch_L({w}) disagrees: combinatorial={combinatorial}, mathas={head}",
            witness={"w": w.to_json(), "combinatorial": combinatorial.to_json(), "mathas": head.to_json()},
        )
    return head


def schutzenberger_R(y: Permutation, method: str = "combinatorial", algebra: HeckeAlgebra | None = None) -> Permutation:
    """``Sch_R(y) = Sch_L(y^-1)^-1``; preserves the right cell."""
    return schutzenberger_L(y.inverse, method, algebra).inverse


def w0_twisted_involutions(n: int) -> set[Permutation]:
    """Elements ``w`` with ``w^-1 = τ(w)``, i.e. ``w0 w`` is an involution."""
    w0 = Permutation.longest(n)
    return {w for w in HeckeAlgebra.for_rank(n).elements if (w0 * w).is_involution}


def full_twist_cell_scalar(y: Permutation, algebra: HeckeAlgebra | None = None) -> LaurentScalar:
    """
    Coefficient of ``b_y`` in ``H_{w0}^2 b_y``.

    Raises
    ------
    VerificationError
        If the cell-λ part has any other term, or the coefficient is not
        ``v^{2x(λ)}``
    """
    algebra = algebra or HeckeAlgebra.for_rank(y.n)
    shape = cell_of(y).two_sided
    once = algebra.left_mul_standard_kl(algebra.w0, algebra.kl(y))
    twice = algebra.left_mul_standard_kl(algebra.w0, once)
    inside, _ = _cell_split(twice, shape)
    scalar = inside.get(y, LaurentScalar.zero())
    expected = LaurentScalar.monomial(2 * shape.x)
    if set(inside) != {y} or scalar != expected:
        raise VerificationError(
            "full_twist_scalar",
            {"y": y.to_json(), "cell_terms": sorted(z.to_json() for z in inside), "coefficient": scalar.to_json()},
        )
    return scalar


def twisted_action_check(y: Permutation, analyzer: CellAnalyzer | None = None) -> tuple[Permutation, Permutation]:
    """
    Among ``d`` distinguished in the transposed cell and ``z`` in the cell of
    ``y``, exactly one pair has ``t^z_{w0 d, y} != 0``; then ``z = Sch_L(y)``
    and the constant is 1.

    Returns
    -------
    tuple[Permutation, Permutation]
        The pair ``(d, z)``
    """
    analyzer = analyzer or CellAnalyzer(y.n)
    w0 = analyzer.algebra.w0
    shape = cell_of(y).two_sided
    hits = []
    for d in sorted(analyzer.distinguished_involutions(shape.transpose), key=lambda p: p.sort_key):
        for z, value in analyzer.j_multiply(w0 * d, y).items():
            hits.append((d, z, value))
    if len(hits) != 1:
        raise VerificationError(
            "twisted_action",
            {"y": y.to_json(), "hits": [[d.to_json(), z.to_json(), t] for d, z, t in hits]},
            f"Expected one nonzero t^z_(w0 d, {y}), found {len(hits)}",
        )
    (d, z, value), = hits
    if value != 1 or z != schutzenberger_L(y):
        raise VerificationError(
            "twisted_action",
            {"y": y.to_json(), "d": d.to_json(), "z": z.to_json(), "value": value},
        )
    return d, z


def distinguished_image_check(shape: Partition, analyzer: CellAnalyzer) -> None:
    """``Sch_L`` maps the distinguished involutions of λ onto ``w0`` times those of λ^t."""
    w0 = analyzer.algebra.w0
    image = {schutzenberger_L(d) for d in analyzer.distinguished_involutions(shape)}
    expected = {w0 * d for d in analyzer.distinguished_involutions(shape.transpose)}
    if image != expected:
        raise VerificationError(
            "schutzenberger_distinguished",
            {
                "lambda": shape.to_json(),
                "image": sorted(w.to_json() for w in image),
                "expected": sorted(w.to_json() for w in expected),
            },
        )
