"""
The Hecke algebra of S_n over Z[v, v^-1].

Normalization: ``H_s^2 = 1 + (v^-1 - v) H_s``, ``b_s = H_s + v`` and
``b_w = Σ_y h_{y,w} H_y`` with ``h_{y,w} ∈ vZ[v]`` for ``y < w``.
Elements are sparse mappings tagged with their basis; products in the KL
basis are computed by repeated generator multiplication against the μ-lists
of the shared `KLTable`.
"""
from __future__ import annotations

import logging
from collections import defaultdict
from enum import Enum
from typing import Mapping

from src.core.errors import MethodDisagreementError
from src.core.permutations import Permutation, all_permutations, avoids_singular_patterns, bruhat_leq
from src.core.scalars import LaurentScalar, ScalarLike

from .kl_table import KLTable, get_kl_table

logger = logging.getLogger(__name__)

ZERO = LaurentScalar.zero()
ONE = LaurentScalar.one()
V = LaurentScalar.monomial(1)
V_INV = LaurentScalar.monomial(-1)
QUADRATIC = V_INV - V
QUANTUM_TWO = V + V_INV


class Basis(str, Enum):
    STANDARD = "STANDARD"
    KL = "KL"

    @property
    def symbol(self) -> str:
        return "H" if self is Basis.STANDARD else "b"


class HeckeElement:
    """
    Sparse element of H(S_n) in a declared basis.

    Parameters
    ----------
    n : int
        Rank
    basis : Basis
        STANDARD (``H_w``) or KL (``b_w``)
    terms : mapping Permutation -> LaurentScalar or int, optional
        Coefficients; zeros are dropped

    Notes
    -----
    Arithmetic between elements in different bases converts the right
    operand to the basis of the left one. Elements are immutable but not
    hashable, since equality may convert bases.
    """

    __slots__ = ("n", "basis", "_terms")
    __hash__ = None

    def __init__(self, n: int, basis: Basis, terms: Mapping[Permutation, ScalarLike] | None = None):
        self.n = n
        self.basis = Basis(basis)
        clean: dict[Permutation, LaurentScalar] = {}
        for w, c in (terms or {}).items():
            if w.n != n:
                raise ValueError(f"Term {w!r} does not lie in S_{n}")
            c = LaurentScalar.coerce(c)
            if c:
                clean[w] = c
        self._terms = clean

    @classmethod
    def _raw(cls, n: int, basis: Basis, terms: dict[Permutation, LaurentScalar]) -> HeckeElement:
        obj = cls.__new__(cls)
        obj.n, obj.basis = n, basis
        obj._terms = {w: c for w, c in terms.items() if c}
        return obj

    @property
    def algebra(self) -> HeckeAlgebra:
        return HeckeAlgebra.for_rank(self.n)

    # ------------------------------------------------------------------
    # inspection
    # ------------------------------------------------------------------
    @property
    def terms(self) -> dict[Permutation, LaurentScalar]:
        return dict(self._terms)

    def coefficient(self, w: Permutation) -> LaurentScalar:
        return self._terms.get(w, ZERO)

    @property
    def support(self) -> list[Permutation]:
        return sorted(self._terms, key=lambda w: w.sort_key)

    def sorted_terms(self) -> list[tuple[Permutation, LaurentScalar]]:
        return [(w, self._terms[w]) for w in self.support]

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    # ------------------------------------------------------------------
    # arithmetic
    # ------------------------------------------------------------------
    def _aligned(self, other: HeckeElement) -> HeckeElement:
        if other.n != self.n:
            raise ValueError(f"Rank mismatch: H(S_{self.n}) vs H(S_{other.n})")
        if other.basis is self.basis:
            return other
        return other.algebra.convert(other, self.basis)

    def __add__(self, other: HeckeElement | ScalarLike) -> HeckeElement:
        if not isinstance(other, HeckeElement):
            other = self.algebra.scalar(other, self.basis)
        other = self._aligned(other)
        terms = dict(self._terms)
        for w, c in other._terms.items():
            terms[w] = terms.get(w, ZERO) + c
        return HeckeElement._raw(self.n, self.basis, terms)

    __radd__ = __add__

    def __neg__(self) -> HeckeElement:
        return HeckeElement._raw(self.n, self.basis, {w: -c for w, c in self._terms.items()})

    def __sub__(self, other: HeckeElement | ScalarLike) -> HeckeElement:
        if not isinstance(other, HeckeElement):
            other = self.algebra.scalar(other, self.basis)
        return self + (-other)

    def __rsub__(self, other: ScalarLike) -> HeckeElement:
        return (-self) + other

    def scale(self, c: ScalarLike) -> HeckeElement:
        c = LaurentScalar.coerce(c)
        if not c:
            return HeckeElement._raw(self.n, self.basis, {})
        return HeckeElement._raw(self.n, self.basis, {w: a * c for w, a in self._terms.items()})

    def __mul__(self, other: HeckeElement | ScalarLike) -> HeckeElement:
        if isinstance(other, HeckeElement):
            return self.algebra.multiply(self, other)
        if isinstance(other, (int, LaurentScalar)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other: ScalarLike) -> HeckeElement:
        if isinstance(other, (int, LaurentScalar)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, exponent: int) -> HeckeElement:
        if exponent < 0:
            raise ValueError("Negative powers are not supported")
        result = self.algebra.one(self.basis)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, LaurentScalar)):
            other = self.algebra.scalar(other, self.basis)
        if not isinstance(other, HeckeElement):
            return NotImplemented
        if other.n != self.n:
            return False
        return self._terms == self._aligned(other)._terms

    def in_basis(self, basis: Basis) -> HeckeElement:
        return self.algebra.convert(self, Basis(basis))

    def map_terms(self, fn) -> HeckeElement:
        """Applies ``fn`` to each basis index (e.g. ``Permutation.tau``)."""
        terms: dict[Permutation, LaurentScalar] = {}
        for w, c in self._terms.items():
            image = fn(w)
            terms[image] = terms.get(image, ZERO) + c
        return HeckeElement._raw(self.n, self.basis, terms)

    # ------------------------------------------------------------------
    # presentation
    # ------------------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "n": self.n,
            "basis": self.basis.value,
            "terms": [[w.to_json(), c.to_json()] for w, c in self.sorted_terms()],
        }

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        symbol = self.basis.symbol
        parts = []
        for w, c in self.sorted_terms():
            if c == ONE:
                parts.append(f"{symbol}_{w}")
            elif c == -ONE:
                parts.append(f"-{symbol}_{w}")
            else:
                parts.append(f"({c}){symbol}_{w}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"HeckeElement(n={self.n}, {self})"


class HeckeAlgebra:
    """
    Multiplication, bar involution and basis changes in H(S_n).

    Use `HeckeAlgebra.for_rank(n)` to share one instance (and its product
    memo) per rank.

    Parameters
    ----------
    n : int
        Rank
    table : KLTable, optional
        KL table to use; defaults to the shared table of rank n
    """

    _instances: dict[int, HeckeAlgebra] = {}

    def __init__(self, n: int, table: KLTable | None = None):
        if n < 1:
            raise ValueError(f"Rank must be positive, got {n}")
        self.n = n
        self._table = table
        self._bar_cache: dict[Permutation, HeckeElement] = {}
        self._products: dict[tuple[Permutation, Permutation], HeckeElement] = {}
        self.w0 = Permutation.longest(n)

    @classmethod
    def for_rank(cls, n: int) -> HeckeAlgebra:
        algebra = cls._instances.get(n)
        if algebra is None:
            algebra = cls._instances.setdefault(n, cls(n))
        return algebra

    @classmethod
    def reset(cls) -> None:
        cls._instances.clear()

    @property
    def table(self) -> KLTable:
        if self._table is None:
            self._table = get_kl_table(self.n)
        return self._table

    @property
    def elements(self) -> tuple[Permutation, ...]:
        return all_permutations(self.n)

    # ------------------------------------------------------------------
    # constructors
    # ------------------------------------------------------------------
    def zero(self, basis: Basis = Basis.STANDARD) -> HeckeElement:
        return HeckeElement._raw(self.n, Basis(basis), {})

    def scalar(self, c: ScalarLike, basis: Basis = Basis.STANDARD) -> HeckeElement:
        return HeckeElement(self.n, basis, {Permutation.identity(self.n): c})

    def one(self, basis: Basis = Basis.STANDARD) -> HeckeElement:
        return self.scalar(1, basis)

    def standard(self, w: Permutation) -> HeckeElement:
        return HeckeElement(self.n, Basis.STANDARD, {w: 1})

    def kl(self, w: Permutation) -> HeckeElement:
        return HeckeElement(self.n, Basis.KL, {w: 1})

    def generator(self, i: int) -> HeckeElement:
        """``H_{s_i}``."""
        return self.standard(Permutation.simple(i, self.n))

    # ------------------------------------------------------------------
    # standard basis
    # ------------------------------------------------------------------
    def right_mul_generator(self, a: HeckeElement, i: int) -> HeckeElement:
        """``a * H_{s_i}`` with ``a`` in the standard basis."""
        out: dict[Permutation, LaurentScalar] = defaultdict(lambda: ZERO)
        for w, c in a._terms.items():
            ws = w.right_mul_simple(i)
            out[ws] = out[ws] + c
            if i in w.right_descents:
                out[w] = out[w] + c * QUADRATIC
        return HeckeElement._raw(self.n, Basis.STANDARD, out)

    def left_mul_generator(self, i: int, a: HeckeElement) -> HeckeElement:
        """``H_{s_i} * a`` with ``a`` in the standard basis."""
        out: dict[Permutation, LaurentScalar] = defaultdict(lambda: ZERO)
        for w, c in a._terms.items():
            sw = w.left_mul_simple(i)
            out[sw] = out[sw] + c
            if i in w.left_descents:
                out[w] = out[w] + c * QUADRATIC
        return HeckeElement._raw(self.n, Basis.STANDARD, out)

    def std_mul(self, a: HeckeElement, b: HeckeElement) -> HeckeElement:
        """
        Product of two standard-basis elements.

        Each ``H_y`` in ``b`` is expanded along its reduced word and applied to
        ``a`` one generator at a time.
        """
        self._require(a, Basis.STANDARD)
        self._require(b, Basis.STANDARD)
        result: dict[Permutation, LaurentScalar] = defaultdict(lambda: ZERO)
        for y, c in b._terms.items():
            partial = a
            for i in y.reduced_word:
                partial = self.right_mul_generator(partial, i)
            for w, d in partial._terms.items():
                result[w] = result[w] + d * c
        return HeckeElement._raw(self.n, Basis.STANDARD, result)

    def bar_standard(self, w: Permutation) -> HeckeElement:
        """``bar(H_w) = H_{w^-1}^{-1}`` in the standard basis."""
        cached = self._bar_cache.get(w)
        if cached is not None:
            return cached
        if w.is_identity:
            result = self.one()
        else:
            i = max(w.right_descents)
            shorter = self.bar_standard(w.right_mul_simple(i))
            # bar(H_s) = H_s + v - v^-1
            result = self.right_mul_generator(shorter, i) + shorter.scale(V - V_INV)
        self._bar_cache[w] = result
        return result

    def bar_element(self, a: HeckeElement) -> HeckeElement:
        """Bar involution: ``v -> v^-1`` on coefficients, ``H_w -> H_{w^-1}^{-1}``."""
        if a.basis is Basis.KL:
            return HeckeElement._raw(self.n, Basis.KL, {w: c.bar() for w, c in a._terms.items()})
        result = self.zero()
        for w, c in a._terms.items():
            result = result + self.bar_standard(w).scale(c.bar())
        return result

    # ------------------------------------------------------------------
    # KL polynomials and basis change
    # ------------------------------------------------------------------
    def kl_polynomial(self, y: Permutation, w: Permutation) -> LaurentScalar:
        return self.table.kl_polynomial(y, w)

    def kl_element(self, w: Permutation) -> HeckeElement:
        """``b_w`` expanded in the standard basis."""
        column = self.table.column(w)
        return HeckeElement._raw(
            self.n, Basis.STANDARD, {y: LaurentScalar.from_dense(0, poly) for y, poly in column.items()}
        )

    def mu(self, x: Permutation, i: int, y: Permutation) -> int:
        """
        ``μ(x, s; y)``: coefficient of ``b_y`` in ``b_s b_x`` besides ``b_{sx}``.

        Equals the coefficient of ``v`` in ``h_{y,x}`` when ``y < x`` and
        ``s y < y``; zero otherwise.
        """
        if i in x.left_descents:
            raise ValueError(f"mu requires s x > x, but s_{i} is a left descent of {x}")
        if i not in y.left_descents or y == x:
            return 0
        return self.table.mu(y, x)

    def to_std(self, a: HeckeElement) -> HeckeElement:
        if a.basis is Basis.STANDARD:
            return a
        result: dict[Permutation, LaurentScalar] = defaultdict(lambda: ZERO)
        for w, c in a._terms.items():
            for y, poly in self.table.column(w).items():
                result[y] = result[y] + c * LaurentScalar.from_dense(0, poly)
        return HeckeElement._raw(self.n, Basis.STANDARD, result)

    def to_kl(self, a: HeckeElement) -> HeckeElement:
        """Triangular solve: peel off the longest remaining ``H_w`` as ``b_w``."""
        if a.basis is Basis.KL:
            return a
        remaining = dict(a._terms)
        result: dict[Permutation, LaurentScalar] = {}
        while remaining:
            w = max(remaining, key=lambda u: u.sort_key)
            c = remaining[w]
            result[w] = c
            for y, poly in self.table.column(w).items():
                value = remaining.get(y, ZERO) - c * LaurentScalar.from_dense(0, poly)
                if value:
                    remaining[y] = value
                else:
                    remaining.pop(y, None)
        return HeckeElement._raw(self.n, Basis.KL, result)

    def to_kl_inversion(self, a: HeckeElement) -> HeckeElement:
        """
        Basis change by the inversion formula
        ``H_y = Σ_x (-1)^{ℓ(y)-ℓ(x)} h_{w0 y, w0 x} b_x``.
        """
        self._require(a, Basis.STANDARD)
        result: dict[Permutation, LaurentScalar] = defaultdict(lambda: ZERO)
        for y, c in a._terms.items():
            w0y = self.w0 * y
            for x in self.elements:
                poly = self.table.h(w0y, self.w0 * x)
                if poly:
                    sign = -1 if (y.length - x.length) % 2 else 1
                    result[x] = result[x] + c * LaurentScalar.from_dense(0, poly) * sign
        return HeckeElement._raw(self.n, Basis.KL, result)

    def convert(self, a: HeckeElement, basis: Basis) -> HeckeElement:
        return self.to_kl(a) if Basis(basis) is Basis.KL else self.to_std(a)

    def kl_element_by_bar_solver(self, w: Permutation) -> HeckeElement:
        """
        ``b_w`` from bar invariance and degree bounds alone.

        Writing ``bar(H_z) = Σ_y R_{y,z} H_y``, invariance of ``Σ h_y H_y``
        forces ``h_y - bar(h_y) = Σ_{z > y} bar(h_z) R_{y,z}``; the unique
        solution with ``h_y ∈ vZ[v]`` is the positive-degree part of the right
        hand side. Independent of the μ recursion; meant for small ranks.
        """
        interval = [y for y in self.elements if bruhat_leq(y, w)]
        interval.sort(key=lambda y: y.sort_key, reverse=True)
        h: dict[Permutation, LaurentScalar] = {}
        bars = {z: self.bar_standard(z) for z in interval}
        for y in interval:
            if y == w:
                h[y] = ONE
                continue
            rhs = ZERO
            for z, hz in h.items():
                r = bars[z].coefficient(y)
                if r:
                    rhs = rhs + hz.bar() * r
            if rhs != -rhs.bar():
                raise MethodDisagreementError(
                    "Bar-invariance system is inconsistent",
                    witness={"y": y.to_json(), "w": w.to_json()},
                )
            h[y] = LaurentScalar({e: c for e, c in rhs.coeffs.items() if e > 0})
        return HeckeElement(self.n, Basis.STANDARD, h)

    # ------------------------------------------------------------------
    # KL basis products
    # ------------------------------------------------------------------
    def left_mul_kl_generator(self, i: int, a: HeckeElement) -> HeckeElement:
        """``b_{s_i} * a`` with ``a`` in the KL basis."""
        out: dict[Permutation, LaurentScalar] = defaultdict(lambda: ZERO)
        for w, c in a._terms.items():
            if i in w.left_descents:
                out[w] = out[w] + c * QUANTUM_TWO
                continue
            sw = w.left_mul_simple(i)
            out[sw] = out[sw] + c
            for z, m in self.table.mu_list(w):
                if i in z.left_descents:
                    out[z] = out[z] + c * m
        return HeckeElement._raw(self.n, Basis.KL, out)

    def right_mul_kl_generator(self, a: HeckeElement, i: int) -> HeckeElement:
        """``a * b_{s_i}`` with ``a`` in the KL basis (μ is inversion invariant)."""
        out: dict[Permutation, LaurentScalar] = defaultdict(lambda: ZERO)
        for w, c in a._terms.items():
            if i in w.right_descents:
                out[w] = out[w] + c * QUANTUM_TWO
                continue
            ws = w.right_mul_simple(i)
            out[ws] = out[ws] + c
            for z, m in self.table.mu_list(w):
                if i in z.right_descents:
                    out[z] = out[z] + c * m
        return HeckeElement._raw(self.n, Basis.KL, out)

    def left_mul_standard_generator_kl(self, i: int, a: HeckeElement) -> HeckeElement:
        """``H_{s_i} * a = (b_{s_i} - v) * a`` with ``a`` in the KL basis."""
        return self.left_mul_kl_generator(i, a) - a.scale(V)

    def left_mul_standard_kl(self, y: Permutation, a: HeckeElement) -> HeckeElement:
        """``H_y * a`` with ``a`` in the KL basis."""
        self._require(a, Basis.KL)
        result = a
        for i in reversed(y.reduced_word):
            result = self.left_mul_standard_generator_kl(i, result)
        return result

    def kl_basis_product(self, x: Permutation, y: Permutation) -> HeckeElement:
        """
        ``b_x b_y`` in the KL basis (memoized).

        With ``s`` the smallest left descent of ``x`` and ``x' = s x``,
        ``b_x = b_s b_{x'} - Σ_{z < x', sz < z} μ(z, x') b_z``.
        """
        key = (x, y)
        cached = self._products.get(key)
        if cached is not None:
            return cached
        if x.is_identity:
            result = self.kl(y)
        else:
            i = min(x.left_descents)
            shorter = x.left_mul_simple(i)
            result = self.left_mul_kl_generator(i, self.kl_basis_product(shorter, y))
            for z, m in self.table.mu_list(shorter):
                if i in z.left_descents:
                    result = result - self.kl_basis_product(z, y).scale(m)
        self._products[key] = result
        return result

    def kl_mul(self, a: HeckeElement, b: HeckeElement) -> HeckeElement:
        self._require(a, Basis.KL)
        self._require(b, Basis.KL)
        result: dict[Permutation, LaurentScalar] = defaultdict(lambda: ZERO)
        for x, c in a._terms.items():
            for y, d in b._terms.items():
                cd = c * d
                for z, e in self.kl_basis_product(x, y)._terms.items():
                    result[z] = result[z] + cd * e
        return HeckeElement._raw(self.n, Basis.KL, result)

    def structure_constant(self, x: Permutation, y: Permutation, z: Permutation) -> LaurentScalar:
        """``c^z_{x,y}``: coefficient of ``b_z`` in ``b_x b_y``."""
        return self.kl_basis_product(x, y).coefficient(z)

    def multiply(self, a: HeckeElement, b: HeckeElement) -> HeckeElement:
        """Product in the basis of ``a``."""
        if a.n != b.n:
            raise ValueError(f"Rank mismatch: H(S_{a.n}) vs H(S_{b.n})")
        if a.basis is Basis.STANDARD:
            return self.std_mul(a, self.to_std(b))
        if b.basis is Basis.KL:
            return self.kl_mul(a, b)
        return self.kl_mul(a, self.to_kl(b))

    def clear_products(self) -> None:
        self._products.clear()

    # ------------------------------------------------------------------
    # twists and smoothness
    # ------------------------------------------------------------------
    def half_twist(self) -> HeckeElement:
        return self.standard(self.w0)

    def half_twist_kl(self) -> HeckeElement:
        """``H_{w0} = Σ_x (-1)^{ℓ(w0)-ℓ(x)} h_{1, w0 x} b_x``."""
        identity = Permutation.identity(self.n)
        top = self.w0.length
        terms = {}
        for x in self.elements:
            poly = self.table.h(identity, self.w0 * x)
            if poly:
                sign = -1 if (top - x.length) % 2 else 1
                terms[x] = LaurentScalar.from_dense(0, poly) * sign
        return HeckeElement._raw(self.n, Basis.KL, terms)

    def is_smooth(self, w: Permutation) -> bool:
        """
        Smoothness by two methods that must agree: every ``h_{y,w}`` equals
        ``v^{ℓ(w)-ℓ(y)}``, and avoidance of 3412 and 4231.
        """
        by_kl = all(
            len(poly) == w.length - y.length + 1 and poly[-1] == 1 and not any(poly[:-1])
            for y, poly in self.table.column(w).items()
        )
        by_patterns = avoids_singular_patterns(w)
        if by_kl != by_patterns:
            raise MethodDisagreementError(
                f"Smoothness of {w} disagrees: KL={by_kl}, patterns={by_patterns}",
                witness={"w": w.to_json(), "kl": by_kl, "patterns": by_patterns},
            )
        return by_kl

    # ------------------------------------------------------------------
    # helpers
    # ------------------------------------------------------------------
    def _require(self, a: HeckeElement, basis: Basis) -> None:
        if a.n != self.n:
            raise ValueError(f"Element of H(S_{a.n}) used in H(S_{self.n})")
        if a.basis is not basis:
            raise ValueError(f"Expected {basis.value} basis, got {a.basis.value}")
