"""Integer polynomials in x_1..x_n with the symmetric-group action permuting variables."""
from __future__ import annotations

from functools import lru_cache
from typing import Iterable

from sympy.polys.domains import ZZ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, PolyRing, ring

from .permutations import Permutation


@lru_cache(maxsize=None)
def polynomial_ring(n: int) -> PolyRing:
    """``ZZ[x1..xn]`` with graded lexicographic order."""
    if n < 1:
        raise ValueError(f"Need at least one variable, got n={n}")
    names = ",".join(f"x{i}" for i in range(1, n + 1))
    return ring(names, ZZ, grlex)[0]


class MultiPoly:
    """
    Sparse multivariate integer polynomial.

    Wraps a sympy `PolyElement`; the wrapper fixes the number of variables,
    adds the permutation action and the canonical JSON form.

    Parameters
    ----------
    n : int
        Number of variables
    element : PolyElement, optional
        Element of ``polynomial_ring(n)``; zero when omitted
    """

    __slots__ = ("n", "element")

    def __init__(self, n: int, element: PolyElement | None = None):
        self.n = n
        R = polynomial_ring(n)
        self.element = R.zero if element is None else element
        if self.element.ring != R:
            raise ValueError("Polynomial belongs to a different ring")

    @classmethod
    def variable(cls, i: int, n: int) -> MultiPoly:
        if not 1 <= i <= n:
            raise ValueError(f"x{i} out of range for {n} variables")
        return cls(n, polynomial_ring(n).gens[i - 1])

    @classmethod
    def one(cls, n: int) -> MultiPoly:
        return cls(n, polynomial_ring(n).one)

    @classmethod
    def from_terms(cls, n: int, terms: Iterable[tuple[Iterable[int], int]]) -> MultiPoly:
        R = polynomial_ring(n)
        data: dict[tuple[int, ...], int] = {}
        for monom, coeff in terms:
            monom = tuple(monom)
            data[monom] = data.get(monom, 0) + int(coeff)
        return cls(n, R.from_dict({m: ZZ(c) for m, c in data.items() if c}))

    def _wrap(self, element: PolyElement) -> MultiPoly:
        return MultiPoly(self.n, element)

    def _check(self, other: MultiPoly) -> None:
        if other.n != self.n:
            raise ValueError(f"Variable count mismatch: {self.n} vs {other.n}")

    def __add__(self, other: MultiPoly) -> MultiPoly:
        self._check(other)
        return self._wrap(self.element + other.element)

    def __sub__(self, other: MultiPoly) -> MultiPoly:
        self._check(other)
        return self._wrap(self.element - other.element)

    def __neg__(self) -> MultiPoly:
        return self._wrap(-self.element)

    def __mul__(self, other: MultiPoly | int) -> MultiPoly:
        if isinstance(other, int):
            return self._wrap(self.element * other)
        self._check(other)
        return self._wrap(self.element * other.element)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.n == other.n and self.element == other.element

    def __hash__(self) -> int:
        return hash((self.n, tuple(sorted(self.element.items()))))

    @property
    def is_zero(self) -> bool:
        return not self.element

    def act(self, w: Permutation) -> MultiPoly:
        """Applies ``w``: ``x_i -> x_{w(i)}``."""
        if w.n != self.n:
            raise ValueError(f"S_{w.n} cannot act on {self.n} variables")
        data = {}
        for monom, coeff in self.element.items():
            image = [0] * self.n
            for i, e in enumerate(monom):
                image[w.images[i] - 1] = e
            data[tuple(image)] = coeff
        return self._wrap(polynomial_ring(self.n).from_dict(data))

    def degrees(self) -> set[int]:
        return {sum(m) for m in self.element.keys()}

    @property
    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int:
        """Total degree; -1 for zero."""
        return max(self.degrees(), default=-1)

    def terms(self) -> list[tuple[tuple[int, ...], int]]:
        """Terms in decreasing graded lexicographic order."""
        return [(tuple(m), int(c)) for m, c in self.element.terms(order=grlex)]

    def coefficient(self, monom: tuple[int, ...]) -> int:
        return int(self.element.get(tuple(monom), 0))

    def to_json(self) -> list:
        return [[list(m), c] for m, c in sorted(self.terms())]

    def __str__(self) -> str:
        return str(self.element.as_expr()) if self.element else "0"

    def __repr__(self) -> str:
        return f"MultiPoly({self})"


def root(i: int, j: int, n: int) -> MultiPoly:
    """``x_i - x_j``."""
    return MultiPoly.variable(i, n) - MultiPoly.variable(j, n)
