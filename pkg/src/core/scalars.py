"""
Exact coefficient arithmetic in Z[v, v^-1] and its fraction field.

`LaurentScalar` is an immutable, canonically trimmed dense representation:
the lowest exponent plus a tuple of integer coefficients whose first and last
entries are nonzero. `RationalScalar` stores a reduced numerator/denominator
pair; reduction uses sympy's polynomial gcd over ZZ.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping, Union

from sympy import Poly, symbols

V = symbols("v")

ScalarLike = Union["LaurentScalar", int]


class LaurentScalar:
    """
    Integer Laurent polynomial in the formal variable v.

    Parameters
    ----------
    coeffs : mapping of int to int, optional
        Sparse ``exponent -> coefficient`` data; zero entries are dropped

    Examples
    --------
    >>> LaurentScalar({2: 1, 4: 1}).bar()
    LaurentScalar('v^-4 + v^-2')
    >>> LaurentScalar.quantum_integer(2) == LaurentScalar({-1: 1, 1: 1})
    True
    """

    __slots__ = ("_low", "_coeffs", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        items = {int(e): int(c) for e, c in (coeffs or {}).items() if c}
        if not items:
            self._low, self._coeffs = 0, ()
        else:
            low, high = min(items), max(items)
            self._low = low
            self._coeffs = tuple(items.get(e, 0) for e in range(low, high + 1))
        self._hash = None

    @classmethod
    def from_dense(cls, low: int, coeffs: Iterable[int]) -> LaurentScalar:
        """Builds ``Σ coeffs[i] v^(low+i)`` and trims zeros at both ends."""
        coeffs = [int(c) for c in coeffs]
        start = 0
        while start < len(coeffs) and coeffs[start] == 0:
            start += 1
        end = len(coeffs)
        while end > start and coeffs[end - 1] == 0:
            end -= 1
        obj = cls.__new__(cls)
        if start == end:
            obj._low, obj._coeffs = 0, ()
        else:
            obj._low, obj._coeffs = low + start, tuple(coeffs[start:end])
        obj._hash = None
        return obj

    @classmethod
    def zero(cls) -> LaurentScalar:
        return cls.from_dense(0, ())

    @classmethod
    def one(cls) -> LaurentScalar:
        return cls.from_dense(0, (1,))

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> LaurentScalar:
        return cls.from_dense(exponent, (coeff,))

    @classmethod
    def quantum_integer(cls, k: int) -> LaurentScalar:
        """``[k] = v^-(k-1) + v^-(k-3) + ... + v^(k-1)``."""
        if k < 0:
            raise ValueError(f"Quantum integer needs k >= 0, got {k}")
        if k == 0:
            return cls.zero()
        dense = [0] * (2 * k - 1)
        for i in range(0, 2 * k - 1, 2):
            dense[i] = 1
        return cls.from_dense(-(k - 1), dense)

    @classmethod
    def quantum_factorial(cls, k: int) -> LaurentScalar:
        result = cls.one()
        for i in range(1, k + 1):
            result = result * cls.quantum_integer(i)
        return result

    @classmethod
    def coerce(cls, value: ScalarLike) -> LaurentScalar:
        if isinstance(value, LaurentScalar):
            return value
        if isinstance(value, int):
            return cls.from_dense(0, (value,))
        raise TypeError(f"Cannot coerce {type(value).__name__} to LaurentScalar")

    # ------------------------------------------------------------------
    # inspection
    # ------------------------------------------------------------------
    @property
    def coeffs(self) -> dict[int, int]:
        return {self._low + i: c for i, c in enumerate(self._coeffs) if c}

    def items(self) -> list[tuple[int, int]]:
        return sorted(self.coeffs.items())

    def coefficient(self, exponent: int) -> int:
        i = exponent - self._low
        if 0 <= i < len(self._coeffs):
            return self._coeffs[i]
        return 0

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    @property
    def min_degree(self) -> int:
        if not self._coeffs:
            raise ValueError("Zero has no minimal degree")
        return self._low

    @property
    def max_degree(self) -> int:
        if not self._coeffs:
            raise ValueError("Zero has no maximal degree")
        return self._low + len(self._coeffs) - 1

    @property
    def is_monomial(self) -> bool:
        return len(self.coeffs) == 1

    def is_bar_invariant(self) -> bool:
        return self == self.bar()

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self._coeffs)

    def in_positive_part(self) -> bool:
        """Membership in ``v Z[v]``."""
        return self.is_zero or self._low >= 1

    # ------------------------------------------------------------------
    # ring operations
    # ------------------------------------------------------------------
    def __add__(self, other: ScalarLike) -> LaurentScalar:
        try:
            other = LaurentScalar.coerce(other)
        except TypeError:
            return NotImplemented
        if not other._coeffs:
            return self
        if not self._coeffs:
            return other
        low = min(self._low, other._low)
        high = max(self._low + len(self._coeffs), other._low + len(other._coeffs))
        dense = [0] * (high - low)
        for i, c in enumerate(self._coeffs):
            dense[self._low - low + i] += c
        for i, c in enumerate(other._coeffs):
            dense[other._low - low + i] += c
        return LaurentScalar.from_dense(low, dense)

    __radd__ = __add__

    def __neg__(self) -> LaurentScalar:
        return LaurentScalar.from_dense(self._low, (-c for c in self._coeffs))

    def __sub__(self, other: ScalarLike) -> LaurentScalar:
        try:
            other = LaurentScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: ScalarLike) -> LaurentScalar:
        return LaurentScalar.coerce(other) - self

    def __mul__(self, other: ScalarLike) -> LaurentScalar:
        if isinstance(other, int):
            return LaurentScalar.from_dense(self._low, (c * other for c in self._coeffs))
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        if not self._coeffs or not other._coeffs:
            return LaurentScalar.zero()
        dense = [0] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if a:
                for j, b in enumerate(other._coeffs):
                    dense[i + j] += a * b
        return LaurentScalar.from_dense(self._low + other._low, dense)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> LaurentScalar:
        if exponent < 0:
            if not self.is_monomial or abs(self._coeffs[0]) != 1:
                raise ValueError("Only unit monomials have negative powers")
            return LaurentScalar.monomial(self._low * exponent, self._coeffs[0] ** (-exponent))
        result = LaurentScalar.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def shift(self, k: int) -> LaurentScalar:
        """Multiplication by ``v^k``."""
        if not self._coeffs:
            return self
        return LaurentScalar.from_dense(self._low + k, self._coeffs)

    def bar(self) -> LaurentScalar:
        """The involution ``v -> v^-1``."""
        if not self._coeffs:
            return self
        high = self._low + len(self._coeffs) - 1
        return LaurentScalar.from_dense(-high, reversed(self._coeffs))

    def exact_divide(self, other: LaurentScalar) -> LaurentScalar:
        """
        Division in Z[v, v^-1] that must be exact.

        Raises
        ------
        ZeroDivisionError
            If ``other`` is zero
        ValueError
            If the quotient is not a Laurent polynomial with integer coefficients
        """
        other = LaurentScalar.coerce(other)
        if other.is_zero:
            raise ZeroDivisionError("Division by the zero Laurent polynomial")
        if self.is_zero:
            return self
        remainder = list(self._coeffs)
        divisor = other._coeffs
        lead = divisor[-1]
        quotient_len = len(remainder) - len(divisor) + 1
        if quotient_len <= 0:
            raise ValueError(f"{self} is not divisible by {other}")
        quotient = [0] * quotient_len
        for i in range(quotient_len - 1, -1, -1):
            top = remainder[i + len(divisor) - 1]
            if top % lead:
                raise ValueError(f"{self} is not divisible by {other}")
            q = top // lead
            quotient[i] = q
            if q:
                for j, d in enumerate(divisor):
                    remainder[i + j] -= q * d
        if any(remainder):
            raise ValueError(f"{self} is not divisible by {other}")
        return LaurentScalar.from_dense(self._low - other._low, quotient)

    def evaluate(self, value: int | Fraction) -> Fraction:
        """Specializes ``v`` to a nonzero rational number."""
        value = Fraction(value)
        if value == 0 and self._coeffs and self._low < 0:
            raise ZeroDivisionError("Cannot evaluate negative powers at v=0")
        return sum(
            (Fraction(c) * value ** (self._low + i) for i, c in enumerate(self._coeffs) if c),
            Fraction(0),
        )

    # ------------------------------------------------------------------
    # sympy bridge
    # ------------------------------------------------------------------
    def to_poly(self) -> tuple[Poly, int]:
        """Returns ``(P, low)`` with ``self = v^low * P(v)`` and ``P(0) != 0``."""
        if not self._coeffs:
            return Poly(0, V, domain="ZZ"), 0
        return Poly(list(reversed(self._coeffs)), V, domain="ZZ"), self._low

    @classmethod
    def from_poly(cls, poly: Poly, low: int = 0) -> LaurentScalar:
        coeffs = [int(c) for c in reversed(poly.all_coeffs())]
        return cls.from_dense(low, coeffs)

    # ------------------------------------------------------------------
    # comparison and presentation
    # ------------------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentScalar.coerce(other)
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        return self._low == other._low and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._low, self._coeffs))
        return self._hash

    def to_json(self) -> list[list[int]]:
        return [[e, c] for e, c in self.items()]

    @classmethod
    def from_json(cls, payload: Iterable[Iterable[int]]) -> LaurentScalar:
        return cls({int(e): int(c) for e, c in payload})

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for e, c in sorted(self.coeffs.items()):
            if e == 0:
                body = str(abs(c))
            else:
                power = "v" if e == 1 else f"v^{e}"
                body = power if abs(c) == 1 else f"{abs(c)}{power}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"LaurentScalar({str(self)!r})"


def bar(p: LaurentScalar) -> LaurentScalar:
    return p.bar()


def v_power(k: int) -> LaurentScalar:
    return LaurentScalar.monomial(k)


def quantum_factorial_product(column_sizes: Iterable[int]) -> LaurentScalar:
    """Poincaré polynomial ``π(S_k1 x ... x S_kr) = [k1]! ... [kr]!``."""
    sizes = list(column_sizes)
    if any(k <= 0 for k in sizes):
        raise ValueError(f"Sizes must be positive: {sizes!r}")
    return reduce(lambda acc, k: acc * LaurentScalar.quantum_factorial(k), sizes, LaurentScalar.one())


def laurent_gcd(values: Iterable[LaurentScalar]) -> LaurentScalar:
    """
    Gcd of Laurent polynomials up to units ``±v^k``.

    The result is a polynomial with nonzero constant term and positive
    leading coefficient. Zero entries are skipped; gcd of nothing is 1.
    """
    result: Poly | None = None
    for value in values:
        if value.is_zero:
            continue
        poly, _ = value.to_poly()
        result = poly if result is None else result.gcd(poly)
        if result.degree() == 0 and abs(result.LC()) == 1:
            break
    if result is None:
        return LaurentScalar.one()
    if result.LC() < 0:
        result = -result
    return LaurentScalar.from_poly(result)


class RationalScalar:
    """
    Element of Q(v) stored as a reduced fraction of Laurent polynomials.

    Canonical form: ``numerator / denominator`` where the denominator is a
    polynomial in v with nonzero constant term and positive leading
    coefficient, coprime to the numerator over ZZ[v]. Any power of v is
    carried by the numerator.

    Examples
    --------
    >>> q2 = LaurentScalar({-1: 1, 1: 1})
    >>> RationalScalar(q2 * LaurentScalar({-1: -1, 1: 1}), LaurentScalar({-1: -1, 1: 1})).numerator == q2
    True
    """

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: ScalarLike, denominator: ScalarLike = 1):
        numerator = LaurentScalar.coerce(numerator)
        denominator = LaurentScalar.coerce(denominator)
        if denominator.is_zero:
            raise ZeroDivisionError("RationalScalar with zero denominator")
        self.numerator, self.denominator = _normalize(numerator, denominator)

    @classmethod
    def coerce(cls, value: Union["RationalScalar", ScalarLike]) -> RationalScalar:
        if isinstance(value, RationalScalar):
            return value
        return cls(value)

    @property
    def is_zero(self) -> bool:
        return self.numerator.is_zero

    def __bool__(self) -> bool:
        return not self.numerator.is_zero

    @property
    def is_laurent(self) -> bool:
        return self.denominator == LaurentScalar.one()

    def __add__(self, other) -> RationalScalar:
        other = RationalScalar.coerce(other)
        if self.denominator == other.denominator:
            return RationalScalar(self.numerator + other.numerator, self.denominator)
        return RationalScalar(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    __radd__ = __add__

    def __neg__(self) -> RationalScalar:
        return RationalScalar(-self.numerator, self.denominator)

    def __sub__(self, other) -> RationalScalar:
        return self + (-RationalScalar.coerce(other))

    def __rsub__(self, other) -> RationalScalar:
        return RationalScalar.coerce(other) - self

    def __mul__(self, other) -> RationalScalar:
        other = RationalScalar.coerce(other)
        return RationalScalar(self.numerator * other.numerator, self.denominator * other.denominator)

    __rmul__ = __mul__

    def inverse(self) -> RationalScalar:
        if self.is_zero:
            raise ZeroDivisionError("Inverse of zero")
        return RationalScalar(self.denominator, self.numerator)

    def __truediv__(self, other) -> RationalScalar:
        return self * RationalScalar.coerce(other).inverse()

    def __rtruediv__(self, other) -> RationalScalar:
        return RationalScalar.coerce(other) * self.inverse()

    def bar(self) -> RationalScalar:
        return RationalScalar(self.numerator.bar(), self.denominator.bar())

    def evaluate(self, value: int | Fraction) -> Fraction:
        den = self.denominator.evaluate(value)
        if den == 0:
            raise ZeroDivisionError(f"Denominator vanishes at v={value}")
        return self.numerator.evaluate(value) / den

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, LaurentScalar)):
            other = RationalScalar(other)
        if not isinstance(other, RationalScalar):
            return NotImplemented
        return self.numerator == other.numerator and self.denominator == other.denominator

    def __hash__(self) -> int:
        return hash((self.numerator, self.denominator))

    def to_json(self) -> dict:
        return {"num": self.numerator.to_json(), "den": self.denominator.to_json()}

    def __str__(self) -> str:
        if self.is_laurent:
            return str(self.numerator)
        return f"({self.numerator}) / ({self.denominator})"

    def __repr__(self) -> str:
        return f"RationalScalar({str(self)!r})"


def _normalize(numerator: LaurentScalar, denominator: LaurentScalar) -> tuple[LaurentScalar, LaurentScalar]:
    if numerator.is_zero:
        return numerator, LaurentScalar.one()
    num_poly, num_low = numerator.to_poly()
    den_poly, den_low = denominator.to_poly()
    common = num_poly.gcd(den_poly)
    num_poly = num_poly.exquo(common)
    den_poly = den_poly.exquo(common)
    if den_poly.LC() < 0:
        num_poly, den_poly = -num_poly, -den_poly
    return (
        LaurentScalar.from_poly(num_poly, num_low - den_low),
        LaurentScalar.from_poly(den_poly, 0),
    )


def rational_normalize(numerator: ScalarLike, denominator: ScalarLike) -> RationalScalar:
    return RationalScalar(numerator, denominator)
