"""
Symmetric-group elements in one-line notation.

Conventions
-----------
A permutation stores its images ``w(1), ..., w(n)``. The product ``x * y``
is composition with ``y`` applied first, so right multiplication by the
simple reflection ``s_i`` swaps positions ``i`` and ``i+1`` while left
multiplication swaps the values ``i`` and ``i+1``. Simple reflections are
printed with the letters ``s, t, u, v, ...`` for ``s_1, s_2, s_3, s_4, ...``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

LETTERS = "stuvwxyz"
IDENTITY_TOKENS = {"", "1", "id", "e"}


@dataclass(frozen=True)
class Permutation:
    """
    Element of S_n in one-line notation.

    Parameters
    ----------
    images : sequence of int
        ``w(1), ..., w(n)``; must be a bijection of ``{1..n}``

    Examples
    --------
    >>> Permutation((2, 1, 3)).length
    1
    >>> str(Permutation.from_word((1, 2, 1), 3))
    'sts'
    """

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        if not images or sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"Not a permutation of 1..n: {self.images!r}")
        object.__setattr__(self, "images", images)

    # ------------------------------------------------------------------
    # constructors
    # ------------------------------------------------------------------
    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def longest(cls, n: int) -> Permutation:
        return cls(tuple(range(n, 0, -1)))

    @classmethod
    def simple(cls, i: int, n: int) -> Permutation:
        return cls.identity(n).right_mul_simple(i)

    @classmethod
    def from_word(cls, word: Iterable[int], n: int) -> Permutation:
        """Evaluates ``s_{i_1} s_{i_2} ... s_{i_k}`` left to right."""
        images = list(range(1, n + 1))
        for i in word:
            if not 1 <= i < n:
                raise ValueError(f"Simple reflection index {i} out of range for S_{n}")
            images[i - 1], images[i] = images[i], images[i - 1]
        return cls(tuple(images))

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> Permutation:
        """
        Parses user input.

        Accepts ``id``/``1``/``e`` for the identity, letter words such as
        ``tsut``, digit strings such as ``35421`` and comma or space
        separated one-line images such as ``[2,1,3]``.

        Parameters
        ----------
        text : str
            Input text
        n : int or None
            Rank; required for letter words and the identity

        Returns
        -------
        Permutation
        """
        raw = text.strip().strip("[]()")
        if raw.lower() in IDENTITY_TOKENS:
            if n is None:
                raise ValueError("Rank is required to parse the identity")
            return cls.identity(n)

        if raw.isalpha():
            if n is None:
                raise ValueError(f"Rank is required to parse the word {text!r}")
            try:
                word = [LETTERS.index(ch) + 1 for ch in raw.lower()]
            except ValueError:
                raise ValueError(f"Unknown letter in word {text!r}") from None
            return cls.from_word(word, n)

        if "," in raw or " " in raw:
            images = tuple(int(tok) for tok in raw.replace(",", " ").split())
        elif raw.isdigit():
            images = tuple(int(ch) for ch in raw)
        else:
            raise ValueError(f"Cannot parse permutation {text!r}")
        w = cls(images)
        if n is not None and w.n != n:
            raise ValueError(f"Permutation {text!r} has rank {w.n}, expected {n}")
        return w

    @classmethod
    def from_json(cls, payload: Sequence[int]) -> Permutation:
        return cls(tuple(payload))

    # ------------------------------------------------------------------
    # group structure
    # ------------------------------------------------------------------
    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        if not isinstance(other, Permutation):
            return NotImplemented
        if other.n != self.n:
            raise ValueError(f"Rank mismatch: S_{self.n} * S_{other.n}")
        return Permutation(tuple(self.images[j - 1] for j in other.images))

    @cached_property
    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for position, value in enumerate(self.images, start=1):
            inv[value - 1] = position
        return Permutation(tuple(inv))

    @cached_property
    def length(self) -> int:
        images = self.images
        return sum(
            1
            for i in range(len(images))
            for j in range(i + 1, len(images))
            if images[i] > images[j]
        )

    @property
    def is_identity(self) -> bool:
        return self.images == tuple(range(1, self.n + 1))

    @property
    def is_involution(self) -> bool:
        return self.inverse == self

    @cached_property
    def right_descents(self) -> frozenset[int]:
        w = self.images
        return frozenset(i for i in range(1, self.n) if w[i - 1] > w[i])

    @cached_property
    def left_descents(self) -> frozenset[int]:
        return self.inverse.right_descents

    def right_mul_simple(self, i: int) -> Permutation:
        """Returns ``w s_i`` (positions ``i`` and ``i+1`` swapped)."""
        if not 1 <= i < self.n:
            raise ValueError(f"Simple reflection index {i} out of range for S_{self.n}")
        images = list(self.images)
        images[i - 1], images[i] = images[i], images[i - 1]
        return Permutation(tuple(images))

    def left_mul_simple(self, i: int) -> Permutation:
        """Returns ``s_i w`` (values ``i`` and ``i+1`` swapped)."""
        if not 1 <= i < self.n:
            raise ValueError(f"Simple reflection index {i} out of range for S_{self.n}")
        swap = {i: i + 1, i + 1: i}
        return Permutation(tuple(swap.get(v, v) for v in self.images))

    @cached_property
    def reduced_word(self) -> tuple[int, ...]:
        """Lexicographically smallest reduced word (smallest left descent first)."""
        word = []
        w = self
        while not w.is_identity:
            i = min(w.left_descents)
            word.append(i)
            w = w.left_mul_simple(i)
        return tuple(word)

    def tau(self) -> Permutation:
        """The diagram automorphism ``w0 w w0``."""
        n = self.n
        return Permutation(tuple(n + 1 - self.images[n - i] for i in range(1, n + 1)))

    def direct_sum(self, other: Permutation) -> Permutation:
        """``w ⊔ x``: ``other`` acts on the last ``other.n`` strands."""
        shift = self.n
        return Permutation(self.images + tuple(v + shift for v in other.images))

    def extend(self, n: int) -> Permutation:
        """Embeds into S_n as ``w ⊔ 1``."""
        if n < self.n:
            raise ValueError(f"Cannot embed S_{self.n} into S_{n}")
        if n == self.n:
            return self
        return self.direct_sum(Permutation.identity(n - self.n))

    def restrict(self, k: int) -> Permutation:
        """Inverse of `extend`; requires ``k+1..n`` to be fixed."""
        if any(self.images[i - 1] != i for i in range(k + 1, self.n + 1)):
            raise ValueError(f"{self} does not lie in S_{k}")
        return Permutation(self.images[:k])

    # ------------------------------------------------------------------
    # presentation
    # ------------------------------------------------------------------
    @property
    def sort_key(self) -> tuple:
        return (self.length, self.images)

    def word(self) -> Word:
        return Word(self.reduced_word, self.n)

    def to_json(self) -> list[int]:
        return list(self.images)

    def __str__(self) -> str:
        if self.n - 1 > len(LETTERS):
            return "[" + ",".join(map(str, self.images)) + "]"
        if self.is_identity:
            return "1"
        return "".join(LETTERS[i - 1] for i in self.reduced_word)

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"


@dataclass(frozen=True)
class Word:
    """
    Sequence of simple-reflection indices in S_n.

    Words are derived data: the canonical encoding of an element is its
    one-line notation. Used for positive braid lifts and reduced expressions.
    """

    letters: tuple[int, ...]
    n: int

    def __post_init__(self):
        letters = tuple(int(i) for i in self.letters)
        for i in letters:
            if not 1 <= i < self.n:
                raise ValueError(f"Letter {i} out of range for S_{self.n}")
        object.__setattr__(self, "letters", letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __add__(self, other: Word) -> Word:
        if other.n != self.n:
            raise ValueError("Rank mismatch in word concatenation")
        return Word(self.letters + other.letters, self.n)

    def evaluate(self) -> Permutation:
        return Permutation.from_word(self.letters, self.n)

    @property
    def is_reduced(self) -> bool:
        return self.evaluate().length == len(self.letters)

    def to_json(self) -> list[int]:
        return list(self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return "".join(LETTERS[i - 1] for i in self.letters)


# ----------------------------------------------------------------------
# module-level operations
# ----------------------------------------------------------------------
def length(w: Permutation) -> int:
    return w.length


def longest_element(n: int) -> Permutation:
    return Permutation.longest(n)


def _check_composition(column_sizes: Sequence[int]) -> tuple[int, ...]:
    sizes = tuple(column_sizes)
    if not sizes or any(not isinstance(k, int) or k <= 0 for k in sizes):
        raise ValueError(f"Bad composition: {column_sizes!r}")
    return sizes


def _blocks(sizes: Sequence[int]) -> Iterator[range]:
    start = 0
    for k in sizes:
        yield range(start, start + k)
        start += k


def parabolic_longest(column_sizes: Sequence[int]) -> Permutation:
    """
    Longest element ``w_I`` of ``S_{k_1} x ... x S_{k_r}``.

    Parameters
    ----------
    column_sizes : sequence of int
        Block sizes ``k_1, ..., k_r``, all positive

    Returns
    -------
    Permutation
        Reverses each consecutive block; length ``Σ binom(k_i, 2)``
    """
    sizes = _check_composition(column_sizes)
    images: list[int] = []
    for block in _blocks(sizes):
        images.extend(i + 1 for i in reversed(block))
    return Permutation(tuple(images))


def bruhat_leq(x: Permutation, w: Permutation) -> bool:
    """Bruhat comparison by the tableau criterion on sorted prefixes."""
    if x.n != w.n:
        raise ValueError(f"Rank mismatch: S_{x.n} vs S_{w.n}")
    if x.length > w.length:
        return False
    for k in range(1, x.n):
        xs = sorted(x.images[:k])
        ws = sorted(w.images[:k])
        if any(a > b for a, b in zip(xs, ws)):
            return False
    return True


def bruhat_leq_subword(x: Permutation, w: Permutation) -> bool:
    """Subword criterion: some reduced subexpression of a rex of w evaluates to x."""
    if x.n != w.n:
        raise ValueError(f"Rank mismatch: S_{x.n} vs S_{w.n}")
    word = w.reduced_word
    for mask in itertools.product((False, True), repeat=len(word)):
        letters = [i for i, keep in zip(word, mask) if keep]
        if len(letters) != x.length:
            continue
        if Permutation.from_word(letters, w.n) == x:
            return True
    return False


def descents(w: Permutation, side: str = "left") -> frozenset[int]:
    if side == "left":
        return w.left_descents
    if side == "right":
        return w.right_descents
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def tau(w: Permutation) -> Permutation:
    return w.tau()


def coset_decompose_left(w: Permutation, k: int) -> tuple[Permutation, Permutation]:
    """
    Factorizes ``w = x t`` with ``t`` in S_k and ``x`` minimal in ``w S_k``.

    Parameters
    ----------
    w : Permutation
        Element of S_n
    k : int
        ``1 <= k <= n``

    Returns
    -------
    tuple[Permutation, Permutation]
        ``(t, x)`` with ``t`` in S_k (rank k) and ``x`` in S_n; lengths add
    """
    if not 1 <= k <= w.n:
        raise ValueError(f"k={k} out of range for S_{w.n}")
    x = Permutation(tuple(sorted(w.images[:k])) + w.images[k:])
    t = x.inverse * w
    return t.restrict(k), x


def coset_decompose_right(w: Permutation, k: int) -> tuple[Permutation, Permutation]:
    """
    Factorizes ``w = u y`` with ``u`` in S_k and ``y`` minimal in ``S_k w``.

    The minimal representative lists the values ``1..k`` in increasing order.

    Returns
    -------
    tuple[Permutation, Permutation]
        ``(u, y)`` with ``u`` of rank k and ``y`` in S_n
    """
    if not 1 <= k <= w.n:
        raise ValueError(f"k={k} out of range for S_{w.n}")
    small = iter(range(1, k + 1))
    y = Permutation(tuple(next(small) if v <= k else v for v in w.images))
    u = w * y.inverse
    return u.restrict(k), y


def cabled_crossing(k: int, l: int) -> Permutation:
    """Minimal element of ``w0 (S_k x S_l)``: the first k strands cross over the last l."""
    if k <= 0 or l <= 0:
        raise ValueError(f"Blocks must be positive, got ({k}, {l})")
    return Permutation(tuple(range(l + 1, l + k + 1)) + tuple(range(1, l + 1)))


def cabled_half_twist(column_sizes: Sequence[int]) -> Permutation:
    """Minimal element ``x_λ`` of ``w0 W_λ``, so that ``w0 = x_λ w_λ``."""
    sizes = _check_composition(column_sizes)
    n = sum(sizes)
    w0 = list(range(n, 0, -1))
    images: list[int] = []
    for block in _blocks(sizes):
        images.extend(sorted(w0[i] for i in block))
    return Permutation(tuple(images))


def positive_lift_word(w: Permutation) -> Word:
    """Positive braid lift of w: its lexicographically smallest reduced word."""
    return w.word()


def contains_pattern(w: Permutation, pattern: Sequence[int]) -> bool:
    """True when some subsequence of ``w``'s one-line notation is order-isomorphic to ``pattern``."""
    m = len(pattern)
    for positions in itertools.combinations(range(w.n), m):
        values = [w.images[p] for p in positions]
        ranks = tuple(sorted(values).index(v) + 1 for v in values)
        if ranks == tuple(pattern):
            return True
    return False


def avoids_singular_patterns(w: Permutation) -> bool:
    """3412- and 4231-avoidance (the combinatorial smoothness criterion)."""
    return not contains_pattern(w, (3, 4, 1, 2)) and not contains_pattern(w, (4, 2, 3, 1))


def remove_largest(w: Permutation) -> Permutation:
    """``w^-`` in S_{n-1}: the one-line notation with ``n`` deleted."""
    if w.n < 2:
        raise ValueError("Need n >= 2")
    return Permutation(tuple(v for v in w.images if v != w.n))


def tail(w: Permutation) -> tuple[int, ...]:
    """Entries after the largest value in one-line notation."""
    position = w.images.index(w.n)
    return w.images[position + 1:]


@lru_cache(maxsize=None)
def all_permutations(n: int) -> tuple[Permutation, ...]:
    """All of S_n sorted by length, then lexicographically."""
    perms = [Permutation(p) for p in itertools.permutations(range(1, n + 1))]
    return tuple(sorted(perms, key=lambda w: w.sort_key))
