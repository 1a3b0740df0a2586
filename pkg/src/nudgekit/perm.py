"""Permutations of {1..n}, inversion sets and the pair-set action.

All public functions use 1-based points. A permutation ``p`` is stored in
one-line form, ``p.images[k - 1] == p(k)``. Composition reads right to left:
``compose(a, b)(x) == a(b(x))``.

Inversion sets live in :class:`PairSet`, a bitset over the ``n(n-1)/2``
pairs ``(i, j)`` with ``i < j``. Pair ``(i, j)`` occupies bit
``(i-1)(2n-i)/2 + (j-i-1)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

MAX_DEGREE = 64


class DegreeError(ValueError):
    """Raised for invalid degrees or when operands of different degree meet."""


class PermutationParseError(ValueError):
    pass


def _check_degree(n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise DegreeError(f"invalid degree {n!r}: must be an integer >= 1")
    if n > MAX_DEGREE:
        raise DegreeError(f"degree {n} exceeds the supported maximum {MAX_DEGREE}")


@dataclass(frozen=True, order=True, slots=True)
class Permutation:
    """A bijection of {1..n} in one-line form."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        images = tuple(int(x) for x in self.images)
        object.__setattr__(self, "images", images)
        _check_degree(len(images))
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"{list(images)} is not a permutation of 1..{len(images)}")

    @classmethod
    def _unchecked(cls, images: tuple[int, ...]) -> Permutation:
        # hot path for closure and group construction; caller guarantees validity
        obj = object.__new__(cls)
        object.__setattr__(obj, "images", images)
        return obj

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, k: int) -> int:
        if not 1 <= k <= len(self.images):
            raise ValueError(f"point {k} outside 1..{len(self.images)}")
        return self.images[k - 1]

    def __str__(self) -> str:
        return format_one_line(self)

    def __repr__(self) -> str:
        return f"Permutation([{', '.join(map(str, self.images))}])"


def identity(n: int) -> Permutation:
    _check_degree(n)
    return Permutation._unchecked(tuple(range(1, n + 1)))


def omega0(n: int) -> Permutation:
    """The order-reversing permutation ``[n, n-1, ..., 1]``."""
    _check_degree(n)
    return Permutation._unchecked(tuple(range(n, 0, -1)))


def compose(a: Permutation, b: Permutation) -> Permutation:
    """Return ``a ∘ b``, i.e. the map ``x -> a(b(x))``."""
    if a.n != b.n:
        raise DegreeError(f"cannot compose degree {a.n} with degree {b.n}")
    ai = a.images
    return Permutation._unchecked(tuple([ai[y - 1] for y in b.images]))


def inverse(p: Permutation) -> Permutation:
    inv = [0] * p.n
    for k, v in enumerate(p.images, start=1):
        inv[v - 1] = k
    return Permutation._unchecked(tuple(inv))


def is_identity(p: Permutation) -> bool:
    return all(v == k for k, v in enumerate(p.images, start=1))


# --- pair indexing -------------------------------------------------------


def pair_count(n: int) -> int:
    return n * (n - 1) // 2


def pair_index(i: int, j: int, n: int) -> int:
    """Bit position of the pair ``(i, j)``, ``1 <= i < j <= n``."""
    if not 1 <= i < j <= n:
        raise ValueError(f"({i},{j}) is not an ordered pair in 1..{n}")
    return (i - 1) * (2 * n - i) // 2 + (j - i - 1)


@lru_cache(maxsize=None)
def _pairs(n: int) -> tuple[tuple[int, int], ...]:
    # row-major upper triangle, matches pair_index
    return tuple((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1))


def pair_at(index: int, n: int) -> tuple[int, int]:
    return _pairs(n)[index]


@dataclass(frozen=True, slots=True)
class PairSet:
    """A set of ordered pairs ``(i, j)``, ``1 <= i < j <= n``, as a bitset."""

    n: int
    bits: int = 0

    def __post_init__(self) -> None:
        _check_degree(self.n)
        if self.bits < 0 or self.bits >> pair_count(self.n):
            raise ValueError(f"bits out of range for degree {self.n}")

    @classmethod
    def _unchecked(cls, n: int, bits: int) -> PairSet:
        obj = object.__new__(cls)
        object.__setattr__(obj, "n", n)
        object.__setattr__(obj, "bits", bits)
        return obj

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> PairSet:
        bits = 0
        for i, j in pairs:
            if i > j:
                i, j = j, i
            bits |= 1 << pair_index(i, j, n)
        return cls(n, bits)

    @classmethod
    def full(cls, n: int) -> PairSet:
        return cls(n, (1 << pair_count(n)) - 1)

    def _same(self, other: PairSet) -> None:
        if not isinstance(other, PairSet):
            raise TypeError(f"expected PairSet, got {type(other).__name__}")
        if self.n != other.n:
            raise DegreeError(f"pair sets of degree {self.n} and {other.n} cannot be mixed")

    def __and__(self, other: PairSet) -> PairSet:
        self._same(other)
        return PairSet(self.n, self.bits & other.bits)

    def __or__(self, other: PairSet) -> PairSet:
        self._same(other)
        return PairSet(self.n, self.bits | other.bits)

    def __xor__(self, other: PairSet) -> PairSet:
        self._same(other)
        return PairSet(self.n, self.bits ^ other.bits)

    def __invert__(self) -> PairSet:
        return PairSet(self.n, ((1 << pair_count(self.n)) - 1) & ~self.bits)

    def __le__(self, other: PairSet) -> bool:
        self._same(other)
        return self.bits & ~other.bits == 0

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __iter__(self) -> Iterator[tuple[int, int]]:
        pairs = _pairs(self.n)
        m = self.bits
        while m:
            low = m & -m
            yield pairs[low.bit_length() - 1]
            m ^= low

    def __contains__(self, pair: tuple[int, int]) -> bool:
        i, j = pair
        if not 1 <= i < j <= self.n:
            return False
        return bool(self.bits >> pair_index(i, j, self.n) & 1)

    def __str__(self) -> str:
        return "{" + ",".join(f"({i},{j})" for i, j in self) + "}"


def intersect(a: PairSet, b: PairSet) -> PairSet:
    return a & b


def union(a: PairSet, b: PairSet) -> PairSet:
    return a | b


def symmetric_difference(a: PairSet, b: PairSet) -> PairSet:
    return a ^ b


def complement(a: PairSet) -> PairSet:
    return ~a


def is_disjoint(a: PairSet, b: PairSet) -> bool:
    a._same(b)
    return a.bits & b.bits == 0


def is_subset(a: PairSet, b: PairSet) -> bool:
    return a <= b


def cardinality(a: PairSet) -> int:
    return len(a)


@lru_cache(maxsize=1 << 17)
def _inversion_bits(images: tuple[int, ...]) -> int:
    n = len(images)
    bits = 0
    pos = 0
    for i in range(n - 1):
        vi = images[i]
        for j in range(i + 1, n):
            if images[j] < vi:
                bits |= 1 << pos
            pos += 1
    return bits


def inversion_set(p: Permutation) -> PairSet:
    """Pairs ``(i, j)``, ``i < j``, with ``p(j) < p(i)``."""
    return PairSet._unchecked(p.n, _inversion_bits(p.images))


def inversion_count(p: Permutation) -> int:
    return _inversion_bits(p.images).bit_count()


def is_even(p: Permutation) -> bool:
    return inversion_count(p) % 2 == 0


def act_on_pairs(p: Permutation, s: PairSet) -> PairSet:
    """Apply ``p`` to both entries of every pair in ``s``, reordering each."""
    if p.n != s.n:
        raise DegreeError(f"permutation of degree {p.n} cannot act on pairs of degree {s.n}")
    n = p.n
    img = p.images
    bits = 0
    for i, j in s:
        a, b = img[i - 1], img[j - 1]
        if a > b:
            a, b = b, a
        bits |= 1 << ((a - 1) * (2 * n - a) // 2 + (b - a - 1))
    return PairSet._unchecked(n, bits)


# --- text forms ----------------------------------------------------------

_ONE_LINE = re.compile(r"^\s*\[?\s*(\d+(?:\s*[,\s]\s*\d+)*)\s*\]?\s*$")
_CYCLE = re.compile(r"\(([^()]*)\)")


def _from_images(values: Sequence[int], text: str) -> Permutation:
    n = len(values)
    try:
        _check_degree(n)
    except DegreeError as exc:
        raise PermutationParseError(f"{text!r}: {exc}") from None
    bad = [v for v in values if not 1 <= v <= n]
    if bad:
        raise PermutationParseError(f"{text!r}: entry {bad[0]} outside 1..{n}")
    if len(set(values)) != n:
        dup = next(v for v in values if values.count(v) > 1)
        raise PermutationParseError(f"{text!r}: entry {dup} repeated")
    return Permutation._unchecked(tuple(values))


def parse_one_line(text: str) -> Permutation:
    """Parse ``"4 2 1 3"`` (commas and surrounding brackets also accepted)."""
    m = _ONE_LINE.match(text)
    if not m:
        raise PermutationParseError(f"malformed one-line permutation {text!r}")
    values = [int(v) for v in re.split(r"[,\s]+", m.group(1).strip())]
    return _from_images(values, text)


def parse_cycles(text: str, n: int) -> Permutation:
    """Parse cycle notation such as ``"(1 2)(3 4)"`` into a degree-``n`` permutation.

    Points inside a cycle are separated by whitespace or commas. A product of
    cycles is applied right to left, consistent with :func:`compose`.
    ``""`` and ``"()"`` denote the identity.
    """
    _check_degree(n)
    stripped = text.strip()
    leftover = _CYCLE.sub("", stripped)
    if leftover.strip():
        raise PermutationParseError(f"malformed cycle notation {text!r}")
    result = list(range(1, n + 1))
    for body in reversed(_CYCLE.findall(stripped)):
        body = body.strip()
        if not body:
            continue
        if not re.fullmatch(r"\d+(?:[,\s]+\d+)*", body):
            raise PermutationParseError(f"malformed cycle ({body}) in {text!r}")
        pts = [int(v) for v in re.split(r"[,\s]+", body)]
        for v in pts:
            if not 1 <= v <= n:
                raise PermutationParseError(f"point {v} in {text!r} outside 1..{n}")
        if len(set(pts)) != len(pts):
            raise PermutationParseError(f"repeated point in cycle ({body}) of {text!r}")
        cyc = list(range(1, n + 1))
        for a, b in zip(pts, pts[1:] + pts[:1]):
            cyc[a - 1] = b
        result = [cyc[v - 1] for v in result]
    return Permutation._unchecked(tuple(result))


def format_one_line(p: Permutation) -> str:
    return " ".join(map(str, p.images))


def cycles(p: Permutation) -> list[tuple[int, ...]]:
    """Nontrivial cycles, each starting at its smallest point, sorted."""
    seen = set()
    out = []
    for start in range(1, p.n + 1):
        if start in seen or p.images[start - 1] == start:
            continue
        cyc = [start]
        seen.add(start)
        k = p.images[start - 1]
        while k != start:
            cyc.append(k)
            seen.add(k)
            k = p.images[k - 1]
        out.append(tuple(cyc))
    return out


def format_cycles(p: Permutation) -> str:
    cs = cycles(p)
    if not cs:
        return "()"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cs)
