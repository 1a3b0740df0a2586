"""Fully enumerated permutation groups and the group-spec mini-language."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .perm import (
    Permutation,
    PermutationParseError,
    _check_degree,
    compose,
    identity,
    inverse,
    inversion_set,
    is_even,
    omega0,
    parse_cycles,
    parse_one_line,
)

DEFAULT_CAP = 100_000


class GroupSizeError(RuntimeError):
    """A group grew past the configured element cap."""

    def __init__(self, cap: int, what: str = "group"):
        super().__init__(f"{what} exceeds the size cap of {cap} elements")
        self.cap = cap


class SpecError(ValueError):
    """Malformed group spec; ``offset`` is the byte offset of the problem."""

    def __init__(self, message: str, text: str, offset: int):
        super().__init__(f"{message} at offset {offset} in {text!r}")
        self.text = text
        self.offset = offset


@dataclass(frozen=True, eq=False)
class PermGroup:
    """A finite subgroup of S_n with every element listed.

    ``elements`` is sorted lexicographically by one-line form and contains no
    duplicates. ``generators`` records the generators as provided.
    """

    n: int
    elements: tuple[Permutation, ...]
    generators: tuple[Permutation, ...] = ()
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_index", {p.images: k for k, p in enumerate(self.elements)})

    @classmethod
    def from_elements(cls, n: int, elements, generators=()) -> PermGroup:
        uniq = sorted(set(elements))
        return cls(n, tuple(uniq), tuple(generators))

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Permutation]:
        return iter(self.elements)

    def __contains__(self, p: object) -> bool:
        return isinstance(p, Permutation) and p.images in self._index

    def index(self, p: Permutation) -> int:
        try:
            return self._index[p.images]
        except KeyError:
            raise ValueError(f"{p} is not an element of this group") from None

    def element_set(self) -> frozenset[tuple[int, ...]]:
        return frozenset(self._index)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PermGroup):
            return NotImplemented
        return self.n == other.n and self.elements == other.elements

    def __hash__(self) -> int:
        return hash((self.n, self.elements))


def _closure_images(n: int, gens: Sequence[tuple[int, ...]], cap: int) -> set[tuple[int, ...]]:
    # BFS, left-multiplying the frontier by each generator (0-based images)
    gens0 = [tuple(v - 1 for v in g) for g in gens]
    start = tuple(range(n))
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for f in frontier:
            for g in gens0:
                h = tuple([g[x] for x in f])
                if h not in seen:
                    seen.add(h)
                    if len(seen) > cap:
                        raise GroupSizeError(cap, "closure")
                    nxt.append(h)
        frontier = nxt
    return seen


# base-n keys of one-line forms fit in int64 up to this degree
_VECTOR_MAX_DEGREE = 15


def _closure_rows(n: int, gens: Sequence[tuple[int, ...]], cap: int) -> np.ndarray:
    """Same BFS as :func:`_closure_images`, a level at a time in numpy.

    Returns 0-based rows sorted lexicographically.
    """
    weights = n ** np.arange(n - 1, -1, -1, dtype=np.int64)
    gens0 = [np.asarray(g, dtype=np.int64) - 1 for g in gens]
    start = np.arange(n, dtype=np.int64)[None, :]
    seen_keys = start @ weights
    levels = [start]
    frontier = start
    total = 1
    while len(frontier):
        cand = np.concatenate([g[frontier] for g in gens0])
        keys, first = np.unique(cand @ weights, return_index=True)
        fresh = ~np.isin(keys, seen_keys, assume_unique=True)
        frontier = cand[first[fresh]]
        total += len(frontier)
        if total > cap:
            raise GroupSizeError(cap, "closure")
        seen_keys = np.union1d(seen_keys, keys[fresh])
        levels.append(frontier)
    rows = np.concatenate(levels)
    # lexicographic order on rows == numeric order on base-n keys
    return rows[np.argsort(rows @ weights, kind="stable")]


# python BFS wins on small groups; numpy takes over past this many elements
_SMALL_GROUP = 1024


def _closure_sorted(n: int, images: Sequence[tuple[int, ...]], cap: int) -> list[tuple[int, ...]]:
    """Closure as sorted 1-based one-line tuples."""
    vector = n <= _VECTOR_MAX_DEGREE and cap > _SMALL_GROUP
    try:
        found = _closure_images(n, images, _SMALL_GROUP if vector else cap)
    except GroupSizeError:
        if not vector:
            raise
        rows = (_closure_rows(n, images, cap) + 1).tolist()
        return [tuple(r) for r in rows]
    return [tuple(v + 1 for v in img) for img in sorted(found)]


def closure_order(generators: Sequence[Permutation], cap: int = DEFAULT_CAP) -> int:
    """Order of the generated group."""
    gens = [g.images for g in generators]
    if not gens:
        return 1
    n = len(gens[0])
    if n > _VECTOR_MAX_DEGREE or cap <= _SMALL_GROUP:
        return len(_closure_images(n, gens, cap))
    try:
        return len(_closure_images(n, gens, _SMALL_GROUP))
    except GroupSizeError:
        return len(_closure_rows(n, gens, cap))


def closure(generators: Sequence[Permutation], cap: int = DEFAULT_CAP, n: int | None = None) -> PermGroup:
    """Smallest subgroup containing ``generators``.

    ``n`` is required only when ``generators`` is empty, which yields the
    trivial group.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    gens = list(generators)
    if not gens:
        if n is None:
            raise ValueError("degree required for an empty generator list")
        return PermGroup(n, (identity(n),), ())
    degrees = {g.n for g in gens}
    if len(degrees) != 1 or (n is not None and degrees != {n}):
        raise ValueError(f"generators have mixed degrees {sorted(degrees | ({n} if n else set()))}")
    n = gens[0].n
    found = _closure_sorted(n, [g.images for g in gens], cap)
    return PermGroup(n, tuple(Permutation._unchecked(t) for t in found), tuple(gens))


def trivial_group(n: int) -> PermGroup:
    return closure([], n=n)


def symmetric_group(n: int, cap: int = DEFAULT_CAP) -> PermGroup:
    _check_degree(n)
    if math.factorial(n) > cap:
        raise GroupSizeError(cap, f"S_{n}")
    elements = tuple(Permutation._unchecked(p) for p in itertools.permutations(range(1, n + 1)))
    gens: tuple[Permutation, ...] = ()
    if n >= 2:
        gens = (parse_cycles("(1 2)", n), Permutation(tuple(range(2, n + 1)) + (1,)))
    return PermGroup(n, elements, gens)


def alternating_group(n: int, cap: int = DEFAULT_CAP) -> PermGroup:
    """Even permutations, parity taken from the inversion count."""
    _check_degree(n)
    if math.factorial(n) // (2 if n >= 2 else 1) > cap:
        raise GroupSizeError(cap, f"A_{n}")
    elements = tuple(
        p for p in (Permutation._unchecked(t) for t in itertools.permutations(range(1, n + 1))) if is_even(p)
    )
    return PermGroup(n, elements, ())


def dihedral_group(n: int, cap: int = DEFAULT_CAP) -> PermGroup:
    """Generated by the order reversal and the long cycle ``(1 2 ... n)``."""
    _check_degree(n)
    if n < 3:
        raise ValueError(f"dihedral group needs n >= 3, got {n}")
    rotation = Permutation(tuple(range(2, n + 1)) + (1,))
    return closure([omega0(n), rotation], cap)


def cyclic_group(p: Permutation, cap: int = DEFAULT_CAP) -> PermGroup:
    return closure([p], cap)


def product_embed(parts: Sequence[PermGroup], cap: int = DEFAULT_CAP) -> PermGroup:
    """Direct product acting on consecutive blocks of points."""
    if not parts:
        raise ValueError("product needs at least one factor")
    order = math.prod(len(g) for g in parts)
    if order > cap:
        raise GroupSizeError(cap, "product")
    offsets = list(itertools.accumulate((g.n for g in parts), initial=0))
    n = offsets[-1]
    _check_degree(n)
    shifted = [[tuple(v + off for v in p.images) for p in g.elements] for g, off in zip(parts, offsets)]
    elements = tuple(Permutation._unchecked(sum(combo, ())) for combo in itertools.product(*shifted))
    # itertools.product over lexicographically sorted blocks is already lexicographic
    gens = [
        Permutation._unchecked(_block_embed(h, k, offsets))
        for k, g in enumerate(parts)
        for h in g.generators
    ]
    return PermGroup(n, elements, tuple(gens))


def _block_embed(h: Permutation, k: int, offsets: list[int]) -> tuple[int, ...]:
    out = list(range(1, offsets[-1] + 1))
    off = offsets[k]
    for i, v in enumerate(h.images):
        out[off + i] = v + off
    return tuple(out)


def embed_point(p: Permutation, fixed: int) -> Permutation:
    """Relabel ``p`` along the order-preserving map {1..n-1} -> {1..n} minus ``fixed``."""
    n = p.n + 1
    if not 1 <= fixed <= n:
        raise ValueError(f"fixed point {fixed} outside 1..{n}")

    def up(x: int) -> int:
        return x if x < fixed else x + 1

    out = [0] * n
    out[fixed - 1] = fixed
    for k, v in enumerate(p.images, start=1):
        out[up(k) - 1] = up(v)
    return Permutation._unchecked(tuple(out))


def embed_fixing_point(g: PermGroup, fixed: int) -> PermGroup:
    n = g.n + 1
    _check_degree(n)
    if not 1 <= fixed <= n:
        raise ValueError(f"fixed point {fixed} outside 1..{n}")
    return PermGroup.from_elements(
        n, (embed_point(p, fixed) for p in g.elements), (embed_point(h, fixed) for h in g.generators)
    )


def is_abelian(g: PermGroup) -> bool:
    """Commutativity checked on generators when known, otherwise on all elements."""
    gens = g.generators or g.elements
    return _commute_all(gens)


def is_abelian_exhaustive(g: PermGroup) -> bool:
    return _commute_all(g.elements)


def _commute_all(items: Sequence[Permutation]) -> bool:
    for a, b in itertools.combinations(items, 2):
        if compose(a, b) != compose(b, a):
            return False
    return True


def is_closed(g: PermGroup) -> bool:
    """Exhaustive group check: identity, inverses, and products all inside."""
    if identity(g.n) not in g:
        return False
    if any(inverse(p) not in g for p in g.elements):
        return False
    return all(compose(a, b) in g for a in g.elements for b in g.elements)


def dominant_element(g: PermGroup) -> Permutation | None:
    """Element whose inversion set contains every other element's, if any."""
    sets = [inversion_set(p).bits for p in g.elements]
    union = 0
    for s in sets:
        union |= s
    for p, s in zip(g.elements, sets):
        if s == union:
            return p
    return None


# --- spec mini-language --------------------------------------------------
#
#   spec   := "S:" int | "A:" int | "D:" int | "C:" oneline
#           | "gen:" cycles (";" cycles)* "@" int
#           | "prod:" spec ("x" spec)+
#           | "embed:" spec "@" int "fix" int


class _SpecParser:
    def __init__(self, text: str, cap: int):
        self.text = text
        self.pos = 0
        self.cap = cap

    def error(self, message: str, offset: int | None = None) -> SpecError:
        return SpecError(message, self.text, self.pos if offset is None else offset)

    def peek(self, s: str) -> bool:
        return self.text.startswith(s, self.pos)

    def expect(self, s: str) -> None:
        if not self.peek(s):
            raise self.error(f"expected {s!r}")
        self.pos += len(s)

    def integer(self) -> int:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self.error("expected an integer")
        return int(self.text[start:self.pos])

    def degree(self) -> int:
        start = self.pos
        n = self.integer()
        try:
            _check_degree(n)
        except ValueError as exc:
            raise self.error(str(exc), start) from None
        return n

    def spec(self) -> PermGroup:
        start = self.pos
        try:
            if self.peek("S:"):
                self.pos += 2
                return symmetric_group(self.degree(), self.cap)
            if self.peek("A:"):
                self.pos += 2
                return alternating_group(self.degree(), self.cap)
            if self.peek("D:"):
                self.pos += 2
                return dihedral_group(self.degree(), self.cap)
            if self.peek("C:"):
                self.pos += 2
                return cyclic_group(self.one_line(), self.cap)
            if self.peek("gen:"):
                self.pos += 4
                return self.generated()
            if self.peek("prod:"):
                self.pos += 5
                parts = [self.spec()]
                while self.peek("x"):
                    self.pos += 1
                    parts.append(self.spec())
                if len(parts) < 2:
                    raise self.error("product needs at least two factors")
                return product_embed(parts, self.cap)
            if self.peek("embed:"):
                self.pos += 6
                inner = self.spec()
                self.expect("@")
                n_at = self.pos
                n = self.degree()
                if n != inner.n + 1:
                    raise self.error(f"embedding target degree must be {inner.n + 1}", n_at)
                self.expect("fix")
                k_at = self.pos
                k = self.integer()
                if not 1 <= k <= n:
                    raise self.error(f"fixed point {k} outside 1..{n}", k_at)
                return embed_fixing_point(inner, k)
        except SpecError:
            raise
        except GroupSizeError:
            raise
        except ValueError as exc:
            raise self.error(str(exc), start) from None
        raise self.error("unknown group family")

    def one_line(self) -> Permutation:
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isdigit() or self.text[self.pos] in " ,"):
            self.pos += 1
        chunk = self.text[start:self.pos].strip()
        try:
            return parse_one_line(chunk)
        except PermutationParseError as exc:
            raise self.error(str(exc), start) from None

    def generated(self) -> PermGroup:
        start = self.pos
        end = self.text.find("@", start)
        if end < 0:
            raise self.error("expected '@' followed by the degree")
        body = self.text[start:end]
        self.pos = end + 1
        n = self.degree()
        gens = []
        offset = start
        for chunk in body.split(";"):
            try:
                gens.append(parse_cycles(chunk, n))
            except PermutationParseError as exc:
                raise self.error(str(exc), offset) from None
            offset += len(chunk) + 1
        return closure(gens, self.cap)


def parse_spec(text: str, cap: int = DEFAULT_CAP) -> PermGroup:
    """Build the group named by a spec string such as ``"embed:S:3@4fix2"``."""
    parser = _SpecParser(text.strip(), cap)
    group = parser.spec()
    if parser.pos != len(parser.text):
        raise parser.error("unexpected trailing text")
    return group


def conjugate(g: PermGroup, c: Permutation) -> PermGroup:
    """The group ``c g c^-1``."""
    c_inv = inverse(c)
    return PermGroup.from_elements(
        g.n,
        (compose(c, compose(p, c_inv)) for p in g.elements),
        (compose(c, compose(h, c_inv)) for h in g.generators),
    )


def interval_blocks(g: PermGroup) -> list[tuple[int, int]]:
    """Finest split of 1..n into consecutive intervals that every element preserves."""
    # an interval ending at k is invariant iff every element maps 1..k onto 1..k
    cuts = [k for k in range(1, g.n + 1)
            if all(max(p.images[:k]) == k for p in g.elements)]
    blocks, lo = [], 1
    for k in cuts:
        blocks.append((lo, k))
        lo = k + 1
    return blocks


def restrict(g: PermGroup, block: tuple[int, int]) -> PermGroup:
    lo, hi = block
    return PermGroup.from_elements(
        hi - lo + 1, (Permutation._unchecked(tuple(v - lo + 1 for v in p.images[lo - 1:hi])) for p in g.elements)
    )


def is_interval_product(g: PermGroup) -> bool:
    """Whether ``g`` is the block product of its restrictions to :func:`interval_blocks`,
    with at least two blocks."""
    blocks = interval_blocks(g)
    if len(blocks) < 2:
        return False
    return math.prod(len(restrict(g, b)) for b in blocks) == len(g)
