"""D-sets and nudgability.

For a group ``G`` and ``pi`` in ``G``, ``D_G(pi)`` is the set of ``sigma`` in
``G`` whose inversion set is disjoint from that of ``pi``. ``G`` is
non-nudgable when ``|D_G(pi)| == |D_G(pi^-1)|`` for every element, and
nudgable otherwise.

Two independent routes compute D-sets. :func:`d_set` walks the group with
Python integer bitsets; :func:`d_cardinalities` packs every inversion set
into a ``uint64`` matrix and counts disjoint rows with numpy. The
classification uses the second and the tests check it against the first.
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .groups import GroupSizeError, PermGroup
from .perm import (
    DegreeError,
    Permutation,
    act_on_pairs,
    compose,
    format_one_line,
    inverse,
    inversion_set,
    omega0,
    pair_count,
)

CLASSIFY_CAP = 50_000
EQ_CONDITION_CAP = 2_000

# rows per numpy block; keeps the temporary below ~64 MB at 5040 elements
_BLOCK_CELLS = 8_000_000


def _require_member(g: PermGroup, p: Permutation, name: str = "permutation") -> None:
    if p.n != g.n:
        raise DegreeError(f"{name} has degree {p.n}, group has degree {g.n}")
    if p not in g:
        raise ValueError(f"{name} {format_one_line(p)} is not an element of the group")


def d_set(g: PermGroup, p: Permutation) -> list[Permutation]:
    """Elements of ``g`` whose inversion sets miss every inversion of ``p``."""
    _require_member(g, p)
    target = inversion_set(p).bits
    return [s for s in g.elements if inversion_set(s).bits & target == 0]


def inversion_matrix(g: PermGroup) -> np.ndarray:
    """Inversion sets of all elements as an ``(order, words)`` uint64 array."""
    n = g.n
    words = max(1, -(-pair_count(n) // 64))
    imgs = np.array([p.images for p in g.elements], dtype=np.int16).reshape(len(g), n)
    masks = np.zeros((len(g), words), dtype=np.uint64)
    pos = 0
    for i in range(n - 1):
        for j in range(i + 1, n):
            hit = (imgs[:, i] > imgs[:, j]).astype(np.uint64)
            masks[:, pos // 64] |= hit << np.uint64(pos % 64)
            pos += 1
    return masks


def _bits_to_words(bits: int, words: int) -> np.ndarray:
    return np.array([(bits >> (64 * w)) & 0xFFFF_FFFF_FFFF_FFFF for w in range(words)], dtype=np.uint64)


def d_cardinalities(g: PermGroup, cap: int = CLASSIFY_CAP) -> np.ndarray:
    """``|D_G(p)|`` for every element, aligned with ``g.elements``."""
    if len(g) > cap:
        raise GroupSizeError(cap, "classification")
    masks = inversion_matrix(g)
    order, words = masks.shape
    block = max(1, _BLOCK_CELLS // max(1, order * words))
    counts = np.empty(order, dtype=np.int64)
    for start in range(0, order, block):
        chunk = masks[start:start + block]
        hits = np.any(chunk[:, None, :] & masks[None, :, :], axis=2)
        counts[start:start + block] = order - hits.sum(axis=1)
    return counts


def inverse_indices(g: PermGroup) -> list[int]:
    return [g.index(inverse(p)) for p in g.elements]


@dataclass
class NudgeReport:
    spec: str
    order: int
    nudgable: bool
    witness: Permutation | None = None
    d_size: int | None = None
    d_inverse_size: int | None = None
    d_witness: list[Permutation] = field(default_factory=list)
    d_witness_inverse: list[Permutation] = field(default_factory=list)
    # sorted (|D|, multiplicity) pairs over all elements
    profile: list[tuple[int, int]] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def verdict(self) -> str:
        return "nudgable" if self.nudgable else "non-nudgable"

    def to_dict(self, timing: bool = True) -> dict:
        out: dict = {"spec": self.spec, "order": self.order, "verdict": self.verdict}
        if self.nudgable:
            assert self.witness is not None
            out["witness"] = format_one_line(self.witness)
            out["witness_inverse"] = format_one_line(inverse(self.witness))
            out["d_size"] = self.d_size
            out["d_inverse_size"] = self.d_inverse_size
            out["d_set"] = [format_one_line(p) for p in self.d_witness]
            out["d_set_inverse"] = [format_one_line(p) for p in self.d_witness_inverse]
        else:
            out["profile"] = [[size, mult] for size, mult in self.profile]
        if timing:
            out["elapsed_s"] = round(self.elapsed, 6)
        return out


def classify(g: PermGroup, spec: str = "", cap: int = CLASSIFY_CAP) -> NudgeReport:
    """Decide nudgability by exhaustive scan.

    The witness is the lexicographically smallest ``pi`` (one-line order)
    with ``|D(pi)| != |D(pi^-1)|``.
    """
    t0 = time.perf_counter()
    counts = d_cardinalities(g, cap)
    inv_idx = inverse_indices(g)
    report = NudgeReport(spec=spec, order=len(g), nudgable=False)
    for k, p in enumerate(g.elements):
        if counts[k] != counts[inv_idx[k]]:
            report.nudgable = True
            report.witness = p
            report.d_size = int(counts[k])
            report.d_inverse_size = int(counts[inv_idx[k]])
            report.d_witness = d_set(g, p)
            report.d_witness_inverse = d_set(g, inverse(p))
            break
    else:
        report.profile = sorted(Counter(int(c) for c in counts).items())
    report.elapsed = time.perf_counter() - t0
    return report


def is_nudgable(g: PermGroup, cap: int = CLASSIFY_CAP) -> bool:
    return classify(g, cap=cap).nudgable


# --- witnesses -----------------------------------------------------------


def an_witness(n: int) -> Permutation:
    """Element of S_n with exactly three non-inversions,
    ``(n-3, n-1)``, ``(n-2, n-1)`` and ``(n-2, n)``.

    It lies in A_n iff ``n // 2`` is odd, and then ``|D(pi)| = 3`` while
    ``|D(pi^-1)| = 2``.
    """
    if n < 6:
        raise ValueError(f"an_witness needs n >= 6, got {n}")
    head = tuple(n + 1 - k for k in range(1, n - 3))
    return Permutation(head + (3, 1, 4, 2))


def sn1_witness(n: int) -> Permutation:
    """Element fixing 2 with ``|D(pi)| = 2 > 1 = |D(pi^-1)|`` in S_{n-1} embedded at 2."""
    if n < 4:
        raise ValueError(f"sn1_witness needs n >= 4, got {n}")
    middle = tuple(n + 2 - k for k in range(3, n - 1))
    return Permutation((n, 2) + middle + (1, 3))


# --- weakened dominance condition ----------------------------------------


@dataclass
class EqConditionReport:
    holds: bool
    # (pi, tau) in element order; covers every pi when the condition holds
    certificates: list[tuple[Permutation, Permutation]] = field(default_factory=list)
    failing: Permutation | None = None

    @property
    def verdict(self) -> str:
        return "holds" if self.holds else "fails"

    def to_dict(self) -> dict:
        out: dict = {"verdict": self.verdict}
        out["certificates"] = [[format_one_line(p), format_one_line(t)] for p, t in self.certificates]
        if self.failing is not None:
            out["failing"] = format_one_line(self.failing)
        return out


def moved_inversions(g: PermGroup, p: Permutation) -> int:
    """Union over ``sigma`` in ``D(p)`` of ``sigma . inv(p)``, as pair bits."""
    inv_p = inversion_set(p)
    acc = 0
    for s in d_set(g, p):
        acc |= act_on_pairs(s, inv_p).bits
    return acc


def certifies(g: PermGroup, p: Permutation, tau: Permutation) -> bool:
    """True if ``sigma . inv(p)`` lies inside ``inv(tau)`` for every ``sigma`` in ``D(p)``."""
    return moved_inversions(g, p) & ~inversion_set(tau).bits == 0


def satisfies_eq_condition(g: PermGroup, cap: int = EQ_CONDITION_CAP) -> EqConditionReport:
    """For each ``pi`` find the first ``tau`` whose inversion set absorbs every
    ``sigma . inv(pi)``, ``sigma`` in ``D(pi)``."""
    if len(g) > cap:
        raise GroupSizeError(cap, "eq-condition search")
    masks = inversion_matrix(g)
    words = masks.shape[1]
    report = EqConditionReport(holds=True)
    for p in g.elements:
        need = _bits_to_words(moved_inversions(g, p), words)
        ok = ~np.any(need & ~masks, axis=1)
        hits = np.flatnonzero(ok)
        if hits.size == 0:
            report.holds = False
            report.failing = p
            return report
        report.certificates.append((p, g.elements[int(hits[0])]))
    return report


# --- bijections D(pi) -> D(pi^-1) ----------------------------------------


def thm1_bijection(g: PermGroup, p: Permutation, s: Permutation) -> Permutation:
    """``sigma -> omega0 . sigma . pi^-1``; needs the order reversal in ``g``."""
    w = omega0(g.n)
    if w not in g:
        raise ValueError("group does not contain the order-reversing permutation")
    _require_member(g, p)
    _require_member(g, s, "sigma")
    if inversion_set(s).bits & inversion_set(p).bits:
        raise ValueError(f"sigma {format_one_line(s)} is not in D({format_one_line(p)})")
    return compose(w, compose(s, inverse(p)))


def rem1_bijection(g: PermGroup, p: Permutation, tau: Permutation, s: Permutation) -> Permutation:
    """``sigma -> tau . sigma . pi^-1`` for a ``tau`` certifying ``pi``."""
    _require_member(g, p)
    _require_member(g, tau, "tau")
    _require_member(g, s, "sigma")
    if inversion_set(s).bits & inversion_set(p).bits:
        raise ValueError(f"sigma {format_one_line(s)} is not in D({format_one_line(p)})")
    if not certifies(g, p, tau):
        raise ValueError(f"tau {format_one_line(tau)} does not certify {format_one_line(p)}")
    return compose(tau, compose(s, inverse(p)))


# --- preference-order framing ---------------------------------------------


def closer_than(candidate: Permutation, p1: Permutation, p2: Permutation) -> bool:
    """Whether ``candidate`` agrees with ``p1`` on every pair ``p1`` and ``p2`` order differently.

    Evaluated literally: for all ``k < l`` with
    ``p2^-1(p1(l)) < p2^-1(p1(k))`` require
    ``candidate^-1(p1(k)) < candidate^-1(p1(l))``.
    """
    if not candidate.n == p1.n == p2.n:
        raise DegreeError("closer_than needs permutations of equal degree")
    n = p1.n
    a = p1.images
    b_inv = inverse(p2).images
    c_inv = inverse(candidate).images
    for k in range(n):
        for l in range(k + 1, n):
            if b_inv[a[l] - 1] < b_inv[a[k] - 1] and not c_inv[a[k] - 1] < c_inv[a[l] - 1]:
                return False
    return True


def closer_by_inversions(candidate: Permutation, p1: Permutation, p2: Permutation) -> bool:
    """Same relation through ``inv(p2^-1 p1)`` and ``inv(candidate^-1 p1)`` being disjoint."""
    left = inversion_set(compose(inverse(p2), p1))
    right = inversion_set(compose(inverse(candidate), p1))
    return left.bits & right.bits == 0


def closer_set(g: PermGroup, p1: Permutation, p2: Permutation) -> list[Permutation]:
    """Elements of ``g`` closer to ``p1`` than to ``p2``."""
    _require_member(g, p1, "p1")
    _require_member(g, p2, "p2")
    return [c for c in g.elements if closer_than(c, p1, p2)]

