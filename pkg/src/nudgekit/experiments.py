"""Batch studies: random two-generator subgroups and exhaustive subgroup sweeps.

Random permutations come from numpy's ``PCG64`` bit generator seeded with
the user seed (``numpy.random.default_rng(seed)``). Each sample draws two
permutations with ``Generator.permutation(n)``, first generator first.
"""

from __future__ import annotations

import csv
import io
import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .groups import (
    DEFAULT_CAP,
    GroupSizeError,
    PermGroup,
    closure,
    closure_order,
    conjugate,
    dominant_element,
    is_abelian,
    symmetric_group,
)
from .nudge import classify, satisfies_eq_condition
from .perm import Permutation, format_one_line, is_even, omega0

SAMPLE_CLASSIFY_CAP = 5_040
SWEEP_MAX_DEGREE = 5

SAMPLE_CSV_HEADER = ("index", "gen1", "gen2", "order", "kind", "verdict")
SWEEP_CSV_HEADER = ("order", "abelian", "contains_omega0", "dominant", "eq_condition", "verdict", "generators")


@dataclass
class Sample:
    index: int
    generators: tuple[Permutation, Permutation]
    order: int | None
    kind: str  # symmetric | alternating | other | over-cap
    verdict: str  # non-nudgable | nudgable | skipped-large


@dataclass
class SampleStats:
    n: int
    count: int
    seed: int
    symmetric: int = 0
    alternating: int = 0
    other: int = 0
    over_cap: int = 0
    non_nudgable: int = 0
    nudgable: int = 0
    skipped_large: int = 0
    specimens: list[tuple[Permutation, Permutation]] = field(default_factory=list)
    samples: list[Sample] = field(default_factory=list, repr=False)

    @property
    def full_or_alternating_fraction(self) -> float:
        return (self.symmetric + self.alternating) / self.count

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "count": self.count,
            "seed": self.seed,
            "generated": {
                "symmetric": self.symmetric,
                "alternating": self.alternating,
                "other": self.other,
                "over_cap": self.over_cap,
            },
            "verdicts": {
                "non_nudgable": self.non_nudgable,
                "nudgable": self.nudgable,
                "skipped_large": self.skipped_large,
            },
            "nudgable_specimens": [[format_one_line(a), format_one_line(b)] for a, b in self.specimens],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(SAMPLE_CSV_HEADER)
        for s in self.samples:
            a, b = s.generators
            writer.writerow([s.index, format_one_line(a), format_one_line(b),
                             "" if s.order is None else s.order, s.kind, s.verdict])
        return buf.getvalue()


def random_permutation(rng: np.random.Generator, n: int) -> Permutation:
    return Permutation._unchecked(tuple(int(v) + 1 for v in rng.permutation(n)))


def _sample_one(index: int, gens: tuple[Permutation, Permutation], n: int,
                cap: int, classify_cap: int) -> Sample:
    try:
        order = closure_order(gens, cap)
    except GroupSizeError:
        return Sample(index, gens, None, "over-cap", "skipped-large")
    full = math.factorial(n)
    if order == full:
        kind = "symmetric"
    elif 2 * order == full and all(is_even(g) for g in gens):
        kind = "alternating"
    else:
        kind = "other"
    if order > classify_cap:
        return Sample(index, gens, order, kind, "skipped-large")
    verdict = classify(closure(gens, cap)).verdict
    return Sample(index, gens, order, kind, verdict)


def sample_subgroups(n: int, count: int, seed: int, cap: int = DEFAULT_CAP,
                     classify_cap: int = SAMPLE_CLASSIFY_CAP) -> SampleStats:
    """Close ``count`` uniformly random generator pairs and tally what they generate."""
    if n < 2:
        raise ValueError(f"sampling needs n >= 2, got {n}")
    if count < 1:
        raise ValueError(f"sample count must be >= 1, got {count}")
    rng = np.random.default_rng(seed)
    stats = SampleStats(n=n, count=count, seed=seed)
    for index in range(count):
        gens = (random_permutation(rng, n), random_permutation(rng, n))
        s = _sample_one(index, gens, n, cap, classify_cap)
        stats.samples.append(s)
        if s.kind == "over-cap":
            stats.over_cap += 1
        else:
            setattr(stats, s.kind, getattr(stats, s.kind) + 1)
        if s.verdict == "nudgable":
            stats.nudgable += 1
            stats.specimens.append(gens)
        elif s.verdict == "non-nudgable":
            stats.non_nudgable += 1
        else:
            stats.skipped_large += 1
    return stats


# --- subgroup sweeps ------------------------------------------------------


@dataclass
class SweepRecord:
    generators: tuple[Permutation, ...]
    order: int
    abelian: bool
    contains_omega0: bool
    dominant: Permutation | None
    eq_condition: bool
    verdict: str

    def to_dict(self) -> dict:
        return {
            "generators": [format_one_line(g) for g in self.generators],
            "order": self.order,
            "abelian": self.abelian,
            "contains_omega0": self.contains_omega0,
            "dominant": None if self.dominant is None else format_one_line(self.dominant),
            "eq_condition": self.eq_condition,
            "verdict": self.verdict,
        }


@dataclass
class SweepResult:
    n: int
    bound: int
    # subgroup count reached with at most k generators, k = 1, 2, ...
    counts_by_bound: list[int]
    records: list[SweepRecord]
    groups: list[PermGroup] = field(default_factory=list, repr=False)

    @property
    def subgroup_count(self) -> int:
        return len(self.records)

    @property
    def stabilized(self) -> bool:
        return len(self.counts_by_bound) >= 2 and self.counts_by_bound[-1] == self.counts_by_bound[-2]

    @property
    def minimal_nudgable_order(self) -> int | None:
        orders = [r.order for r in self.records if r.verdict == "nudgable"]
        return min(orders) if orders else None

    def to_dict(self) -> dict:
        verdicts = Counter(r.verdict for r in self.records)
        return {
            "n": self.n,
            "bound": self.bound,
            "counts_by_bound": self.counts_by_bound,
            "subgroup_count": self.subgroup_count,
            "non_nudgable": verdicts.get("non-nudgable", 0),
            "nudgable": verdicts.get("nudgable", 0),
            "minimal_nudgable_order": self.minimal_nudgable_order,
            "subgroups": [r.to_dict() for r in self.records],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(SWEEP_CSV_HEADER)
        for r in self.records:
            writer.writerow([
                r.order, int(r.abelian), int(r.contains_omega0),
                "" if r.dominant is None else format_one_line(r.dominant),
                int(r.eq_condition), r.verdict,
                ";".join(format_one_line(g) for g in r.generators),
            ])
        return buf.getvalue()


def enumerate_subgroups(n: int, bound: int = 3, fixpoint: bool = False) -> tuple[list[PermGroup], list[int]]:
    """All subgroups of S_n generated by at most ``bound`` elements.

    Level ``k`` closes each group first found at level ``k - 1`` together with
    one more element of S_n. With ``fixpoint`` the bound grows until a level
    adds nothing.
    """
    if n > SWEEP_MAX_DEGREE:
        raise ValueError(f"sweeps are limited to n <= {SWEEP_MAX_DEGREE}, got {n}")
    if bound < 1:
        raise ValueError("generator bound must be >= 1")
    sn = symmetric_group(n)
    found: dict[frozenset, PermGroup] = {}
    frontier = []
    for p in sn.elements:
        g = closure([p])
        key = g.element_set()
        if key not in found:
            found[key] = g
            frontier.append(g)
    counts = [len(found)]
    level = 1
    while frontier and (level < bound or fixpoint):
        level += 1
        nxt = []
        for h in frontier:
            for p in sn.elements:
                if p in h:
                    continue
                g = closure(list(h.generators) + [p])
                key = g.element_set()
                if key not in found:
                    found[key] = g
                    nxt.append(g)
        counts.append(len(found))
        frontier = nxt
        if fixpoint and not nxt:
            break
    groups = sorted(found.values(), key=lambda g: (len(g), [p.images for p in g.elements]))
    return groups, counts


def sweep_subgroups(n: int, bound: int = 3, fixpoint: bool = False) -> SweepResult:
    groups, counts = enumerate_subgroups(n, bound, fixpoint)
    w = omega0(n)
    records = []
    for g in groups:
        records.append(SweepRecord(
            generators=g.generators or (g.elements[0],),
            order=len(g),
            abelian=is_abelian(g),
            contains_omega0=w in g,
            dominant=dominant_element(g),
            eq_condition=satisfies_eq_condition(g).holds,
            verdict=classify(g).verdict,
        ))
    return SweepResult(n=n, bound=len(counts), counts_by_bound=counts, records=records, groups=groups)


def conjugation_survey(g: PermGroup) -> Counter:
    """Verdict tally over the distinct conjugates ``c g c^-1``, ``c`` in S_n.

    Exploratory only: whether nudgability is conjugation-invariant is left open.
    """
    seen = set()
    tally: Counter = Counter()
    for c in symmetric_group(g.n).elements:
        h = conjugate(g, c)
        key = h.element_set()
        if key in seen:
            continue
        seen.add(key)
        tally[classify(h).verdict] += 1
    return tally
