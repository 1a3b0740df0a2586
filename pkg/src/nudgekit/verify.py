"""Fixed checklist reproducing every claim of the nudgability study at desk scale.

Each check raises :class:`CheckFailed` on a mismatch and returns a short
detail string otherwise. :func:`verify_paper` runs them all, timing each
against its budget; a check passes only if it succeeds within budget.
"""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import dataclass
from typing import Callable, TextIO

from .experiments import sample_subgroups, sweep_subgroups
from .groups import (
    alternating_group,
    closure,
    dihedral_group,
    dominant_element,
    embed_fixing_point,
    is_abelian,
    parse_spec,
    product_embed,
    symmetric_group,
)
from .nudge import (
    an_witness,
    classify,
    closer_by_inversions,
    closer_set,
    closer_than,
    d_set,
    rem1_bijection,
    satisfies_eq_condition,
    sn1_witness,
    thm1_bijection,
)
from .perm import (
    Permutation,
    act_on_pairs,
    compose,
    format_one_line,
    identity,
    inverse,
    inversion_set,
    parse_cycles,
    symmetric_difference,
)


class CheckFailed(AssertionError):
    pass


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise CheckFailed(message)


@dataclass
class CheckResult:
    name: str
    passed: bool
    seconds: float
    budget: float
    detail: str

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"{tag}  {self.name:<34} {self.seconds:7.2f}s / {self.budget:g}s  {self.detail}"


EX3_SPEC = "gen:(1 2)(3 4);(1 5)(2 3)@5"


def check_identities() -> str:
    s4 = symmetric_group(4)
    for p in s4:
        _require(act_on_pairs(p, inversion_set(p)) == inversion_set(inverse(p)),
                 f"inv(p^-1) != p.inv(p) at {format_one_line(p)}")
    pairs = 0
    for s, p in itertools.product(s4, repeat=2):
        lhs = inversion_set(compose(s, p))
        rhs = symmetric_difference(inversion_set(p), act_on_pairs(inverse(p), inversion_set(s)))
        _require(lhs == rhs, f"product identity fails at {format_one_line(s)}, {format_one_line(p)}")
        pairs += 1
    return f"24 inverses, {pairs} products"


def check_symmetric(extended: bool = False) -> str:
    top = 7 if extended else 6
    for n in range(1, top + 1):
        r = classify(symmetric_group(n), f"S:{n}")
        _require(not r.nudgable, f"S_{n} classified nudgable")
    return f"S_1..S_{top} non-nudgable"


def check_alternating() -> str:
    for n in (4, 5):
        _require(not classify(alternating_group(n)).nudgable, f"A_{n} classified nudgable")
    for n in (6, 7):
        g = alternating_group(n)
        _require(classify(g).nudgable, f"A_{n} classified non-nudgable")
        p = an_witness(n)
        _require(p in g, f"A_{n} witness not even")
        d, d_inv = d_set(g, p), d_set(g, inverse(p))
        want = {identity(n), parse_cycles(f"({n-2} {n} {n-1})", n), parse_cycles(f"({n-3} {n-2} {n-1})", n)}
        want_inv = {identity(n), parse_cycles("(1 2)(3 4)", n)}
        _require(set(d) == want and len(d) == 3, f"D(pi) in A_{n} is {[format_one_line(x) for x in d]}")
        _require(set(d_inv) == want_inv and len(d_inv) == 2, f"D(pi^-1) in A_{n} wrong")
    return "A_4, A_5 non-nudgable; A_6, A_7 nudgable with |D| 3 vs 2"


def check_dihedral() -> str:
    for n in range(3, 9):
        g = dihedral_group(n)
        _require(len(g) == 2 * n, f"|D_{n}| = {len(g)}")
        _require(not classify(g).nudgable, f"D_{n} classified nudgable")
    return "D_3..D_8 non-nudgable"


def check_abelian() -> str:
    seen = {}
    for p in symmetric_group(6):
        g = closure([p])
        seen.setdefault(g.element_set(), g)
    for g in seen.values():
        _require(not classify(g).nudgable, f"cyclic group of order {len(g)} nudgable")
        for p in g:
            d_inv = {s.images for s in d_set(g, inverse(p))}
            for s in d_set(g, p):
                _require(inverse(s).images in d_inv,
                         f"inverse map fails at p={format_one_line(p)}, s={format_one_line(s)}")
    return f"{len(seen)} cyclic subgroups of S_6"


def check_product() -> str:
    for sizes in ((2, 3), (3, 3)):
        parts = [symmetric_group(k) for k in sizes]
        g = product_embed(parts)
        _require(not classify(g).nudgable, f"S_{sizes[0]} x S_{sizes[1]} nudgable")
        n1 = sizes[0]
        for p in g:
            a = parts[0].elements[parts[0].index(Permutation(p.images[:n1]))]
            b = parts[1].elements[parts[1].index(Permutation(tuple(v - n1 for v in p.images[n1:])))]
            expect = {s.images[:n1] + tuple(v + n1 for v in t.images)
                      for s in d_set(parts[0], a) for t in d_set(parts[1], b)}
            got = {s.images for s in d_set(g, p)}
            _require(got == expect, f"product law fails at {format_one_line(p)}")
    return "S_2 x S_3, S_3 x S_3"


def check_embedded() -> str:
    for n in range(4, 8):
        g = embed_fixing_point(symmetric_group(n - 1), 2)
        _require(classify(g).nudgable, f"fix-2 S_{n-1} in S_{n} non-nudgable")
        p = sn1_witness(n)
        sizes = (len(d_set(g, p)), len(d_set(g, inverse(p))))
        _require(sizes == (2, 1), f"n={n}: witness sizes {sizes}")
    return "n = 4..7, |D| 2 vs 1"


def check_example_iii() -> str:
    g = parse_spec(EX3_SPEC)
    _require(len(g) == 10, f"order {len(g)}")
    _require(not is_abelian(g), "abelian")
    _require(dominant_element(g) is None, "has a dominant element")
    _require(satisfies_eq_condition(g).holds, "weakened condition fails")
    _require(not classify(g).nudgable, "nudgable")
    return "order 10, non-abelian, no dominant element, condition holds"


def check_smallest() -> str:
    sweep = sweep_subgroups(4, fixpoint=True)
    small = [r for r in sweep.records if r.order < 6]
    _require(all(r.verdict == "non-nudgable" for r in small), "a subgroup of order < 6 is nudgable")
    _require(any(r.order == 6 and r.verdict == "nudgable" for r in sweep.records), "no nudgable order-6 subgroup")
    _require(sweep.stabilized, f"counts did not stabilize: {sweep.counts_by_bound}")
    return f"{sweep.subgroup_count} subgroups, counts by bound {sweep.counts_by_bound}"


def check_closer() -> str:
    for g in (symmetric_group(4), parse_spec("embed:S:3@4fix2")):
        for p1, p2 in itertools.product(g, repeat=2):
            c1 = closer_set(g, p1, p2)
            _require(len(c1) == len(d_set(g, compose(inverse(p2), p1))), "|C1| != |D(p2^-1 p1)|")
    for n in (3, 4):
        for c, p1, p2 in itertools.product(symmetric_group(n), repeat=3):
            _require(closer_than(c, p1, p2) == closer_by_inversions(c, p1, p2), "formulations disagree")
    return "S_4 and fix-2 group; S_3, S_4 triples"


def check_bijections() -> str:
    for g in (symmetric_group(4), dihedral_group(5)):
        for p in g:
            d_inv = {s.images for s in d_set(g, inverse(p))}
            images = {thm1_bijection(g, p, s).images for s in d_set(g, p)}
            _require(images <= d_inv and len(images) == len(d_set(g, p)), "omega0 map not injective into D(p^-1)")
    g = parse_spec(EX3_SPEC)
    report = satisfies_eq_condition(g)
    for p, tau in report.certificates:
        d = d_set(g, p)
        images = {rem1_bijection(g, p, tau, s).images for s in d}
        _require(images == {s.images for s in d_set(g, inverse(p))}, "tau map is not a bijection onto D(p^-1)")
    return "S_4, D_5, order-10 group"


def check_sampling() -> str:
    first = sample_subgroups(8, 500, seed=42)
    second = sample_subgroups(8, 500, seed=42)
    frac = first.full_or_alternating_fraction
    _require(frac >= 0.7, f"fraction generating S_8 or A_8 is {frac:.3f}")
    tallied = first.nudgable + first.non_nudgable + first.skipped_large
    _require(tallied == first.count, "verdict tallies do not sum to the sample count")
    same = json.dumps(first.to_dict()) == json.dumps(second.to_dict()) and first.to_csv() == second.to_csv()
    _require(same, "rerun with the same seed differs")
    return f"S_8 or A_8 fraction {frac:.3f}, nudgable {first.nudgable}, classified {first.count - first.skipped_large}"


CHECKS: list[tuple[str, float, Callable[[], str]]] = [
    ("1 inversion identities", 1.0, check_identities),
    ("2 symmetric groups", 5.0, check_symmetric),
    ("3 alternating groups", 60.0, check_alternating),
    ("4 dihedral groups", 1.0, check_dihedral),
    ("5 abelian (cyclic of S_6)", 10.0, check_abelian),
    ("6 block products", 5.0, check_product),
    ("7 fix-2 embedding", 10.0, check_embedded),
    ("8 order-10 group of S_5", 1.0, check_example_iii),
    ("9 smallest nudgable subgroup", 30.0, check_smallest),
    ("10 closer-than reduction", 10.0, check_closer),
    ("11 bijections", 5.0, check_bijections),
    ("12 random generation", 120.0, check_sampling),
]


def run_check(name: str, budget: float, fn: Callable[[], str]) -> CheckResult:
    t0 = time.perf_counter()
    try:
        detail = fn()
        ok = True
    except Exception as exc:  # collected, never fatal mid-run
        detail = f"{type(exc).__name__}: {exc}"
        ok = False
    seconds = time.perf_counter() - t0
    if ok and seconds > budget:
        ok = False
        detail += " (over budget)"
    return CheckResult(name, ok, seconds, budget, detail)


def verify_paper(sink: TextIO | None = None, extended: bool = False,
                 only: list[str] | None = None) -> list[CheckResult]:
    """Run the checklist, writing one line per item to ``sink`` as it completes."""
    results = []
    checks = list(CHECKS)
    if extended:
        checks.append(("2x S_7 extended", 60.0, lambda: check_symmetric(extended=True)))
    if only:
        known = {name.split()[0] for name, _, _ in checks}
        unknown = sorted(set(only) - known)
        if unknown:
            raise ValueError(f"unknown check id(s): {', '.join(unknown)}")
    for name, budget, fn in checks:
        if only and not any(name.split()[0] == key for key in only):
            continue
        result = run_check(name, budget, fn)
        results.append(result)
        if sink is not None:
            print(result.line(), file=sink, flush=True)
    return results
