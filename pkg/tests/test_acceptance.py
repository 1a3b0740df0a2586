"""Exit criteria. Each test times itself against its budget and reports one line."""

import itertools
import json
from pathlib import Path

import pytest

from nudgekit.experiments import SAMPLE_CLASSIFY_CAP, sample_subgroups, sweep_subgroups
from nudgekit.groups import (
    alternating_group,
    closure,
    dihedral_group,
    dominant_element,
    embed_fixing_point,
    is_abelian,
    is_abelian_exhaustive,
    parse_spec,
    product_embed,
    symmetric_group,
)
from nudgekit.nudge import (
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
from nudgekit.perm import (
    Permutation,
    act_on_pairs,
    compose,
    identity,
    inverse,
    inversion_set,
    parse_cycles,
    symmetric_difference,
)
from nudgekit.verify import verify_paper

from . import oracles

GOLDEN = Path(__file__).parent / "golden"


def test_01_inversion_identities(criterion):
    with criterion("1 inversion identities over S_4", 1.0):
        s4 = list(symmetric_group(4))
        for p in s4:
            assert act_on_pairs(p, inversion_set(p)) == inversion_set(inverse(p))
        checked = 0
        for s, p in itertools.product(s4, repeat=2):
            lhs = inversion_set(compose(s, p))
            assert lhs == symmetric_difference(inversion_set(p), act_on_pairs(inverse(p), inversion_set(s)))
            checked += 1
        assert checked == 576


def test_02_symmetric_groups(criterion):
    with criterion("2 S_1..S_6 non-nudgable", 5.0):
        for n in range(1, 7):
            assert not classify(symmetric_group(n)).nudgable


def test_02_extended_s7(criterion):
    with criterion("2x S_7 non-nudgable (extended)", 60.0):
        assert not classify(symmetric_group(7)).nudgable


def test_03_alternating_groups(criterion):
    with criterion("3 A_4, A_5 non-nudgable; A_6, A_7 nudgable", 60.0):
        assert not classify(alternating_group(4)).nudgable
        assert not classify(alternating_group(5)).nudgable
        for n in (6, 7):
            g = alternating_group(n)
            assert classify(g).nudgable
            p = an_witness(n)
            d, d_inv = d_set(g, p), d_set(g, inverse(p))
            assert len(d) == 3 and len(d_inv) == 2
            assert set(d) == {identity(n), parse_cycles(f"({n-2} {n} {n-1})", n),
                              parse_cycles(f"({n-3} {n-2} {n-1})", n)}
            assert set(d_inv) == {identity(n), parse_cycles("(1 2)(3 4)", n)}


def test_04_dihedral_groups(criterion):
    with criterion("4 D_3..D_8 non-nudgable", 1.0):
        for n in range(3, 9):
            g = dihedral_group(n)
            assert len(g) == 2 * n
            assert not classify(g).nudgable


def test_05_cyclic_subgroups_of_s6(criterion):
    with criterion("5 cyclic subgroups of S_6, inverse map", 10.0):
        distinct = {}
        for p in symmetric_group(6):
            g = closure([p])
            distinct.setdefault(g.element_set(), g)
        assert len(distinct) == 362
        for g in distinct.values():
            assert not classify(g).nudgable
            for p in g:
                d_inv = set(d_set(g, inverse(p)))
                for s in d_set(g, p):
                    assert inverse(s) in d_inv


@pytest.mark.parametrize("sizes", [(2, 3), (3, 3)])
def test_06_product_law(criterion, sizes):
    with criterion(f"6 product law S_{sizes[0]} x S_{sizes[1]}", 5.0):
        parts = [symmetric_group(k) for k in sizes]
        g = product_embed(parts)
        n1 = sizes[0]
        for p in g:
            left = Permutation(p.images[:n1])
            right = Permutation(tuple(v - n1 for v in p.images[n1:]))
            expect = {a.images + tuple(v + n1 for v in b.images)
                      for a in d_set(parts[0], left) for b in d_set(parts[1], right)}
            assert {s.images for s in d_set(g, p)} == expect
        assert not classify(g).nudgable


def test_07_embedded_symmetric(criterion):
    with criterion("7 fix-2 S_{n-1}, n=4..7, |D| 2 vs 1", 10.0):
        for n in range(4, 8):
            g = embed_fixing_point(symmetric_group(n - 1), 2)
            assert classify(g).nudgable
            p = sn1_witness(n)
            assert len(d_set(g, p)) == 2
            assert len(d_set(g, inverse(p))) == 1


def test_08_order_ten_group(criterion):
    with criterion("8 <(1 2)(3 4), (1 5)(2 3)> in S_5", 1.0):
        g = closure([parse_cycles("(1 2)(3 4)", 5), parse_cycles("(1 5)(2 3)", 5)])
        assert len(g) == 10
        assert not is_abelian(g) and not is_abelian_exhaustive(g)
        assert dominant_element(g) is None
        assert satisfies_eq_condition(g).holds
        assert not classify(g).nudgable


def test_09_smallest_nudgable(criterion):
    with criterion("9 sweep S_4: smallest nudgable order 6", 30.0):
        r = sweep_subgroups(4, fixpoint=True)
        assert all(rec.verdict == "non-nudgable" for rec in r.records if rec.order < 6)
        assert any(rec.verdict == "nudgable" and rec.order == 6 for rec in r.records)
        assert r.stabilized and r.counts_by_bound[-1] == r.subgroup_count == 30


def test_10_closer_reduction(criterion):
    with criterion("10 C1/C2 reduction", 10.0):
        for g in (symmetric_group(4), parse_spec("embed:S:3@4fix2")):
            for p1, p2 in itertools.product(g, repeat=2):
                assert len(closer_set(g, p1, p2)) == len(d_set(g, compose(inverse(p2), p1)))
        for n in (3, 4):
            for c, p1, p2 in itertools.product(symmetric_group(n), repeat=3):
                assert closer_than(c, p1, p2) == closer_by_inversions(c, p1, p2)


def test_11_bijections(criterion):
    with criterion("11 reversal and tau bijections", 5.0):
        for g in (symmetric_group(4), dihedral_group(5)):
            for p in g:
                d = d_set(g, p)
                images = [thm1_bijection(g, p, s) for s in d]
                assert len(set(images)) == len(d)
                assert set(images) <= set(d_set(g, inverse(p)))
        g = parse_spec("gen:(1 2)(3 4);(1 5)(2 3)@5")
        rep = satisfies_eq_condition(g)
        assert rep.holds and len(rep.certificates) == len(g)
        for p, tau in rep.certificates:
            d = d_set(g, p)
            images = {rem1_bijection(g, p, tau, s) for s in d}
            assert len(images) == len(d)
            assert images == set(d_set(g, inverse(p)))


def test_12_random_generation(criterion):
    with criterion("12 n=8, 500 samples: S_8/A_8 fraction >= 0.7", 120.0):
        first = sample_subgroups(8, 500, seed=42)
        second = sample_subgroups(8, 500, seed=42)
        assert first.full_or_alternating_fraction >= 0.7
        for s in first.samples:
            if s.order is not None and s.order <= SAMPLE_CLASSIFY_CAP:
                assert s.verdict in ("nudgable", "non-nudgable")
        assert first.nudgable + first.non_nudgable + first.skipped_large == 500
        text = json.dumps(first.to_dict(), indent=2) + "\n"
        assert text == json.dumps(second.to_dict(), indent=2) + "\n"
        assert first.to_csv() == second.to_csv()
        assert text == (GOLDEN / "sample_n8_c500_s42.json").read_text()


def test_verify_checklist_passes(criterion):
    with criterion("verify checklist (all items)", 240.0):
        results = verify_paper()
        assert len(results) == 12
        failed = [r.line() for r in results if not r.passed]
        assert not failed, failed


def test_oracle_cross_check_a6_witness():
    # D-sets at n = 6 rebuilt from the naive oracle over the raw element list
    g = alternating_group(6)
    raw = [list(p.images) for p in g]
    p = list(an_witness(6).images)
    assert len(oracles.d_set(raw, p)) == 3
    assert len(oracles.d_set(raw, oracles.inverse(p))) == 2
