"""Nudgability of permutation groups by exhaustive computation."""

from .groups import (
    GroupSizeError,
    PermGroup,
    SpecError,
    alternating_group,
    closure,
    cyclic_group,
    dihedral_group,
    dominant_element,
    embed_fixing_point,
    is_abelian,
    parse_spec,
    product_embed,
    symmetric_group,
)
from .nudge import (
    EqConditionReport,
    NudgeReport,
    an_witness,
    classify,
    closer_set,
    closer_than,
    d_set,
    rem1_bijection,
    satisfies_eq_condition,
    sn1_witness,
    thm1_bijection,
)
from .perm import (
    PairSet,
    Permutation,
    act_on_pairs,
    compose,
    identity,
    inverse,
    inversion_set,
    omega0,
    parse_cycles,
    parse_one_line,
)

__version__ = "0.1.0"
