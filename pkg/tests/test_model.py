from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from compsynth.model import (
    Alphabet,
    InvalidInputError,
    Libraries,
    Literal,
    Procedure,
    Requirement,
    Selector,
    StructureSpec,
    System,
    code_distance,
    component_distance,
    component_type_count,
    consistent_with,
    eval_procedure,
    eval_system,
    normalize_block,
    normalize_system,
    satisfies,
    size_bound,
    system_metrics,
)

from conftest import P1, P2, P3, P4, S1, S2, SEL1, bits
from oracles import all_systems

L = Literal


def test_procedure_first_branch_fires():
    assert eval_procedure(P1, bits("TTTTT")) == 1


def test_single_action_ignores_situation():
    for s in product((False, True), repeat=3):
        assert eval_procedure(Procedure.single(1), s) == 1


def test_p2_falls_through_on_all_false():
    assert eval_procedure(P2, bits("FFFFF")) == 0


def test_system_routes_through_selector():
    assert eval_system(S1, bits("TFFFT")) == 0


def test_default_system_runs_its_procedure():
    assert eval_system(S2, bits("TTTTT")) == 2


def test_constant_system():
    sys_ = System(Selector.DEFAULT, (Procedure.single(2),))
    assert {eval_system(sys_, s) for s in product((False, True), repeat=2)} == {2}


def test_eval_rejects_short_situation():
    with pytest.raises(InvalidInputError):
        eval_system(S1, (True, True))


def test_example_satisfaction(example_requirements):
    assert satisfies(S1, example_requirements) == (True, [])
    assert satisfies(S2, example_requirements) == (False, [0, 2, 3, 4])
    assert [S2.run(example_requirements[j].situation) for j in (0, 2, 3, 4)] == [2, 0, 0, 1]


def test_empty_requirements_always_hold():
    assert satisfies(S2, []) == (True, [])


def test_consistency(example_alphabet, example_structure):
    assert consistent_with(S1, example_structure)
    assert not consistent_with(S1, StructureSpec(example_alphabet, 1, 3))
    assert consistent_with(S2, StructureSpec(example_alphabet, 0, 2))


def test_consistency_checks_alphabet():
    small = StructureSpec(Alphabet(2, 3), 2, 3)
    assert not consistent_with(S1, small)


@pytest.mark.parametrize("sel,prc,expected", [(2, 3, 15), (0, 2, 4), (0, 0, 2)])
def test_size_bound(sel, prc, expected):
    assert size_bound(StructureSpec(Alphabet(5, 3), sel, prc)) == expected


def test_type_counts():
    assert component_type_count(S1) == 4
    assert component_type_count(S2) == 2
    same = System(Selector((L(0), L(1), L(2))), (P3,) * 4)
    assert component_type_count(same) == 2


def test_reference_metrics():
    m1, m2 = system_metrics(S1), system_metrics(S2)
    assert (m1.sel, m1.prc, m1.size, m1.d) == (2, 3, 15, 4)
    assert (m2.sel, m2.prc, m2.size, m2.d) == (0, 2, 4, 2)


def test_code_distance_examples():
    assert code_distance(S1, S1) == 0
    edited = System(Selector.DEFAULT, (Procedure(P2.branches, 0),))
    assert code_distance(S2, edited) == 1
    base = System(Selector.DEFAULT, (Procedure(((L(0), 1),), 0),))
    moved = System(Selector.DEFAULT, (Procedure(((L(1), 1),), 0),))
    assert code_distance(base, moved) == 1


def test_code_distance_undefined_across_shapes():
    assert code_distance(S1, S2) is None


def test_component_distance_examples(example_libraries):
    assert component_distance(S1, S1, example_libraries) == 0
    swapped = System(SEL1, (P1, P2, P4))
    assert component_distance(S1, swapped, example_libraries) == 1
    assert component_distance(S1, S2, example_libraries) is None


def test_component_distance_needs_library_members(example_libraries):
    outsider = System(SEL1, (P1, Procedure.single(0), P4))
    assert component_distance(S1, outsider, example_libraries) is None


def test_normalize_drops_repeated_test():
    block = Procedure(((L(0), 0), (L(0), 1)), 2)
    assert normalize_block(block) == Procedure(((L(0), 0),), 2)


def test_normalize_truncates_at_negation():
    block = Procedure(((L(0), 0), (L(0, False), 1)), 2)
    assert normalize_block(block) == Procedure(((L(0), 0),), 1)


def test_normalize_fixed_point():
    assert normalize_block(P1) == P1
    assert normalize_block(SEL1) == SEL1


def test_normalize_system_keeps_slots():
    sel = Selector((L(0), L(0, False)))
    sys_ = System(sel, (P3, P4, Procedure.single(0)))
    assert normalize_system(sys_) == System(Selector((L(0),)), (P3, P4))


def test_normalize_sound_exhaustive_small():
    situations = list(product((False, True), repeat=2))
    for sys_ in all_systems(2, 2, 1, 1):
        norm = normalize_system(sys_)
        assert [norm.run(s) for s in situations] == [sys_.run(s) for s in situations]


lits = st.builds(Literal, st.integers(0, 2), st.booleans())
procs = st.builds(
    lambda br, e: Procedure(tuple(br), e),
    st.lists(st.tuples(lits, st.integers(0, 1)), max_size=4),
    st.integers(0, 1),
)


@given(st.lists(lits, max_size=3), st.data())
@settings(max_examples=200, deadline=None)
def test_normalize_sound_random(conds, data):
    sel = Selector(tuple(conds))
    sys_ = System(sel, tuple(data.draw(procs) for _ in range(sel.slots)))
    norm = normalize_system(sys_)
    for s in product((False, True), repeat=3):
        assert norm.run(s) == sys_.run(s)
    for block in (norm.selector, *norm.procedures):
        used = [lit.var for lit in (block.conditions if isinstance(block, Selector) else block.literals)]
        assert len(used) == len(set(used))


def test_literal_and_block_rendering():
    assert str(L(2, False)) == "~i3"
    assert str(P1) == "i4:a2,~i3:a1,i5:a3;a1"
    assert str(P4) == "a2"
    assert str(S1) == "i1,i5 | i4:a2,~i3:a1,i5:a3;a1 | i4:a2;a2 | a2"
    assert str(S2) == "* | ~i2:a1,~i4:a2;a3"


def test_system_slot_count_enforced():
    with pytest.raises(InvalidInputError):
        System(SEL1, (P1,))


def test_canonical_order_by_size_first():
    assert Procedure.single(1) < P3 < P1
    assert Selector.DEFAULT < SEL1


def test_libraries_are_deduplicated_and_sorted():
    libs = Libraries((SEL1, Selector.DEFAULT, SEL1), (P1, P4, P1))
    assert libs.selectors == (Selector.DEFAULT, SEL1)
    assert libs.procedures == (P4, P1)


def test_requirement_situation_coerced():
    assert Requirement((1, 0), 0).situation == (True, False)
