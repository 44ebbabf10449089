from itertools import chain

import pytest

from compsynth.enumeration import (
    block_count_bound,
    count_procedures,
    count_selectors,
    count_stream,
    count_systems_spec,
    enum_code_neighborhood,
    enum_component_neighborhood,
    enum_procedures,
    enum_selectors,
    enum_systems_comp,
    enum_systems_spec,
    library_product_bound,
    log10_system_count_bound,
    partition,
    system_count_bound,
)
from compsynth.model import Alphabet, Libraries, Literal, Procedure, Selector, StructureSpec, System

from conftest import P1, P2, P3, P4, S1, SEL1
from oracles import (
    all_procedures,
    all_selectors,
    all_systems,
    component_swaps,
    library_assemblies,
    same_shape_systems,
    token_changes,
)

L = Literal


def ascending(items):
    return all(a < b for a, b in zip(items, items[1:]))


def test_procedures_tiny_alphabet():
    procs = list(enum_procedures(Alphabet(1, 1), 1))
    assert procs == [
        Procedure.single(0),
        Procedure(((L(0), 0),), 0),
        Procedure(((L(0, False), 0),), 0),
    ]


@pytest.mark.parametrize("vars_,acts", [(1, 1), (1, 2), (3, 3)])
def test_zero_condition_procedures_are_single_actions(vars_, acts):
    procs = list(enum_procedures(Alphabet(vars_, acts), 0))
    assert procs == [Procedure.single(a) for a in range(acts)]


def test_selector_counts():
    assert list(enum_selectors(Alphabet(3, 1), 0)) == [Selector.DEFAULT]
    assert list(enum_selectors(Alphabet(1, 1), 1)) == [Selector.DEFAULT, Selector((L(0),)), Selector((L(0, False),))]
    assert len(list(enum_selectors(Alphabet(2, 1), 1))) == 5


@pytest.mark.parametrize("x,expected", [((1, 1, 0, 0), 1), ((1, 1, 0, 1), 3), ((1, 2, 0, 0), 2)])
def test_spec_system_counts(x, expected):
    spec = StructureSpec(Alphabet(x[0], x[1]), x[2], x[3])
    assert len(list(enum_systems_spec(spec))) == expected


def test_comp_system_counts():
    procs = (P1, P2, P3, P4)
    assert len(list(enum_systems_comp(Libraries((SEL1,), procs)))) == 64
    assert len(list(enum_systems_comp(Libraries((SEL1, Selector.DEFAULT), procs)))) == 68
    assert len(list(enum_systems_comp(Libraries((Selector.DEFAULT,), procs)))) == 4


def test_comp_selector_cap():
    libs = Libraries((SEL1, Selector.DEFAULT), (P1, P2, P3, P4))
    assert len(list(enum_systems_comp(libs, sel_cap=0))) == 4
    assert library_product_bound(libs) == 68
    assert library_product_bound(libs, sel_cap=0) == 4


@pytest.mark.parametrize(
    "vars_,acts,sel,prc", [(1, 1, 0, 1), (1, 2, 1, 1), (2, 1, 1, 1), (2, 2, 0, 1), (2, 2, 1, 1), (2, 2, 1, 0)]
)
def test_spec_stream_matches_brute_force(vars_, acts, sel, prc):
    stream = list(enum_systems_spec(StructureSpec(Alphabet(vars_, acts), sel, prc)))
    expected = all_systems(vars_, acts, sel, prc)
    assert len(stream) == len(set(stream)) == len(expected)
    assert set(stream) == set(expected)
    assert ascending(stream)
    assert len(stream) == count_systems_spec(StructureSpec(Alphabet(vars_, acts), sel, prc))


@pytest.mark.parametrize("vars_,acts,conds", [(1, 1, 2), (2, 2, 1), (2, 1, 2)])
def test_block_streams_match_brute_force(vars_, acts, conds):
    a = Alphabet(vars_, acts)
    procs = list(enum_procedures(a, conds))
    assert set(procs) == set(all_procedures(vars_, acts, conds))
    assert len(procs) == len(set(procs)) == count_procedures(a, conds)
    assert ascending(procs)
    sels = list(enum_selectors(a, conds))
    assert set(sels) == set(all_selectors(vars_, conds))
    assert len(sels) == count_selectors(a, conds)
    assert ascending(sels)


def test_distinct_vars_filters_repeats():
    a = Alphabet(2, 1)
    procs = list(enum_procedures(a, 2, distinct_vars=True))
    assert all(len({lit.var for lit in p.literals}) == p.cond_count for p in procs)
    assert set(procs) == {p for p in all_procedures(2, 1, 2) if len({l.var for l in p.literals}) == p.cond_count}


def test_distinct_vars_caps_at_variable_count():
    a = Alphabet(2, 1)
    assert list(enum_procedures(a, 5, distinct_vars=True)) == list(enum_procedures(a, 2, distinct_vars=True))


def test_comp_stream_matches_assemblies(example_libraries):
    stream = list(enum_systems_comp(example_libraries))
    assert set(stream) == set(library_assemblies(example_libraries))
    assert ascending(stream)


def test_code_neighborhood_radius_zero():
    assert list(enum_code_neighborhood(S1, 0, Alphabet(5, 3))) == [S1]


def test_code_neighborhood_single_action():
    base = System(Selector.DEFAULT, (Procedure.single(0),))
    assert list(enum_code_neighborhood(base, 1, Alphabet(1, 2))) == [
        base,
        System(Selector.DEFAULT, (Procedure.single(1),)),
    ]


def test_code_neighborhood_literal_flip():
    base = System(Selector.DEFAULT, (Procedure(((L(0), 0),), 0),))
    flipped = System(Selector.DEFAULT, (Procedure(((L(0, False), 0),), 0),))
    assert list(enum_code_neighborhood(base, 1, Alphabet(1, 1))) == [base, flipped]


CODE_BASES = [
    System(Selector.DEFAULT, (Procedure(((L(0), 1),), 0),)),
    System(Selector((L(1, False),)), (Procedure.single(1), Procedure(((L(0), 0),), 1))),
    System(Selector((L(0),)), (Procedure(((L(1), 1), (L(0), 0)), 1), Procedure.single(0))),
]


@pytest.mark.parametrize("base", CODE_BASES)
@pytest.mark.parametrize("radius", [1, 2])
def test_code_neighborhood_matches_brute_force(base, radius):
    stream = list(enum_code_neighborhood(base, radius, Alphabet(2, 2)))
    expected = {s for s in same_shape_systems(base, 2, 2) if token_changes(base, s) <= radius}
    assert len(stream) == len(set(stream))
    assert set(stream) == expected
    assert ascending(stream)


@pytest.mark.parametrize("base", CODE_BASES)
def test_code_neighborhood_symmetry(base):
    a = Alphabet(2, 2)
    for other in enum_code_neighborhood(base, 2, a):
        assert base in set(enum_code_neighborhood(other, 2, a))


def test_component_neighborhood_examples(example_libraries):
    assert list(enum_component_neighborhood(S1, example_libraries, 0)) == [S1]
    assert len(list(enum_component_neighborhood(S1, example_libraries, 1))) == 10
    single = System(Selector.DEFAULT, (P4,))
    assert len(list(enum_component_neighborhood(single, example_libraries, 1))) == 4


@pytest.mark.parametrize("radius", [0, 1, 2, 3, 4])
def test_component_neighborhood_matches_brute_force(example_libraries, radius):
    stream = list(enum_component_neighborhood(S1, example_libraries, radius))
    assert len(stream) == len(set(stream))
    assert set(stream) == component_swaps(S1, example_libraries, radius)
    assert ascending(stream)


def test_component_neighborhood_swaps_same_arity_selector():
    other = Selector((L(1), L(2)))
    libs = Libraries((SEL1, other), (P1, P3, P4))
    hood = set(enum_component_neighborhood(S1, libs, 1))
    assert System(other, S1.procedures) in hood
    assert hood == component_swaps(S1, libs, 1)


@pytest.mark.parametrize("k", [1, 2, 3, 5])
def test_partition_is_disjoint_and_complete(k):
    factory = lambda: enum_systems_spec(StructureSpec(Alphabet(2, 2), 1, 1))
    parts = [list(p) for p in partition(factory, k)]
    merged = list(chain.from_iterable(parts))
    assert sorted(merged) == list(factory())
    assert len(merged) == len(set(merged))


def test_bounds_dominate_counts():
    for vars_ in (1, 2):
        a = Alphabet(vars_, 1)
        stats = count_stream(enum_procedures(a, vars_ + 1, distinct_vars=True), block_count_bound(vars_))
        assert stats.emitted_count <= stats.theoretical_bound
        spec = StructureSpec(a, vars_, vars_)
        assert count_systems_spec(spec) <= system_count_bound(vars_)


def test_bounds_with_actions():
    a = Alphabet(2, 2)
    assert count_procedures(a, 2) <= block_count_bound(2, 2)
    assert count_systems_spec(StructureSpec(a, 1, 1)) <= system_count_bound(2, 2)


def test_log_bound_matches_exact():
    import math

    assert log10_system_count_bound(2) == pytest.approx(math.log10(system_count_bound(2)))


def test_block_bound_action_free_value():
    # (|I|+1) (2|I|)^(|I|+1) (|I|+1)^(|I|+1) at |I| = 1
    assert block_count_bound(1) == 2 * 2**2 * 2**2
