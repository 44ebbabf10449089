import dataclasses
import random

import pytest

from compsynth.generate import Params, random_instance
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
)
from compsynth.problems import KINDS, SCreComp, SCreSpec, SRecComp, SRecCompA, SRecSpec, check_solution
from compsynth.reductions import edgeless, path, reduce
from compsynth.solvers import (
    APPLICABLE,
    Bottom,
    Solution,
    Strategy,
    decide,
    resolve_strategy,
    search,
    solve_scre_comp,
    solve_scre_compa,
    solve_scre_spec,
    solve_srec_comp,
    solve_srec_compa,
    solve_srec_spec,
)

from oracles import all_systems, component_swaps, library_assemblies, same_shape_systems

L = Literal
TINY = Params(I=2, A=2, R=3, sel=1, prc=1, L_sel=2, L_prc=3, d=2, c_c=1, c_l=1, R_new=1)


def universe(inst):
    """A superset of every system any strategy may return, built by brute force."""
    a = inst.alphabet
    if inst.kind in ("scre-spec", "srec-spec"):
        return all_systems(a.num_vars, a.num_actions, inst.structure.sel_max, inst.structure.prc_max)
    if inst.kind == "scre-comp":
        return library_assemblies(inst.libraries)
    if inst.kind == "srec-comp":
        return component_swaps(inst.system, inst.libraries, inst.c_l)
    if inst.kind == "scre-compa":
        bases = library_assemblies(inst.libraries)
    else:
        bases = component_swaps(inst.system, inst.libraries, inst.c_l)
    return {s for b in bases for s in same_shape_systems(b, a.num_vars, a.num_actions)}


def oracle(inst):
    ok = [s for s in universe(inst) if not check_solution(inst, s)]
    return min(ok) if ok else None


def tiny_instances(kind, count):
    for i in range(count):
        rng = random.Random(f"solver-oracle:{kind}:{i}")
        p = TINY.with_(
            I=rng.randint(1, 2), A=rng.randint(1, 2), d=rng.randint(1, 3),
            c_c=rng.randint(0, 2), c_l=rng.randint(0, 2), sel=rng.randint(0, 1),
        )
        yield random_instance(kind, p, rng)


@pytest.mark.parametrize("kind", KINDS)
def test_every_strategy_matches_oracle(kind):
    for inst in tiny_instances(kind, 12):
        expected = oracle(inst)
        for strategy in APPLICABLE[kind]:
            outcome = search(inst, strategy)
            got = outcome.system if outcome.found else None
            assert got == expected, (strategy, inst)


def test_single_procedure_creation_examples():
    yes = reduce("scre-spec", path(3), 1).instance
    out = solve_scre_spec(yes)
    assert isinstance(out, Solution)
    assert out.system == System(Selector.DEFAULT, (Procedure(((L(1), 1),), 0),))
    assert isinstance(solve_scre_spec(reduce("scre-spec", edgeless(2), 1).instance), Bottom)
    assert decide(yes) and not decide(reduce("scre-spec", edgeless(2), 1).instance)


def test_empty_requirements_give_first_system():
    inst = SCreSpec(Alphabet(2, 2), (), StructureSpec(Alphabet(2, 2), 1, 1))
    out = solve_scre_spec(inst)
    assert out.system == System(Selector.DEFAULT, (Procedure.single(0),))


def test_library_creation_examples():
    out = solve_scre_comp(reduce("scre-comp", path(3), 1).instance)
    assert out.found and out.d_used == 2
    assert set(out.system.procedures) == {Procedure(((L(4), 1),), 0)}
    assert isinstance(solve_scre_comp(reduce("scre-comp", edgeless(2), 1).instance), Bottom)


def test_comp_constant_system():
    a = Alphabet(2, 2)
    reqs = tuple(Requirement(s, 1) for s in ((0, 0), (0, 1), (1, 0), (1, 1)))
    libs = Libraries((Selector.DEFAULT,), (Procedure.single(1), Procedure.single(0)))
    out = solve_scre_comp(SCreComp(a, reqs, libs, 2))
    assert out.system == System(Selector.DEFAULT, (Procedure.single(1),))


def test_adapted_creation_examples():
    inst = reduce("scre-compa", path(3), 1).instance
    out = solve_scre_compa(inst)
    assert out.system == System(Selector.DEFAULT, (Procedure(((L(1), 1),), 0),))
    assert out.c_c_used == 1
    assert isinstance(solve_scre_compa(dataclasses.replace(inst, c_c=0)), Bottom)


def test_code_reconfiguration_example():
    inst = reduce("srec-spec", path(3), 1).instance
    out = solve_srec_spec(inst)
    assert out.found and out.c_c_used <= 2
    assert out.system.procedures[0].branches[-1][1] == 2


def test_frozen_libraries_match_code_reconfiguration():
    a = solve_srec_compa(reduce("srec-compa", path(3), 1).instance)
    b = solve_srec_spec(reduce("srec-spec", path(3), 1).instance)
    assert a.system == b.system and a.c_l_used == 0


def test_component_reconfiguration_example():
    out = solve_srec_comp(reduce("srec-comp", path(3), 1).instance)
    assert out.found and out.c_l_used <= 4 and out.d_used <= 2


def _reconfig_parts():
    a = Alphabet(1, 2)
    base = System(Selector.DEFAULT, (Procedure.single(0),))
    reqs = (Requirement((True,), 0),)
    new = (Requirement((False,), 1),)
    return a, base, reqs, new


def test_zero_budget_reconfiguration_is_bottom():
    a, base, reqs, new = _reconfig_parts()
    libs = Libraries((Selector.DEFAULT,), (Procedure.single(0), Procedure.single(1)))
    spec = StructureSpec(a, 0, 1)
    assert not search(SRecSpec(a, reqs, base, spec, new, 0)).found
    assert not search(SRecComp(a, reqs, base, libs, new, 0, 2)).found
    assert not search(SRecCompA(a, reqs, base, libs, new, 0, 0, 2)).found


def test_empty_new_requirements_keep_base():
    a, base, reqs, _ = _reconfig_parts()
    libs = Libraries((Selector.DEFAULT,), (Procedure.single(0),))
    out = search(SRecComp(a, reqs, base, libs, (), 0, 2))
    assert out.found and out.system == base


@pytest.mark.parametrize("kind", KINDS)
def test_budget_monotonicity(kind):
    for inst in tiny_instances(kind, 8):
        if not decide(inst):
            continue
        for name in ("d", "c_c", "c_l"):
            if hasattr(inst, name):
                assert decide(dataclasses.replace(inst, **{name: getattr(inst, name) + 1}))


@pytest.mark.parametrize("kind", KINDS)
def test_parallel_runs_agree(kind):
    for inst in tiny_instances(kind, 5):
        for strategy in APPLICABLE[kind]:
            ref = search(inst, strategy)
            for workers in (2, 3):
                assert search(inst, strategy, workers=workers) == ref
            assert search(inst, strategy, exhaustive=True, workers=2) == search(inst, strategy, exhaustive=True)


def test_exhaustive_counts_whole_space():
    inst = reduce("scre-spec", path(3), 1).instance
    first = search(inst, Strategy.BASELINE)
    full = search(inst, Strategy.BASELINE, exhaustive=True)
    assert full.system == first.system
    assert full.nodes == len(all_systems(3, 2, 0, 1)) > first.nodes


def test_strategy_applicability():
    assert resolve_strategy("scre-spec", None) is Strategy.NORMALIZED
    with pytest.raises(InvalidInputError):
        resolve_strategy("scre-spec", "library_product")
    with pytest.raises(InvalidInputError):
        resolve_strategy("scre-comp", "greedy")


def test_typed_solvers_reject_other_kinds():
    with pytest.raises(InvalidInputError):
        solve_scre_comp(reduce("scre-spec", path(2), 1).instance)


def test_solutions_pass_instance_checks():
    for kind in KINDS:
        for inst in tiny_instances(kind, 6):
            out = search(inst)
            if out.found:
                assert check_solution(inst, out.system) == []
