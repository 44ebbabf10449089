"""Exact search for the six problems.

Every strategy turns an instance into an ascending stream of candidate
systems plus an acceptance test. The first accepted candidate is therefore
the canonically smallest solution, which makes witnesses reproducible and
lets a partitioned run agree with a sequential one.

Strategies
----------
baseline
    Walks the problem's own derivation space: the raw structure space for
    SCre-Spec, library assemblies for SCre-Comp, and code/component edit
    neighborhoods (composed with assemblies where needed) for the rest.
normalized
    Generate-and-test over systems built from the raw token space over
    ``I`` and ``A``, each block pre-filtered by a necessary condition and each
    candidate judged by :func:`compsynth.problems.check_solution`. For
    SCre-Spec the blocks are restricted to variable-distinct form, which is
    complete because normalization never grows a block.
library_product
    SCre-Comp and SRec-Comp only: depth-first assembly over library
    selectors and per-slot library procedures, pruning slots by the
    requirements routed to them, the type budget, and the change budget.
"""

from __future__ import annotations

import enum
import heapq
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import groupby, islice
from typing import Callable, Iterable, Iterator, Union

from .enumeration import (
    assemble,
    enum_code_neighborhood,
    enum_component_neighborhood,
    enum_selectors,
    enum_systems_comp,
    enum_systems_spec,
    procedures_with,
    selectors_with,
)
from .model import (
    ErrorCode,
    InvalidInputError,
    Procedure,
    Selector,
    System,
    block_distance,
    component_type_count,
    consistent_with,
)
from .problems import (
    ProblemInstance,
    all_requirements,
    check_solution,
    derivation,
    validate_instance,
)


class Strategy(str, enum.Enum):
    BASELINE = "baseline"
    NORMALIZED = "normalized"
    LIBRARY_PRODUCT = "library_product"


APPLICABLE = {
    "scre-spec": (Strategy.BASELINE, Strategy.NORMALIZED),
    "scre-comp": (Strategy.BASELINE, Strategy.NORMALIZED, Strategy.LIBRARY_PRODUCT),
    "scre-compa": (Strategy.BASELINE, Strategy.NORMALIZED),
    "srec-spec": (Strategy.BASELINE, Strategy.NORMALIZED),
    "srec-comp": (Strategy.BASELINE, Strategy.NORMALIZED, Strategy.LIBRARY_PRODUCT),
    "srec-compa": (Strategy.BASELINE, Strategy.NORMALIZED),
}

DEFAULT_STRATEGY = {
    "scre-spec": Strategy.NORMALIZED,
    "scre-comp": Strategy.LIBRARY_PRODUCT,
    "scre-compa": Strategy.BASELINE,
    "srec-spec": Strategy.BASELINE,
    "srec-comp": Strategy.LIBRARY_PRODUCT,
    "srec-compa": Strategy.BASELINE,
}


@dataclass(frozen=True)
class Solution:
    system: System
    d_used: int
    c_c_used: int | None
    c_l_used: int | None
    nodes: int

    found = True


@dataclass(frozen=True)
class Bottom:
    nodes: int

    found = False


SolveOutcome = Union[Solution, Bottom]


def resolve_strategy(kind: str, strategy: Strategy | str | None) -> Strategy:
    if strategy is None:
        return DEFAULT_STRATEGY[kind]
    try:
        s = Strategy(strategy)
    except ValueError:
        raise InvalidInputError(f"unknown strategy {strategy!r}", ErrorCode.USAGE) from None
    if s not in APPLICABLE[kind]:
        raise InvalidInputError(f"strategy {s.value} does not apply to {kind}", ErrorCode.USAGE)
    return s


# -- candidate streams -------------------------------------------------------


def _dedup(stream: Iterable[System]) -> Iterator[System]:
    for system, _ in groupby(stream):
        yield system


def _merged_neighborhoods(bases: Iterable[System], radius: int, alphabet) -> Iterator[System]:
    return _dedup(heapq.merge(*(enum_code_neighborhood(b, radius, alphabet) for b in bases)))


def _baseline(inst: ProblemInstance):
    kind = inst.kind
    reqs = all_requirements(inst)

    def sat(system: System) -> bool:
        return all(system.run(r.situation) == r.action for r in reqs)

    if kind == "scre-spec":
        return (lambda: enum_systems_spec(inst.structure)), sat
    if kind == "scre-comp":
        return (lambda: enum_systems_comp(inst.libraries)), (
            lambda s: component_type_count(s) <= inst.d and sat(s)
        )
    if kind == "scre-compa":

        def stream():
            bases = [b for b in enum_systems_comp(inst.libraries) if component_type_count(b) <= inst.d]
            return _merged_neighborhoods(bases, inst.c_c, inst.alphabet)

        return stream, sat
    if kind == "srec-spec":
        return (lambda: enum_code_neighborhood(inst.system, inst.c_c, inst.alphabet)), (
            lambda s: consistent_with(s, inst.structure) and sat(s)
        )
    if kind == "srec-comp":
        return (lambda: enum_component_neighborhood(inst.system, inst.libraries, inst.c_l)), (
            lambda s: component_type_count(s) <= inst.d and sat(s)
        )

    def stream():
        mids = [
            t
            for t in enum_component_neighborhood(inst.system, inst.libraries, inst.c_l)
            if component_type_count(t) <= inst.d
        ]
        return _merged_neighborhoods(mids, inst.c_c, inst.alphabet)

    return stream, sat


def _near(block, pool, radius: int) -> bool:
    for other in pool:
        dist = block_distance(block, other)
        if dist is not None and dist <= radius:
            return True
    return False


def _normalized(inst: ProblemInstance):
    kind = inst.kind
    a = inst.alphabet

    def accept(system: System) -> bool:
        return not check_solution(inst, system)

    if kind == "scre-spec":
        return (lambda: enum_systems_spec(inst.structure, distinct_vars=True)), accept

    if kind in ("scre-comp", "scre-compa"):
        libs = inst.libraries
        radius = 0 if kind == "scre-comp" else inst.c_c
        sel_counts = sorted({s.cond_count for s in libs.selectors})
        prc_counts = sorted({p.cond_count for p in libs.procedures})

        def stream():
            sels = [
                s for c in sel_counts for s in selectors_with(a, c) if _near(s, libs.selectors, radius)
            ]
            procs = [
                p for c in prc_counts for p in procedures_with(a, c) if _near(p, libs.procedures, radius)
            ]
            return assemble(sels, lambda sel, i: procs)

        return stream, accept

    base = inst.system
    if kind == "srec-spec":
        sel_pool = [base.selector]
        slot_pools = [[p] for p in base.procedures]
        radius = inst.c_c
    else:
        libs = inst.libraries
        sel_pool = sorted({base.selector, *(s for s in libs.selectors if s.cond_count == base.selector.cond_count)})
        slot_pools = [sorted({p, *libs.procedures}) for p in base.procedures]
        radius = 0 if kind == "srec-comp" else inst.c_c

    def stream():
        sels = [s for s in selectors_with(a, base.selector.cond_count) if _near(s, sel_pool, radius)]
        per_slot = []
        for pool in slot_pools:
            counts = sorted({p.cond_count for p in pool})
            per_slot.append([p for c in counts for p in procedures_with(a, c) if _near(p, pool, radius)])
        return assemble(sels, lambda sel, i: per_slot[i])

    return stream, accept


def _library_product(inst: ProblemInstance):
    kind = inst.kind
    reqs = all_requirements(inst)
    libs = inst.libraries
    d = inst.d
    if kind == "scre-comp":
        base = None
        sels = list(libs.selectors)
        budget = None
    else:
        base = inst.system
        sels = sorted({base.selector, *(s for s in libs.selectors if s.cond_count == base.selector.cond_count)})
        budget = inst.c_l

    def slot_candidates(sel: Selector) -> list[list[Procedure]]:
        routed: list[list] = [[] for _ in range(sel.slots)]
        for r in reqs:
            routed[sel.route(r.situation)].append(r)
        out = []
        for i, rs in enumerate(routed):
            pool = libs.procedures if base is None else sorted({base.procedures[i], *libs.procedures})
            out.append([p for p in pool if all(p.run(r.situation) == r.action for r in rs)])
        return out

    def stream() -> Iterator[System]:
        for sel in sels:
            spent0 = 0 if base is None or sel == base.selector else 1
            if budget is not None and spent0 > budget:
                continue
            cands = slot_candidates(sel)
            n = sel.slots
            picks: list[Procedure] = []

            def walk(i: int, spent: int, used: dict):
                if i == n:
                    yield System(sel, tuple(picks))
                    return
                for p in cands[i]:
                    cost = 0 if base is None or p == base.procedures[i] else 1
                    if budget is not None and spent + cost > budget:
                        continue
                    fresh = p not in used
                    if fresh and 1 + len(used) + 1 > d:
                        continue
                    used[p] = used.get(p, 0) + 1
                    picks.append(p)
                    yield from walk(i + 1, spent + cost, used)
                    picks.pop()
                    used[p] -= 1
                    if not used[p]:
                        del used[p]

            yield from walk(0, spent0, {})

    return stream, (lambda s: True)


_PLANNERS = {
    Strategy.BASELINE: _baseline,
    Strategy.NORMALIZED: _normalized,
    Strategy.LIBRARY_PRODUCT: _library_product,
}


def candidate_stream(inst: ProblemInstance, strategy: Strategy | str | None = None):
    """Return ``(factory, accept)`` for ``inst`` under ``strategy``."""
    s = resolve_strategy(inst.kind, strategy)
    return _PLANNERS[s](inst)


# -- driver ------------------------------------------------------------------


def _scan(stream: Iterable[System], accept: Callable, exhaustive: bool) -> tuple[int, int | None, System | None]:
    """Return ``(count drawn, index of first hit, first hit)``."""
    hit_at, hit = None, None
    count = 0
    for idx, system in enumerate(stream):
        count = idx + 1
        if hit is None and accept(system):
            hit_at, hit = idx, system
            if not exhaustive:
                break
    return count, hit_at, hit


def search(
    inst: ProblemInstance,
    strategy: Strategy | str | None = None,
    *,
    workers: int = 1,
    exhaustive: bool = False,
    validate: bool = True,
):
    """Find the canonically smallest solution of ``inst``, or return :class:`Bottom`.

    ``nodes`` is the number of candidates drawn from the strategy's stream
    before the answer was settled (all of them when ``exhaustive`` is set).
    With ``workers > 1`` the stream is split round-robin across threads and
    the per-partition results are reduced so that ``nodes`` and the witness
    match a sequential run exactly.
    """
    if validate:
        validate_instance(inst)
    factory, accept = candidate_stream(inst, strategy)
    if workers <= 1:
        nodes, _, hit = _scan(factory(), accept, exhaustive)
    else:
        k = workers

        def run(j: int):
            return _scan(islice(factory(), j, None, k), accept, exhaustive)

        with ThreadPoolExecutor(max_workers=k) as pool:
            parts = list(pool.map(run, range(k)))
        hits = [(at * k + j, sys_) for j, (_, at, sys_) in enumerate(parts) if sys_ is not None]
        total = sum(count for count, _, _ in parts)
        if hits:
            first_at, hit = min(hits, key=lambda t: t[0])
            nodes = total if exhaustive else first_at + 1
        else:
            hit, nodes = None, total
    if hit is None:
        return Bottom(nodes)
    failures = check_solution(inst, hit)
    if failures:
        raise AssertionError(f"search accepted a system failing {failures}: {hit}")
    how = derivation(inst, hit)
    return Solution(hit, how.d_used, how.c_c_used, how.c_l_used, nodes)


def _typed(inst: ProblemInstance, kind: str) -> None:
    if inst.kind != kind:
        raise InvalidInputError(f"expected a {kind} instance, got {inst.kind}", ErrorCode.USAGE)


def solve_scre_spec(inst, strategy=None, **kw):
    _typed(inst, "scre-spec")
    return search(inst, strategy, **kw)


def solve_scre_comp(inst, strategy=None, **kw):
    _typed(inst, "scre-comp")
    return search(inst, strategy, **kw)


def solve_scre_compa(inst, strategy=None, **kw):
    _typed(inst, "scre-compa")
    return search(inst, strategy, **kw)


def solve_srec_spec(inst, strategy=None, **kw):
    _typed(inst, "srec-spec")
    return search(inst, strategy, **kw)


def solve_srec_comp(inst, strategy=None, **kw):
    _typed(inst, "srec-comp")
    return search(inst, strategy, **kw)


def solve_srec_compa(inst, strategy=None, **kw):
    _typed(inst, "srec-compa")
    return search(inst, strategy, **kw)


solve = search


def decide(inst: ProblemInstance, strategy: Strategy | str | None = None, **kw) -> bool:
    return isinstance(search(inst, strategy, **kw), Solution)
