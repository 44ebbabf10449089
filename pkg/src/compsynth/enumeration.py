"""Canonical, lazy enumeration of blocks, systems, and edit neighborhoods.

Every stream is strictly ascending in the canonical order defined by the
``key`` properties in :mod:`compsynth.model`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import islice, product
from typing import Callable, Iterable, Iterator

from .model import (
    Alphabet,
    InvalidInputError,
    Libraries,
    Literal,
    Procedure,
    Selector,
    StructureSpec,
    System,
)


def literals(alphabet: Alphabet) -> list[Literal]:
    return [Literal(v, pos) for v in range(alphabet.num_vars) for pos in (True, False)]


def _distinct(lits: Iterable[Literal]) -> bool:
    vs = [lit.var for lit in lits]
    return len(vs) == len(set(vs))


def _cap(alphabet: Alphabet, max_conds: int, distinct_vars: bool) -> int:
    if max_conds < 0:
        raise InvalidInputError("max_conds must be >= 0")
    return min(max_conds, alphabet.num_vars) if distinct_vars else max_conds


def procedures_with(alphabet: Alphabet, conds: int, distinct_vars: bool = False) -> Iterator[Procedure]:
    """Procedures with exactly ``conds`` branches, ascending."""
    actions = range(alphabet.num_actions)
    if conds == 0:
        for a in actions:
            yield Procedure.single(a)
        return
    branch_choices = [(lit, a) for lit in literals(alphabet) for a in actions]
    for branches in product(branch_choices, repeat=conds):
        if distinct_vars and not _distinct(lit for lit, _ in branches):
            continue
        for e in actions:
            yield Procedure(branches, e)


def selectors_with(alphabet: Alphabet, conds: int, distinct_vars: bool = False) -> Iterator[Selector]:
    if conds == 0:
        yield Selector.DEFAULT
        return
    for conditions in product(literals(alphabet), repeat=conds):
        if distinct_vars and not _distinct(conditions):
            continue
        yield Selector(conditions)


def enum_procedures(alphabet: Alphabet, max_conds: int, distinct_vars: bool = False) -> Iterator[Procedure]:
    for c in range(_cap(alphabet, max_conds, distinct_vars) + 1):
        yield from procedures_with(alphabet, c, distinct_vars)


def enum_selectors(alphabet: Alphabet, max_conds: int, distinct_vars: bool = False) -> Iterator[Selector]:
    for c in range(_cap(alphabet, max_conds, distinct_vars) + 1):
        yield from selectors_with(alphabet, c, distinct_vars)


def assemble(selectors: Iterable[Selector], slot_choices: Callable[[Selector, int], list]) -> Iterator[System]:
    """All systems from ascending ``selectors`` whose slot ``i`` draws from ``slot_choices(sel, i)``.

    Each choice list must be ascending; the product is then emitted in
    canonical order.
    """
    for sel in selectors:
        lists = [slot_choices(sel, i) for i in range(sel.slots)]
        for procs in product(*lists):
            yield System(sel, procs)


def enum_systems_spec(spec: StructureSpec, distinct_vars: bool = False) -> Iterator[System]:
    procs = list(enum_procedures(spec.alphabet, spec.prc_max, distinct_vars))
    sels = enum_selectors(spec.alphabet, spec.sel_max, distinct_vars)
    return assemble(sels, lambda sel, i: procs)


def enum_systems_comp(libraries: Libraries, sel_cap: int | None = None) -> Iterator[System]:
    sels = [s for s in libraries.selectors if sel_cap is None or s.cond_count <= sel_cap]
    procs = list(libraries.procedures)
    return assemble(sels, lambda sel, i: procs)


# -- neighborhoods -----------------------------------------------------------


def _tokens(system: System) -> list:
    toks: list = list(system.selector.conditions)
    for p in system.procedures:
        for lit, a in p.branches:
            toks += [lit, a]
        toks.append(p.else_action)
    return toks


def _rebuild(skeleton: System, toks: list) -> System:
    it = iter(toks)
    sel = Selector(tuple(next(it) for _ in skeleton.selector.conditions))
    procs = []
    for p in skeleton.procedures:
        branches = tuple((next(it), next(it)) for _ in p.branches)
        procs.append(Procedure(branches, next(it)))
    return System(sel, tuple(procs))


def _budgeted_product(original: list, choices: list[list], budget: int) -> Iterator[list]:
    """Lexicographic walk over positions, each choice != original costing 1."""
    n = len(original)
    acc: list = []

    def walk(pos: int, left: int):
        if pos == n:
            yield list(acc)
            return
        if left == 0:
            yield acc + original[pos:]
            return
        orig = original[pos]
        for c in choices[pos]:
            cost = 0 if c == orig else 1
            if cost > left:
                continue
            acc.append(c)
            yield from walk(pos + 1, left - cost)
            acc.pop()

    return walk(0, budget)


def enum_code_neighborhood(system: System, c_c: int, alphabet: Alphabet) -> Iterator[System]:
    """Every same-skeleton system within ``c_c`` literal/action replacements, ascending."""
    if c_c < 0:
        raise InvalidInputError("c_c must be >= 0")
    system.validate(alphabet)
    original = _tokens(system)
    lits = literals(alphabet)
    acts = list(range(alphabet.num_actions))
    choices = [lits if isinstance(t, Literal) else acts for t in original]
    for toks in _budgeted_product(original, choices, c_c):
        yield _rebuild(system, toks)


def enum_component_neighborhood(system: System, libraries: Libraries, c_l: int) -> Iterator[System]:
    """Every system reachable by at most ``c_l`` selector/slot swaps from ``libraries``.

    Selector swaps keep the slot assignment positionally, so only library
    selectors with the same number of conditions qualify.
    """
    if c_l < 0:
        raise InvalidInputError("c_l must be >= 0")
    sel = system.selector
    sel_choices = sorted({sel, *(s for s in libraries.selectors if s.cond_count == sel.cond_count)})
    slot_choices = [sorted({p, *libraries.procedures}) for p in system.procedures]
    original = [sel, *system.procedures]
    for picks in _budgeted_product(original, [sel_choices, *slot_choices], c_l):
        yield System(picks[0], tuple(picks[1:]))


# -- parallel partitioning ---------------------------------------------------


def partition(factory: Callable[[], Iterable], k: int) -> list[Iterator]:
    """Split the stream made by ``factory`` into ``k`` disjoint round-robin sub-streams.

    Sub-stream ``j`` holds global positions ``j, j + k, j + 2k, ...``; each
    sub-stream regenerates the stream independently, so they can be consumed
    from different threads.
    """
    if k < 1:
        raise InvalidInputError("partition count must be >= 1")
    return [islice(factory(), j, None, k) for j in range(k)]


# -- counting and bounds -----------------------------------------------------


@dataclass(frozen=True)
class SearchSpaceStats:
    emitted_count: int
    theoretical_bound: int


def count_stream(stream: Iterable, bound: int) -> SearchSpaceStats:
    return SearchSpaceStats(sum(1 for _ in stream), bound)


def count_procedures(alphabet: Alphabet, max_conds: int) -> int:
    lit, act = 2 * alphabet.num_vars, alphabet.num_actions
    return sum((lit * act) ** c * act for c in range(max_conds + 1))


def count_selectors(alphabet: Alphabet, max_conds: int) -> int:
    return sum((2 * alphabet.num_vars) ** c for c in range(max_conds + 1))


def count_systems_spec(spec: StructureSpec) -> int:
    """Size of the raw (non-normalized) space of systems consistent with ``spec``."""
    procs = count_procedures(spec.alphabet, spec.prc_max)
    lit = 2 * spec.alphabet.num_vars
    return sum(lit**c * procs ** (c + 1) for c in range(spec.sel_max + 1))


def library_product_bound(libraries: Libraries, sel_cap: int | None = None) -> int:
    """Sum over library selectors of |L_prc| ** slots."""
    n = len(libraries.procedures)
    return sum(n**s.slots for s in libraries.selectors if sel_cap is None or s.cond_count <= sel_cap)


def block_count_bound(num_vars: int, num_actions: int = 1) -> int:
    """Loose bound T on blocks with at most |I| + 1 conditions.

    With ``num_actions == 1`` this is the action-free count; otherwise each
    block is charged ``num_actions ** (|I| + 2)`` for its executed actions.
    """
    i = num_vars
    return (i + 1) * (2 * i) ** (i + 1) * (i + 1) ** (i + 1) * num_actions ** (i + 2)


def system_count_bound(num_vars: int, num_actions: int = 1) -> int:
    """Loose bound T' = T^(|I|+3) (|I|+2)^(|I|+2) on all systems over |I| variables."""
    t = block_count_bound(num_vars, num_actions)
    return t ** (num_vars + 3) * (num_vars + 2) ** (num_vars + 2)


def log10_system_count_bound(num_vars: int, num_actions: int = 1) -> float:
    t = math.log10(block_count_bound(num_vars, num_actions))
    return t * (num_vars + 3) + (num_vars + 2) * math.log10(num_vars + 2)
