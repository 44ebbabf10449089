"""The six creation/reconfiguration problems and direct solution checks.

The checks here never consult the enumeration streams: a candidate system is
judged by computing distances, library membership, and type counts on the
system itself. Solvers use them to certify witnesses; tests use them as the
acceptance predicate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import ClassVar, Sequence, Union

from .model import (
    Alphabet,
    ErrorCode,
    InvalidInputError,
    Libraries,
    Requirement,
    StructureSpec,
    System,
    block_distance,
    code_distance,
    component_distance,
    component_type_count,
    consistent_with,
    satisfies,
)

KINDS = ("scre-spec", "scre-comp", "scre-compa", "srec-spec", "srec-comp", "srec-compa")


def normalize_kind(kind: str) -> str:
    bare = kind.strip().lower().replace("_", "").replace("-", "")
    k = next((name for name in KINDS if name.replace("-", "") == bare), None)
    if k is None:
        raise InvalidInputError(f"unknown problem kind {kind!r}; expected one of {', '.join(KINDS)}", ErrorCode.USAGE)
    return k


@dataclass(frozen=True)
class SCreSpec:
    kind: ClassVar[str] = "scre-spec"
    alphabet: Alphabet
    requirements: tuple
    structure: StructureSpec


@dataclass(frozen=True)
class SCreComp:
    kind: ClassVar[str] = "scre-comp"
    alphabet: Alphabet
    requirements: tuple
    libraries: Libraries
    d: int


@dataclass(frozen=True)
class SCreCompA:
    kind: ClassVar[str] = "scre-compa"
    alphabet: Alphabet
    requirements: tuple
    libraries: Libraries
    d: int
    c_c: int


@dataclass(frozen=True)
class SRecSpec:
    kind: ClassVar[str] = "srec-spec"
    alphabet: Alphabet
    requirements: tuple
    system: System
    structure: StructureSpec
    new_requirements: tuple
    c_c: int


@dataclass(frozen=True)
class SRecComp:
    kind: ClassVar[str] = "srec-comp"
    alphabet: Alphabet
    requirements: tuple
    system: System
    libraries: Libraries
    new_requirements: tuple
    c_l: int
    d: int


@dataclass(frozen=True)
class SRecCompA:
    kind: ClassVar[str] = "srec-compa"
    alphabet: Alphabet
    requirements: tuple
    system: System
    libraries: Libraries
    new_requirements: tuple
    c_l: int
    c_c: int
    d: int


ProblemInstance = Union[SCreSpec, SCreComp, SCreCompA, SRecSpec, SRecComp, SRecCompA]
INSTANCE_TYPES = {cls.kind: cls for cls in (SCreSpec, SCreComp, SCreCompA, SRecSpec, SRecComp, SRecCompA)}

CREATION = ("scre-spec", "scre-comp", "scre-compa")
WITH_LIBRARIES = ("scre-comp", "scre-compa", "srec-comp", "srec-compa")


def all_requirements(inst: ProblemInstance) -> tuple:
    return tuple(inst.requirements) + tuple(getattr(inst, "new_requirements", ()))


def _check_requirements(alphabet: Alphabet, reqs: Sequence[Requirement], what: str) -> None:
    for j, r in enumerate(reqs):
        if len(r.situation) != alphabet.num_vars:
            raise InvalidInputError(
                f"{what} {j + 1}: situation has {len(r.situation)} values, expected {alphabet.num_vars}"
            )
        if not 0 <= r.action < alphabet.num_actions:
            raise InvalidInputError(f"{what} {j + 1}: action index {r.action} out of range")


def validate_instance(inst: ProblemInstance) -> None:
    """Raise :class:`InvalidInputError` unless every part of ``inst`` is well formed."""
    a = inst.alphabet
    _check_requirements(a, inst.requirements, "requirement")
    _check_requirements(a, getattr(inst, "new_requirements", ()), "new requirement")
    for name in ("d", "c_c", "c_l"):
        v = getattr(inst, name, None)
        if v is not None and v < 0:
            raise InvalidInputError(f"budget {name} must be >= 0, got {v}")
    spec = getattr(inst, "structure", None)
    if spec is not None and spec.alphabet != a:
        raise InvalidInputError("structure specification uses a different alphabet")
    libs = getattr(inst, "libraries", None)
    if libs is not None:
        if not libs.selectors or not libs.procedures:
            raise InvalidInputError("both component libraries must be nonempty", ErrorCode.PRECONDITION)
        libs.validate(a)
    base = getattr(inst, "system", None)
    if base is not None:
        base.validate(a)
        ok, violated = satisfies(base, inst.requirements)
        if not ok:
            shown = ", ".join(str(j + 1) for j in violated)
            raise InvalidInputError(f"base system violates requirement(s) {shown}", ErrorCode.PRECONDITION)
        if spec is not None and not consistent_with(base, spec):
            raise InvalidInputError("base system is not consistent with the structure", ErrorCode.PRECONDITION)
        if libs is not None and not libs.builds(base):
            raise InvalidInputError("base system is not assembled from the libraries", ErrorCode.PRECONDITION)


# -- direct solution checks --------------------------------------------------


@dataclass(frozen=True)
class Derivation:
    """How a solution is reached: types used and changes spent."""

    d_used: int
    c_c_used: int | None = None
    c_l_used: int | None = None


def _min_base_distance(target: System, libraries: Libraries, d: int, c_c: int) -> tuple[int, int] | None:
    """Smallest code distance from a library assembly with <= d types to ``target``.

    Returns ``(distance, types in that assembly)``.
    """
    sel_opts = []
    for s in libraries.selectors:
        dist = block_distance(s, target.selector)
        if dist is not None and dist <= c_c:
            sel_opts.append(dist)
    if not sel_opts:
        return None
    slot_opts = []
    for q in target.procedures:
        opts = []
        for p in libraries.procedures:
            dist = block_distance(p, q)
            if dist is not None and dist <= c_c:
                opts.append((dist, p))
        if not opts:
            return None
        opts.sort(key=lambda t: t[0])
        slot_opts.append(opts)

    best: list[int | None] = [None]
    n = len(slot_opts)

    def walk(i: int, spent: int, used: frozenset):
        if best[0] is not None and spent >= best[0][0]:
            return
        if i == n:
            best[0] = (spent, 1 + len(used))
            return
        for dist, p in slot_opts[i]:
            if spent + dist > c_c:
                break
            nxt = used | {p}
            if 1 + len(nxt) > d:
                continue
            walk(i + 1, spent + dist, nxt)

    walk(0, min(sel_opts), frozenset())
    return best[0]


def _min_swap_then_edit(
    base: System, target: System, libraries: Libraries, d: int, c_l: int, c_c: int
) -> tuple[int, int, int] | None:
    """Cheapest (component changes, code changes) from ``base`` to ``target``.

    The intermediate system (after swaps, before edits) must have <= d types.
    Returns ``(swaps, edits, types after swaps)`` minimizing total changes,
    then component changes.
    """
    if base.selector.slots != target.selector.slots:
        return None
    sel_opts = []
    for s in {base.selector, *libraries.selectors}:
        if s.cond_count != base.selector.cond_count:
            continue
        dist = block_distance(s, target.selector)
        if dist is not None and dist <= c_c:
            sel_opts.append((int(s != base.selector), dist))
    if not sel_opts:
        return None
    slot_opts = []
    for orig, q in zip(base.procedures, target.procedures):
        opts = []
        for p in {orig, *libraries.procedures}:
            dist = block_distance(p, q)
            if dist is not None and dist <= c_c:
                opts.append((int(p != orig), dist, p))
        if not opts:
            return None
        opts.sort(key=lambda t: (t[0] + t[1], t[0], t[2]))
        slot_opts.append(opts)

    best: list = [None]
    n = len(slot_opts)

    def walk(i: int, swaps: int, edits: int, used: frozenset):
        if best[0] is not None and (swaps + edits, swaps) >= (best[0][0] + best[0][1], best[0][0]):
            return
        if i == n:
            best[0] = (swaps, edits, 1 + len(used))
            return
        for sw, dist, p in slot_opts[i]:
            if swaps + sw > c_l or edits + dist > c_c:
                continue
            nxt = used | {p}
            if 1 + len(nxt) > d:
                continue
            walk(i + 1, swaps + sw, edits + dist, nxt)

    for sw, dist in sorted(sel_opts, key=lambda t: (t[0] + t[1], t[0])):
        if sw <= c_l:
            walk(0, sw, dist, frozenset())
    return best[0]


def check_solution(inst: ProblemInstance, system: System) -> list[str]:
    """Names of the instance predicates ``system`` fails; empty means accepted."""
    failures: list[str] = []
    try:
        system.validate(inst.alphabet)
    except InvalidInputError:
        return ["alphabet"]
    if not satisfies(system, all_requirements(inst))[0]:
        failures.append("requirements")
    kind = inst.kind
    if kind in ("scre-spec", "srec-spec") and not consistent_with(system, inst.structure):
        failures.append("structure")
    if kind == "scre-comp":
        if not inst.libraries.builds(system):
            failures.append("libraries")
        if component_type_count(system) > inst.d:
            failures.append("types")
    elif kind == "scre-compa":
        if _min_base_distance(system, inst.libraries, inst.d, inst.c_c) is None:
            failures.append("derivation")
    elif kind == "srec-spec":
        dist = code_distance(inst.system, system)
        if dist is None or dist > inst.c_c:
            failures.append("code-changes")
    elif kind == "srec-comp":
        dist = component_distance(inst.system, system, inst.libraries)
        if dist is None or dist > inst.c_l:
            failures.append("component-changes")
        if component_type_count(system) > inst.d:
            failures.append("types")
    elif kind == "srec-compa":
        if _min_swap_then_edit(inst.system, system, inst.libraries, inst.d, inst.c_l, inst.c_c) is None:
            failures.append("derivation")
    return failures


def derivation(inst: ProblemInstance, system: System) -> Derivation:
    """Resources a solution uses; assumes :func:`check_solution` accepted it.

    ``d_used`` counts types in the system the budget ``d`` constrains: the
    library assembly before edits for the adapted-component kinds, the
    solution itself otherwise.
    """
    kind = inst.kind
    types = component_type_count(system)
    if kind in ("scre-spec", "scre-comp"):
        return Derivation(types)
    if kind == "scre-compa":
        edits, base_types = _min_base_distance(system, inst.libraries, inst.d, inst.c_c)
        return Derivation(base_types, edits)
    if kind == "srec-spec":
        return Derivation(types, code_distance(inst.system, system))
    if kind == "srec-comp":
        return Derivation(types, None, component_distance(inst.system, system, inst.libraries))
    swaps, edits, mid_types = _min_swap_then_edit(inst.system, system, inst.libraries, inst.d, inst.c_l, inst.c_c)
    return Derivation(mid_types, edits, swaps)
