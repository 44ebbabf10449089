"""Two-level selector/procedure systems: value types, execution, and metrics.

Indices are 0-based throughout the library. The text formats in
:mod:`compsynth.io` translate to the 1-based ``i3`` / ``a2`` notation.

A selector is a list of literal conditions; the empty list is the default
``IF *`` selector. A procedure is a list of ``(literal, action)`` branches
plus a final action; an empty branch list is a single executed action.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import total_ordering
from typing import Iterable, Sequence, Union

Situation = tuple  # tuple[bool, ...], one truth value per situation-variable


class ErrorCode(str, enum.Enum):
    SYNTAX = "syntax"
    RANGE = "range"
    PRECONDITION = "precondition"
    MISSING = "missing-field"
    UNKNOWN = "unknown-field"
    USAGE = "usage"


class InvalidInputError(ValueError):
    """Malformed input. Never used for a "no such system" answer."""

    def __init__(self, message: str, code: ErrorCode = ErrorCode.RANGE, line: int | None = None):
        super().__init__(message)
        self.code = ErrorCode(code)
        self.line = line

    def __str__(self) -> str:
        where = f"line {self.line}: " if self.line is not None else ""
        return f"[{self.code.value}] {where}{self.args[0]}"


@dataclass(frozen=True)
class Alphabet:
    num_vars: int
    num_actions: int

    def __post_init__(self):
        if self.num_vars < 1 or self.num_actions < 1:
            raise InvalidInputError(
                f"alphabet needs at least one variable and one action, got {self.num_vars}/{self.num_actions}"
            )

    def check_situation(self, situation: Sequence[bool]) -> None:
        if len(situation) != self.num_vars:
            raise InvalidInputError(
                f"situation has {len(situation)} values, alphabet has {self.num_vars} variables"
            )

    def check_action(self, action: int) -> None:
        if not 0 <= action < self.num_actions:
            raise InvalidInputError(f"action index {action} outside [0, {self.num_actions})")


@total_ordering
@dataclass(frozen=True)
class Literal:
    var: int
    positive: bool = True

    @property
    def key(self) -> tuple:
        return (self.var, not self.positive)

    def __lt__(self, other: "Literal") -> bool:
        return self.key < other.key

    def negated(self) -> "Literal":
        return Literal(self.var, not self.positive)

    def holds(self, situation: Sequence[bool]) -> bool:
        return situation[self.var] == self.positive

    def __str__(self) -> str:
        return ("" if self.positive else "~") + f"i{self.var + 1}"


@dataclass(frozen=True)
class Requirement:
    situation: Situation
    action: int

    def __post_init__(self):
        object.__setattr__(self, "situation", tuple(bool(v) for v in self.situation))


@total_ordering
@dataclass(frozen=True)
class Procedure:
    """IF-THEN-ELSE block executing actions; no branches means a single action."""

    branches: tuple = ()  # tuple[tuple[Literal, int], ...]
    else_action: int = 0

    def __post_init__(self):
        object.__setattr__(self, "branches", tuple((lit, int(a)) for lit, a in self.branches))

    @classmethod
    def single(cls, action: int) -> "Procedure":
        return cls((), action)

    @property
    def is_single(self) -> bool:
        return not self.branches

    @property
    def cond_count(self) -> int:
        return len(self.branches)

    @property
    def literals(self) -> tuple:
        return tuple(lit for lit, _ in self.branches)

    @property
    def actions(self) -> tuple:
        return tuple(a for _, a in self.branches) + (self.else_action,)

    @property
    def key(self) -> tuple:
        return (len(self.branches), tuple((lit.key, a) for lit, a in self.branches), self.else_action)

    def __lt__(self, other: "Procedure") -> bool:
        return self.key < other.key

    def validate(self, alphabet: Alphabet) -> None:
        for lit in self.literals:
            if not 0 <= lit.var < alphabet.num_vars:
                raise InvalidInputError(f"variable index {lit.var} outside [0, {alphabet.num_vars})")
        for a in self.actions:
            alphabet.check_action(a)

    def run(self, situation: Sequence[bool]) -> int:
        for lit, action in self.branches:
            if situation[lit.var] == lit.positive:
                return action
        return self.else_action

    def __str__(self) -> str:
        if self.is_single:
            return f"a{self.else_action + 1}"
        body = ",".join(f"{lit}:a{a + 1}" for lit, a in self.branches)
        return f"{body};a{self.else_action + 1}"


@total_ordering
@dataclass(frozen=True)
class Selector:
    """Top-level block; no conditions means the default ``IF *`` selector."""

    conditions: tuple = ()  # tuple[Literal, ...]

    def __post_init__(self):
        object.__setattr__(self, "conditions", tuple(self.conditions))

    DEFAULT = None  # set below

    @property
    def is_default(self) -> bool:
        return not self.conditions

    @property
    def cond_count(self) -> int:
        return len(self.conditions)

    @property
    def slots(self) -> int:
        return len(self.conditions) + 1

    @property
    def key(self) -> tuple:
        return (len(self.conditions), tuple(lit.key for lit in self.conditions))

    def __lt__(self, other: "Selector") -> bool:
        return self.key < other.key

    def validate(self, alphabet: Alphabet) -> None:
        for lit in self.conditions:
            if not 0 <= lit.var < alphabet.num_vars:
                raise InvalidInputError(f"variable index {lit.var} outside [0, {alphabet.num_vars})")

    def route(self, situation: Sequence[bool]) -> int:
        """Index of the slot whose procedure runs for ``situation``."""
        for slot, lit in enumerate(self.conditions):
            if situation[lit.var] == lit.positive:
                return slot
        return len(self.conditions)

    def __str__(self) -> str:
        return ",".join(str(lit) for lit in self.conditions) if self.conditions else "*"


Selector.DEFAULT = Selector(())

Block = Union[Selector, Procedure]


@total_ordering
@dataclass(frozen=True)
class System:
    selector: Selector
    procedures: tuple  # tuple[Procedure, ...], one per selector slot

    def __post_init__(self):
        object.__setattr__(self, "procedures", tuple(self.procedures))
        if len(self.procedures) != self.selector.slots:
            raise InvalidInputError(
                f"selector has {self.selector.slots} slots but {len(self.procedures)} procedures were given"
            )

    @property
    def key(self) -> tuple:
        return (self.selector.key, tuple(p.key for p in self.procedures))

    def __lt__(self, other: "System") -> bool:
        return self.key < other.key

    def validate(self, alphabet: Alphabet) -> None:
        self.selector.validate(alphabet)
        for p in self.procedures:
            p.validate(alphabet)

    def max_var(self) -> int:
        vs = [lit.var for lit in self.selector.conditions]
        vs += [lit.var for p in self.procedures for lit in p.literals]
        return max(vs, default=-1)

    def run(self, situation: Sequence[bool]) -> int:
        return self.procedures[self.selector.route(situation)].run(situation)

    def __str__(self) -> str:
        return " | ".join([str(self.selector)] + [str(p) for p in self.procedures])


@dataclass(frozen=True)
class StructureSpec:
    alphabet: Alphabet
    sel_max: int
    prc_max: int

    def __post_init__(self):
        if self.sel_max < 0 or self.prc_max < 0:
            raise InvalidInputError("structure bounds must be non-negative")


@dataclass(frozen=True)
class Libraries:
    """Selector and procedure pools, deduplicated and kept in canonical order."""

    selectors: tuple = ()
    procedures: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "selectors", tuple(sorted(set(self.selectors))))
        object.__setattr__(self, "procedures", tuple(sorted(set(self.procedures))))

    def validate(self, alphabet: Alphabet) -> None:
        for s in self.selectors:
            s.validate(alphabet)
        for p in self.procedures:
            p.validate(alphabet)

    def builds(self, system: System) -> bool:
        return system.selector in self.selectors and all(p in self.procedures for p in system.procedures)


@dataclass(frozen=True)
class Budgets:
    d: int | None = None
    c_c: int | None = None
    c_l: int | None = None

    def __post_init__(self):
        for name in ("d", "c_c", "c_l"):
            v = getattr(self, name)
            if v is not None and v < 0:
                raise InvalidInputError(f"budget {name} must be >= 0, got {v}")


# -- execution ---------------------------------------------------------------


def _check_vars(max_var: int, situation: Sequence[bool]) -> None:
    if max_var >= len(situation):
        raise InvalidInputError(
            f"situation has {len(situation)} values but the block reads variable index {max_var}"
        )


def eval_procedure(p: Procedure, s: Sequence[bool]) -> int:
    _check_vars(max((lit.var for lit in p.literals), default=-1), s)
    return p.run(s)


def eval_system(system: System, s: Sequence[bool]) -> int:
    _check_vars(system.max_var(), s)
    return system.run(s)


def satisfies(system: System, requirements: Sequence[Requirement]) -> tuple[bool, list[int]]:
    """Return ``(ok, violated)``; ``violated`` lists requirement indices in input order."""
    if requirements:
        width = len(requirements[0].situation)
        if any(len(r.situation) != width for r in requirements):
            raise InvalidInputError("requirements disagree on the number of situation-variables")
        _check_vars(system.max_var(), requirements[0].situation)
    violated = [j for j, r in enumerate(requirements) if system.run(r.situation) != r.action]
    return not violated, violated


def consistent_with(system: System, spec: StructureSpec) -> bool:
    if system.selector.cond_count > spec.sel_max:
        return False
    if any(p.cond_count > spec.prc_max for p in system.procedures):
        return False
    try:
        system.validate(spec.alphabet)
    except InvalidInputError:
        return False
    return True


def size_bound(spec: StructureSpec) -> int:
    return (spec.sel_max + 1) * (spec.prc_max + 2)


def component_type_count(system: System) -> int:
    return 1 + len(set(system.procedures))


@dataclass(frozen=True)
class SystemMetrics:
    sel: int
    prc: int
    size: int
    d: int


def system_metrics(system: System) -> SystemMetrics:
    """The tightest structure numbers (|sel|, |prc|, |S|, d) describing ``system``."""
    sel = system.selector.cond_count
    prc = max(p.cond_count for p in system.procedures)
    return SystemMetrics(sel, prc, (sel + 1) * (prc + 2), component_type_count(system))


# -- distances ---------------------------------------------------------------


def block_distance(a: Block, b: Block) -> int | None:
    """Token-wise code distance between two blocks of the same kind and skeleton."""
    if isinstance(a, Selector) and isinstance(b, Selector):
        if a.cond_count != b.cond_count:
            return None
        return sum(x != y for x, y in zip(a.conditions, b.conditions))
    if isinstance(a, Procedure) and isinstance(b, Procedure):
        if a.cond_count != b.cond_count:
            return None
        lits = sum(x != y for x, y in zip(a.literals, b.literals))
        return lits + sum(x != y for x, y in zip(a.actions, b.actions))
    return None


def code_distance(s1: System, s2: System) -> int | None:
    """Number of literal/action replacements turning ``s1`` into ``s2``; None across skeletons."""
    total = block_distance(s1.selector, s2.selector)
    if total is None:
        return None
    for p, q in zip(s1.procedures, s2.procedures):
        d = block_distance(p, q)
        if d is None:
            return None
        total += d
    return total


def component_distance(s1: System, s2: System, libraries: Libraries) -> int | None:
    """Selector swaps plus slot swaps turning ``s1`` into ``s2`` using ``libraries``.

    Undefined (None) when the slot counts differ or a replacement component
    is not in the library.
    """
    if s1.selector.slots != s2.selector.slots:
        return None
    changes = 0
    if s1.selector != s2.selector:
        if s2.selector not in libraries.selectors:
            return None
        changes += 1
    for p, q in zip(s1.procedures, s2.procedures):
        if p != q:
            if q not in libraries.procedures:
                return None
            changes += 1
    return changes


# -- normalization -----------------------------------------------------------


def _normalize_pairs(pairs: Iterable[tuple], final):
    seen: dict[int, bool] = {}
    out = []
    for lit, target in pairs:
        if lit.var in seen:
            if seen[lit.var] == lit.positive:
                continue  # unreachable: an earlier identical test already fired
            return out, target  # always true here: earlier negation failed
        seen[lit.var] = lit.positive
        out.append((lit, target))
    return out, final


def normalize_block(block: Block) -> Block:
    """Behavior-equivalent block in which each variable is tested at most once.

    For a bare selector the slot bookkeeping is lost; use
    :func:`normalize_system` to keep procedures attached to the right slots.
    """
    if isinstance(block, Procedure):
        out, final = _normalize_pairs(block.branches, block.else_action)
        return Procedure(tuple(out), final)
    out, _ = _normalize_pairs(((lit, None) for lit in block.conditions), None)
    return Selector(tuple(lit for lit, _ in out))


def normalize_system(system: System) -> System:
    sel = system.selector
    pairs = zip(sel.conditions, system.procedures[:-1])
    out, final = _normalize_pairs(pairs, system.procedures[-1])
    selector = Selector(tuple(lit for lit, _ in out))
    procs = [p for _, p in out] + [final]
    return System(selector, tuple(normalize_block(p) for p in procs))
