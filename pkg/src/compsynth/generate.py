"""Seeded random instances for benchmarks and property tests."""

from __future__ import annotations

import random
from dataclasses import dataclass, fields, replace

from .model import (
    Alphabet,
    Libraries,
    Literal,
    Procedure,
    Requirement,
    Selector,
    StructureSpec,
    System,
)
from .problems import INSTANCE_TYPES, ProblemInstance, normalize_kind


@dataclass(frozen=True)
class Params:
    I: int = 3
    A: int = 2
    R: int = 4
    sel: int = 1
    prc: int = 1
    L_sel: int = 2
    L_prc: int = 3
    d: int = 3
    c_c: int = 1
    c_l: int = 1
    R_new: int = 1
    noise: float = 0.25

    def with_(self, **kw) -> "Params":
        return replace(self, **kw)


PARAM_NAMES = tuple(f.name for f in fields(Params) if f.name != "noise")

# sweepable parameters per kind
APPLICABLE_PARAMS = {
    "scre-spec": ("I", "A", "R", "sel", "prc"),
    "scre-comp": ("I", "A", "R", "sel", "prc", "L_sel", "L_prc", "d"),
    "scre-compa": ("I", "A", "R", "sel", "prc", "L_sel", "L_prc", "d", "c_c"),
    "srec-spec": ("I", "A", "R", "sel", "prc", "c_c", "R_new"),
    "srec-comp": ("I", "A", "R", "sel", "prc", "L_sel", "L_prc", "d", "c_l", "R_new"),
    "srec-compa": ("I", "A", "R", "sel", "prc", "L_sel", "L_prc", "d", "c_l", "c_c", "R_new"),
}


def random_literal(rng: random.Random, a: Alphabet) -> Literal:
    return Literal(rng.randrange(a.num_vars), rng.random() < 0.5)


def random_selector(rng: random.Random, a: Alphabet, max_conds: int, exact: bool = False) -> Selector:
    c = max_conds if exact else rng.randint(0, max_conds)
    return Selector(tuple(random_literal(rng, a) for _ in range(c)))


def random_procedure(rng: random.Random, a: Alphabet, max_conds: int) -> Procedure:
    c = rng.randint(0, max_conds)
    branches = tuple((random_literal(rng, a), rng.randrange(a.num_actions)) for _ in range(c))
    return Procedure(branches, rng.randrange(a.num_actions))


def random_system(rng: random.Random, a: Alphabet, sel_max: int, prc_max: int) -> System:
    sel = random_selector(rng, a, sel_max)
    return System(sel, tuple(random_procedure(rng, a, prc_max) for _ in range(sel.slots)))


def random_situation(rng: random.Random, a: Alphabet) -> tuple:
    return tuple(rng.random() < 0.5 for _ in range(a.num_vars))


def _distinct(rng: random.Random, make, count: int, tries: int = 200) -> tuple:
    out: list = []
    for _ in range(tries):
        if len(out) >= count:
            break
        item = make()
        if item not in out:
            out.append(item)
    return tuple(out)


def random_libraries(rng: random.Random, a: Alphabet, p: Params) -> Libraries:
    sels = _distinct(rng, lambda: random_selector(rng, a, p.sel), max(p.L_sel, 1))
    procs = _distinct(rng, lambda: random_procedure(rng, a, p.prc), max(p.L_prc, 1))
    return Libraries(sels, procs)


def _assembly(rng: random.Random, libs: Libraries) -> System:
    sel = rng.choice(libs.selectors)
    return System(sel, tuple(rng.choice(libs.procedures) for _ in range(sel.slots)))


def _labelled(rng: random.Random, a: Alphabet, target: System, count: int, noise: float) -> tuple:
    out = []
    for _ in range(count):
        s = random_situation(rng, a)
        act = target.run(s)
        if rng.random() < noise:
            act = rng.randrange(a.num_actions)
        out.append(Requirement(s, act))
    return tuple(out)


def random_instance(kind: str, p: Params, rng: random.Random) -> ProblemInstance:
    """A valid instance of ``kind``; base systems always satisfy their requirements."""
    kind = normalize_kind(kind)
    a = Alphabet(p.I, p.A)
    if kind == "scre-spec":
        hidden = random_system(rng, a, p.sel, p.prc)
        return INSTANCE_TYPES[kind](a, _labelled(rng, a, hidden, p.R, p.noise), StructureSpec(a, p.sel, p.prc))
    if kind in ("scre-comp", "scre-compa"):
        libs = random_libraries(rng, a, p)
        reqs = _labelled(rng, a, _assembly(rng, libs), p.R, p.noise)
        if kind == "scre-comp":
            return INSTANCE_TYPES[kind](a, reqs, libs, p.d)
        return INSTANCE_TYPES[kind](a, reqs, libs, p.d, p.c_c)
    if kind == "srec-spec":
        base = random_system(rng, a, p.sel, p.prc)
        reqs = _labelled(rng, a, base, p.R, 0.0)
        new = _labelled(rng, a, random_system(rng, a, p.sel, p.prc), p.R_new, p.noise)
        return INSTANCE_TYPES[kind](a, reqs, base, StructureSpec(a, p.sel, p.prc), new, p.c_c)
    libs = random_libraries(rng, a, p)
    base = _assembly(rng, libs)
    reqs = _labelled(rng, a, base, p.R, 0.0)
    new = _labelled(rng, a, _assembly(rng, libs), p.R_new, p.noise)
    if kind == "srec-comp":
        return INSTANCE_TYPES[kind](a, reqs, base, libs, new, p.c_l, p.d)
    return INSTANCE_TYPES[kind](a, reqs, base, libs, new, p.c_l, p.c_c, p.d)


def small_params(rng: random.Random) -> Params:
    """Parameters inside the strategy-agreement envelope."""
    return Params(
        I=rng.randint(1, 3),
        A=rng.randint(1, 2),
        R=rng.randint(0, 4),
        sel=rng.randint(0, 1),
        prc=rng.randint(0, 2),
        L_sel=rng.randint(1, 2),
        L_prc=rng.randint(1, 3),
        d=rng.randint(0, 2),
        c_c=rng.randint(0, 2),
        c_l=rng.randint(0, 2),
        R_new=rng.randint(0, 2),
    )
