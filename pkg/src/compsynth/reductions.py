"""Dominating Set: brute-force oracle and reductions to the six problems.

Vertices are 1-based (``v1 .. vn``) as in graph files; variable and action
indices are 0-based as everywhere in the library. The reductions use actions
``0``, ``1``, ``2`` directly as action indices.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .model import (
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
from .problems import (
    ProblemInstance,
    SCreComp,
    SCreCompA,
    SCreSpec,
    SRecComp,
    SRecCompA,
    SRecSpec,
    check_solution,
    normalize_kind,
)
from .solvers import Strategy, decide


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset = frozenset()  # of (u, v) with u < v

    def __post_init__(self):
        if self.n < 1:
            raise InvalidInputError("a graph needs at least one vertex")
        norm = set()
        for u, v in self.edges:
            if u == v:
                raise InvalidInputError(f"self-loop on v{u}")
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise InvalidInputError(f"edge ({u}, {v}) has an endpoint outside [1, {self.n}]")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        return cls(n, frozenset(edges))

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(1, n)])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(1, n + 1), 2))


def edgeless(n: int) -> Graph:
    return Graph(n)


def closed_neighborhood(g: Graph, v: int) -> frozenset:
    if not 1 <= v <= g.n:
        raise InvalidInputError(f"vertex {v} outside [1, {g.n}]")
    out = {v}
    for a, b in g.edges:
        if a == v:
            out.add(b)
        elif b == v:
            out.add(a)
    return frozenset(out)


def is_dominating(g: Graph, vertices: Iterable[int]) -> bool:
    chosen = set(vertices)
    return all(closed_neighborhood(g, v) & chosen for v in g.vertices)


@dataclass(frozen=True)
class DSQuery:
    graph: Graph
    k: int

    def __post_init__(self):
        if self.k < 0:
            raise InvalidInputError("k must be >= 0")


def ds_oracle(q: DSQuery) -> tuple | None:
    """Smallest (then lexicographically first) dominating set of size <= k, or None."""
    g = q.graph
    nbhd = {v: closed_neighborhood(g, v) for v in g.vertices}
    for size in range(min(q.k, g.n) + 1):
        for cand in combinations(g.vertices, size):
            chosen = set(cand)
            if all(nbhd[v] & chosen for v in g.vertices):
                return cand
    return None


def domination_number(g: Graph) -> int:
    return len(ds_oracle(DSQuery(g, g.n)))


# -- constructions -----------------------------------------------------------


@dataclass(frozen=True)
class ReducedInstance:
    kind: str
    instance: ProblemInstance
    vertex_to_var: dict
    parameter_map: dict
    notes: tuple = ()


def _pos(var: int) -> Literal:
    return Literal(var, True)


def _bits(width: int, true_vars: Iterable[int]) -> tuple:
    on = set(true_vars)
    return tuple(j in on for j in range(width))


def _padded_vars(g: Graph, k: int) -> list[int]:
    # branch t tests i_t; i_1 again once t runs past |V|
    return [t if t < g.n else 0 for t in range(k)]


def _neighborhood_rows(g: Graph) -> tuple:
    """Requirements shared by the SCre-Spec/SCre-CompA constructions."""
    n = g.n
    rows = [Requirement(_bits(n, (u - 1 for u in closed_neighborhood(g, v))), 1) for v in g.vertices]
    rows.append(Requirement(_bits(n, ()), 0))
    return tuple(rows)


def _reduce_scre_spec(g: Graph, k: int) -> ReducedInstance:
    a = Alphabet(g.n, 2)
    inst = SCreSpec(a, _neighborhood_rows(g), StructureSpec(a, 0, k))
    params = dict(num_vars=g.n, num_actions=2, sel_max=0, prc_max=k, d=2, size=k + 2)
    return ReducedInstance("scre-spec", inst, {v: v - 1 for v in g.vertices}, params)


def _compa_base_procedure(g: Graph, k: int) -> Procedure:
    return Procedure(tuple((_pos(var), 1) for var in _padded_vars(g, k)), 0)


def _reduce_scre_compa(g: Graph, k: int) -> ReducedInstance:
    a = Alphabet(g.n, 2)
    libs = Libraries((Selector.DEFAULT,), (_compa_base_procedure(g, k),))
    inst = SCreCompA(a, _neighborhood_rows(g), libs, d=2, c_c=k)
    params = dict(num_vars=g.n, num_actions=2, sel_max=0, prc_max=k, d=2, c_c=k, L_sel=1, L_prc=1, size=k + 2)
    return ReducedInstance("scre-compa", inst, {v: v - 1 for v in g.vertices}, params)


def _vertex_procedure(g: Graph, j: int) -> Procedure:
    """Procedure j of the doubled-variable constructions: fires on i_{|V|+j}."""
    return Procedure(((_pos(g.n + j - 1), 1),), 0)


def _doubled_rows(g: Graph, width: int, extra: Sequence[int] = ()) -> list:
    n = g.n
    rows = []
    for v in g.vertices:
        on = [v - 1, *(n + u - 1 for u in closed_neighborhood(g, v)), *extra]
        rows.append(Requirement(_bits(width, on), 1))
    return rows


def _reduce_scre_comp(g: Graph, k: int) -> ReducedInstance:
    n = g.n
    a = Alphabet(2 * n, 2)
    rows = _doubled_rows(g, 2 * n)
    rows.append(Requirement(_bits(2 * n, ()), 0))
    sel = Selector(tuple(_pos(j) for j in range(n - 1)))
    notes = ()
    if n == 1:
        notes = ("single vertex: the selector has no conditions, so the default selector is used",)
    libs = Libraries((sel,), tuple(_vertex_procedure(g, j) for j in g.vertices))
    inst = SCreComp(a, tuple(rows), libs, d=k + 1)
    params = dict(num_vars=2 * n, num_actions=2, sel_max=n - 1, prc_max=1, d=k + 1, L_sel=1, L_prc=n)
    return ReducedInstance("scre-comp", inst, {v: n + v - 1 for v in g.vertices}, params, notes)


def _srec_spec_parts(g: Graph, k: int):
    n = g.n
    a = Alphabet(n + 1, 3)
    rows = [
        Requirement(_bits(n + 1, [*(u - 1 for u in closed_neighborhood(g, v)), n]), 1) for v in g.vertices
    ]
    rows.append(Requirement(_bits(n + 1, ()), 0))
    branches = [(_pos(var), 1) for var in _padded_vars(g, k)] + [(_pos(n), 1)]
    base = System(Selector.DEFAULT, (Procedure(tuple(branches), 0),))
    new = (Requirement(_bits(n + 1, [n]), 2),)
    return a, tuple(rows), base, new


def _reduce_srec_spec(g: Graph, k: int) -> ReducedInstance:
    a, rows, base, new = _srec_spec_parts(g, k)
    inst = SRecSpec(a, rows, base, StructureSpec(a, 0, k + 1), new, c_c=k + 1)
    params = dict(num_vars=g.n + 1, num_actions=3, sel_max=0, prc_max=k + 1, d=2, c_c=k + 1, R_new=1, size=k + 3)
    return ReducedInstance("srec-spec", inst, {v: v - 1 for v in g.vertices}, params)


def _reduce_srec_compa(g: Graph, k: int) -> ReducedInstance:
    a, rows, base, new = _srec_spec_parts(g, k)
    libs = Libraries((base.selector,), base.procedures)
    inst = SRecCompA(a, rows, base, libs, new, c_l=0, c_c=k + 1, d=2)
    params = dict(
        num_vars=g.n + 1, num_actions=3, sel_max=0, prc_max=k + 1, d=2, c_c=k + 1, c_l=0,
        R_new=1, L_sel=1, L_prc=1, size=k + 3,
    )
    return ReducedInstance("srec-compa", inst, {v: v - 1 for v in g.vertices}, params)


def _srec_comp_parts(g: Graph):
    n = g.n
    top = 2 * n  # i_{2|V|+1}
    rest = tuple(_pos(j) for j in range(n - 1))
    live = Selector((_pos(top), *rest))
    dead = Selector((Literal(top, False), *rest))
    keep = Procedure(((_pos(top), 1),), 1)
    return live, dead, keep


def _reduce_srec_comp(g: Graph, k: int) -> ReducedInstance:
    n = g.n
    width = 2 * n + 1
    top = 2 * n
    a = Alphabet(width, 2)
    rows = tuple(_doubled_rows(g, width, extra=[top]))
    live, dead, keep = _srec_comp_parts(g)
    base = System(live, (keep,) * live.slots)
    libs = Libraries((live, dead), (keep, *(_vertex_procedure(g, j) for j in g.vertices)))
    new = tuple(Requirement(_bits(width, [v - 1, top]), 0) for v in g.vertices)
    # One more change than |V| + 1: the first slot of the swapped-in selector
    # never fires, and leaving the original procedure there costs a type.
    c_l = n + 2
    inst = SRecComp(a, rows, base, libs, new, c_l=c_l, d=k + 1)
    params = dict(
        num_vars=width, num_actions=2, sel_max=n, prc_max=1, d=k + 1, c_l=c_l, R_new=n, L_sel=2, L_prc=n + 1
    )
    return ReducedInstance("srec-comp", inst, {v: n + v - 1 for v in g.vertices}, params)


_REDUCERS = {
    "scre-spec": _reduce_scre_spec,
    "scre-compa": _reduce_scre_compa,
    "scre-comp": _reduce_scre_comp,
    "srec-spec": _reduce_srec_spec,
    "srec-compa": _reduce_srec_compa,
    "srec-comp": _reduce_srec_comp,
}


def reduce(kind: str, g: Graph, k: int) -> ReducedInstance:
    if k < 0:
        raise InvalidInputError("k must be >= 0")
    return _REDUCERS[normalize_kind(kind)](g, k)


# -- forward witnesses -------------------------------------------------------


def _dominator(g: Graph, ds: Sequence[int], v: int) -> int:
    return min(u for u in ds if u in closed_neighborhood(g, v))


def _set_conditions(proc: Procedure, ds: Sequence[int], k: int, var_of) -> Procedure:
    """Point the first k branch conditions at ``ds``, padding with its first vertex."""
    targets = list(ds) + [ds[0]] * (k - len(ds))
    branches = list(proc.branches)
    for t, v in enumerate(targets):
        branches[t] = (_pos(var_of(v)), branches[t][1])
    return Procedure(tuple(branches), proc.else_action)


def witness_from_ds(kind: str, g: Graph, k: int, ds: Iterable[int]) -> System:
    """The system each construction's forward direction builds from a dominating set."""
    kind = normalize_kind(kind)
    ds = sorted(set(ds))
    if not is_dominating(g, ds):
        raise InvalidInputError(f"{{{', '.join(f'v{v}' for v in ds)}}} is not a dominating set")
    if len(ds) > k:
        raise InvalidInputError(f"dominating set has {len(ds)} vertices, more than k = {k}")
    n = g.n
    if kind == "scre-spec":
        return System(Selector.DEFAULT, (Procedure(tuple((_pos(v - 1), 1) for v in ds), 0),))
    if kind == "scre-compa":
        base = _compa_base_procedure(g, k)
        return System(Selector.DEFAULT, (_set_conditions(base, ds, k, lambda v: v - 1),))
    if kind == "scre-comp":
        sel = Selector(tuple(_pos(j) for j in range(n - 1)))
        procs = [_vertex_procedure(g, _dominator(g, ds, v)) for v in g.vertices]
        return System(sel, tuple(procs))
    if kind in ("srec-spec", "srec-compa"):
        _, _, base, _ = _srec_spec_parts(g, k)
        proc = _set_conditions(base.procedures[0], ds, k, lambda v: v - 1)
        branches = list(proc.branches)
        branches[k] = (branches[k][0], 2)
        return System(Selector.DEFAULT, (Procedure(tuple(branches), 0),))
    _, dead, _ = _srec_comp_parts(g)
    procs = [_vertex_procedure(g, ds[0])] + [_vertex_procedure(g, _dominator(g, ds, v)) for v in g.vertices]
    return System(dead, tuple(procs))


# -- verification ------------------------------------------------------------


@dataclass
class ReductionReport:
    kind: str
    n: int
    k: int
    strategy: str
    ds_answer: bool
    solver_answer: bool
    equivalent: bool
    dominating_set: tuple | None = None
    witness_ok: bool | None = None
    witness_failures: tuple = ()
    notes: tuple = ()
    error: str | None = None
    millis: float = 0.0

    @property
    def ok(self) -> bool:
        return self.error is None and self.equivalent and self.witness_ok is not False

    def lines(self) -> list[str]:
        ds = "none" if self.dominating_set is None else " ".join(f"v{v}" for v in self.dominating_set)
        out = [
            f"kind={self.kind}",
            f"n={self.n}",
            f"k={self.k}",
            f"strategy={self.strategy}",
            f"dominating_set={ds}",
            f"ds_answer={'yes' if self.ds_answer else 'no'}",
            f"solver_answer={'yes' if self.solver_answer else 'no'}",
            f"equivalent={'true' if self.equivalent else 'false'}",
        ]
        if self.witness_ok is not None:
            out.append(f"witness_ok={'true' if self.witness_ok else 'false'}")
        if self.witness_failures:
            out.append(f"witness_failures={','.join(self.witness_failures)}")
        out += [f"note={n}" for n in self.notes]
        if self.error:
            out.append(f"error={self.error}")
        return out


def verify_reduction(kind: str, g: Graph, k: int, strategy: Strategy | str | None = None) -> ReductionReport:
    kind = normalize_kind(kind)
    start = time.perf_counter()
    ds = ds_oracle(DSQuery(g, k))
    report = ReductionReport(kind, g.n, k, str(getattr(strategy, "value", strategy) or "default"),
                             ds is not None, False, False, ds)
    try:
        red = reduce(kind, g, k)
        report.notes = red.notes
        report.solver_answer = decide(red.instance, strategy)
        report.equivalent = report.ds_answer == report.solver_answer
        if ds is not None:
            witness = witness_from_ds(kind, g, k, ds)
            failures = check_solution(red.instance, witness)
            report.witness_ok = not failures
            report.witness_failures = tuple(failures)
    except Exception as exc:  # surfaced in the report
        report.error = f"{type(exc).__name__}: {exc}"
        report.equivalent = False
    report.millis = (time.perf_counter() - start) * 1000
    return report
