"""Text formats: instance documents, solution documents, and graph files.

Instance document (one ``key=value`` per line, ``#`` comments)::

    format=1
    kind=srec-spec
    alphabet=5 3                 # |I| |A|
    requirement=TTTTT a2         # situation bits, 1-based action
    structure=2 3                # sel_max prc_max
    system=i1,i5 | i4:a2,~i3:a1,i5:a3;a1 | i4:a2;a2 | a2
    new-requirement=FFFFT a3
    c_c=1

Blocks: a selector is ``*`` or comma-separated literals (``i3``, ``~i3``);
a procedure is ``a2`` or ``lit:action,...;else-action``; a system is a
selector followed by one procedure per slot, separated by ``|``. Library
entries use ``selector=`` and ``procedure=`` lines.
"""

from __future__ import annotations

import os
import re
import tempfile
from dataclasses import dataclass
from pathlib import Path

from .model import (
    Alphabet,
    ErrorCode,
    InvalidInputError,
    Libraries,
    Literal,
    Procedure,
    Requirement,
    Selector,
    StructureSpec,
    System,
)
from .problems import INSTANCE_TYPES, ProblemInstance, normalize_kind, validate_instance
from .reductions import Graph

FORMAT_VERSION = "1"

# fields each kind accepts, in canonical output order; * marks repeatable
_FIELDS = {
    "scre-spec": ("alphabet", "requirement*", "structure"),
    "scre-comp": ("alphabet", "requirement*", "selector*", "procedure*", "d"),
    "scre-compa": ("alphabet", "requirement*", "selector*", "procedure*", "d", "c_c"),
    "srec-spec": ("alphabet", "requirement*", "system", "structure", "new-requirement*", "c_c"),
    "srec-comp": ("alphabet", "requirement*", "system", "selector*", "procedure*", "new-requirement*", "c_l", "d"),
    "srec-compa": (
        "alphabet", "requirement*", "system", "selector*", "procedure*", "new-requirement*", "c_l", "c_c", "d",
    ),
}
_ALL_FIELDS = {"format", "kind"} | {f.rstrip("*") for fs in _FIELDS.values() for f in fs}

_LIT = re.compile(r"^(~?)i(\d+)$")
_ACT = re.compile(r"^a(\d+)$")


class DocumentError(InvalidInputError):
    pass


def _err(msg: str, code: ErrorCode, line: int | None) -> DocumentError:
    return DocumentError(msg, code, line)


# -- block syntax ------------------------------------------------------------


def parse_literal(text: str, line: int | None = None) -> Literal:
    m = _LIT.match(text.strip())
    if not m:
        raise _err(f"bad literal {text.strip()!r}", ErrorCode.SYNTAX, line)
    idx = int(m.group(2))
    if idx < 1:
        raise _err(f"variable i{idx} (variables are 1-based)", ErrorCode.RANGE, line)
    return Literal(idx - 1, not m.group(1))


def parse_action(text: str, line: int | None = None) -> int:
    m = _ACT.match(text.strip())
    if not m:
        raise _err(f"bad action {text.strip()!r}", ErrorCode.SYNTAX, line)
    idx = int(m.group(1))
    if idx < 1:
        raise _err(f"action a{idx} (actions are 1-based)", ErrorCode.RANGE, line)
    return idx - 1


def parse_selector(text: str, line: int | None = None) -> Selector:
    text = text.strip()
    if text == "*":
        return Selector.DEFAULT
    if not text:
        raise _err("empty selector", ErrorCode.SYNTAX, line)
    return Selector(tuple(parse_literal(t, line) for t in text.split(",")))


def parse_procedure(text: str, line: int | None = None) -> Procedure:
    text = text.strip()
    if ";" not in text:
        return Procedure.single(parse_action(text, line))
    body, _, tail = text.rpartition(";")
    branches = []
    for part in body.split(","):
        lit, sep, act = part.partition(":")
        if not sep:
            raise _err(f"branch {part.strip()!r} needs 'literal:action'", ErrorCode.SYNTAX, line)
        branches.append((parse_literal(lit, line), parse_action(act, line)))
    return Procedure(tuple(branches), parse_action(tail, line))


def parse_system(text: str, line: int | None = None) -> System:
    parts = text.split("|")
    sel = parse_selector(parts[0], line)
    procs = tuple(parse_procedure(p, line) for p in parts[1:])
    if len(procs) != sel.slots:
        raise _err(f"selector has {sel.slots} slot(s) but {len(procs)} procedure(s) follow", ErrorCode.SYNTAX, line)
    return System(sel, procs)


def format_situation(situation) -> str:
    return "".join("T" if v else "F" for v in situation)


def _parse_requirement(text: str, line: int) -> Requirement:
    parts = text.split()
    if len(parts) != 2 or set(parts[0]) - {"T", "F"}:
        raise _err(f"requirement {text!r} must be '<T/F bits> a<action>'", ErrorCode.SYNTAX, line)
    return Requirement(tuple(c == "T" for c in parts[0]), parse_action(parts[1], line))


def _format_requirement(r: Requirement) -> str:
    return f"{format_situation(r.situation)} a{r.action + 1}"


def _ints(text: str, count: int, field: str, line: int) -> list[int]:
    parts = text.split()
    if len(parts) != count or not all(re.fullmatch(r"-?\d+", p) for p in parts):
        raise _err(f"{field} needs {count} integer(s), got {text!r}", ErrorCode.SYNTAX, line)
    vals = [int(p) for p in parts]
    if any(v < 0 for v in vals):
        raise _err(f"{field} values must be >= 0", ErrorCode.RANGE, line)
    return vals


# -- documents ---------------------------------------------------------------


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise _err(f"expected key=value, got {line!r}", ErrorCode.SYNTAX, no)
        yield no, key.strip(), value.strip()


def _header(entries: list) -> None:
    if not entries or entries[0][1] != "format":
        raise _err("document must start with format=1", ErrorCode.MISSING, entries[0][0] if entries else None)
    no, _, value = entries[0]
    if value != FORMAT_VERSION:
        raise _err(f"unsupported format version {value!r}", ErrorCode.SYNTAX, no)


def parse_instance(text: str) -> ProblemInstance:
    """Parse and validate an instance document; errors name the offending line."""
    entries = list(_lines(text))
    _header(entries)
    kind = None
    grouped: dict[str, list] = {}
    for no, key, value in entries[1:]:
        if key not in _ALL_FIELDS or key == "format":
            raise _err(f"unknown field {key!r}", ErrorCode.UNKNOWN, no)
        if key == "kind":
            if kind is not None:
                raise _err("kind given twice", ErrorCode.SYNTAX, no)
            try:
                kind = normalize_kind(value)
            except InvalidInputError as exc:
                raise _err(exc.args[0], ErrorCode.SYNTAX, no) from None
            continue
        grouped.setdefault(key, []).append((no, value))
    if kind is None:
        raise _err("missing field 'kind'", ErrorCode.MISSING, None)
    spec = _FIELDS[kind]
    allowed = {f.rstrip("*"): f.endswith("*") for f in spec}
    for key, items in grouped.items():
        if key not in allowed:
            raise _err(f"field {key!r} does not apply to {kind}", ErrorCode.UNKNOWN, items[0][0])
        if not allowed[key] and len(items) > 1:
            raise _err(f"field {key!r} given more than once", ErrorCode.SYNTAX, items[1][0])
    for key, repeat in allowed.items():
        if not repeat and key not in grouped:
            raise _err(f"missing field {key!r}", ErrorCode.MISSING, None)

    def one(key):
        return grouped[key][0]

    no, value = one("alphabet")
    nv, na = _ints(value, 2, "alphabet", no)
    try:
        alphabet = Alphabet(nv, na)
    except InvalidInputError as exc:
        raise _err(exc.args[0], ErrorCode.RANGE, no) from None

    def reqs(key):
        out = []
        for no, value in grouped.get(key, []):
            r = _parse_requirement(value, no)
            if len(r.situation) != nv:
                raise _err(f"situation has {len(r.situation)} bits, alphabet has {nv}", ErrorCode.RANGE, no)
            if r.action >= na:
                raise _err(f"action a{r.action + 1} outside a1..a{na}", ErrorCode.RANGE, no)
            out.append(r)
        return tuple(out)

    def checked(no, block):
        try:
            block.validate(alphabet)
        except InvalidInputError as exc:
            raise _err(exc.args[0], ErrorCode.RANGE, no) from None
        return block

    parts: dict = {"alphabet": alphabet, "requirements": reqs("requirement")}
    if "new-requirement" in allowed:
        parts["new_requirements"] = reqs("new-requirement")
    if "structure" in allowed:
        no, value = one("structure")
        sel_max, prc_max = _ints(value, 2, "structure", no)
        parts["structure"] = StructureSpec(alphabet, sel_max, prc_max)
    if "system" in allowed:
        no, value = one("system")
        parts["system"] = checked(no, parse_system(value, no))
    if "selector" in allowed:
        sels = [checked(no, parse_selector(v, no)) for no, v in grouped.get("selector", [])]
        procs = [checked(no, parse_procedure(v, no)) for no, v in grouped.get("procedure", [])]
        if not sels or not procs:
            raise _err("libraries need at least one selector= and one procedure= line", ErrorCode.MISSING, None)
        parts["libraries"] = Libraries(tuple(sels), tuple(procs))
    for key in ("d", "c_c", "c_l"):
        if key in allowed:
            no, value = one(key)
            parts[key] = _ints(value, 1, key, no)[0]
    inst = INSTANCE_TYPES[kind](**parts)
    try:
        validate_instance(inst)
    except InvalidInputError as exc:
        raise _err(exc.args[0], exc.code, None) from None
    return inst


def serialize_instance(inst: ProblemInstance) -> str:
    out = [f"format={FORMAT_VERSION}", f"kind={inst.kind}"]
    for f in _FIELDS[inst.kind]:
        key = f.rstrip("*")
        if key == "alphabet":
            out.append(f"alphabet={inst.alphabet.num_vars} {inst.alphabet.num_actions}")
        elif key == "requirement":
            out += [f"requirement={_format_requirement(r)}" for r in inst.requirements]
        elif key == "new-requirement":
            out += [f"new-requirement={_format_requirement(r)}" for r in inst.new_requirements]
        elif key == "structure":
            out.append(f"structure={inst.structure.sel_max} {inst.structure.prc_max}")
        elif key == "system":
            out.append(f"system={inst.system}")
        elif key == "selector":
            out += [f"selector={s}" for s in inst.libraries.selectors]
        elif key == "procedure":
            out += [f"procedure={p}" for p in inst.libraries.procedures]
        else:
            out.append(f"{key}={getattr(inst, key)}")
    return "\n".join(out) + "\n"


@dataclass(frozen=True)
class SolutionDocument:
    kind: str
    strategy: str
    found: bool
    nodes: int
    system: System | None = None
    d_used: int | None = None
    c_c_used: int | None = None
    c_l_used: int | None = None


def solution_document(kind: str, strategy: str, outcome) -> SolutionDocument:
    if outcome.found:
        return SolutionDocument(
            kind, strategy, True, outcome.nodes, outcome.system, outcome.d_used, outcome.c_c_used, outcome.c_l_used
        )
    return SolutionDocument(kind, strategy, False, outcome.nodes)


def serialize_solution(doc: SolutionDocument) -> str:
    out = [f"format={FORMAT_VERSION}", f"kind={doc.kind}", f"strategy={doc.strategy}"]
    out.append(f"answer={'yes' if doc.found else 'no'}")
    if doc.found:
        out.append(f"system={doc.system}")
        for key in ("d_used", "c_c_used", "c_l_used"):
            v = getattr(doc, key)
            if v is not None:
                out.append(f"{key}={v}")
    out.append(f"nodes={doc.nodes}")
    return "\n".join(out) + "\n"


def parse_solution(text: str) -> SolutionDocument:
    entries = list(_lines(text))
    _header(entries)
    vals = {}
    for no, key, value in entries[1:]:
        if key not in ("kind", "strategy", "answer", "system", "d_used", "c_c_used", "c_l_used", "nodes"):
            raise _err(f"unknown field {key!r}", ErrorCode.UNKNOWN, no)
        vals[key] = (no, value)
    for key in ("kind", "strategy", "answer", "nodes"):
        if key not in vals:
            raise _err(f"missing field {key!r}", ErrorCode.MISSING, None)
    found = vals["answer"][1] == "yes"
    system = parse_system(vals["system"][1], vals["system"][0]) if found else None
    nums = {k: int(vals[k][1]) for k in ("d_used", "c_c_used", "c_l_used") if k in vals}
    return SolutionDocument(
        normalize_kind(vals["kind"][1]), vals["strategy"][1], found, int(vals["nodes"][1]), system, **nums
    )


# -- graph files -------------------------------------------------------------


def parse_graph(text: str) -> Graph:
    """Read ``n m`` then ``m`` edge lines ``u v`` (1-based); '#' lines and blanks skipped."""
    rows = []
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise _err(f"expected two non-negative integers, got {line!r}", ErrorCode.SYNTAX, no)
        rows.append((no, int(parts[0]), int(parts[1])))
    if not rows:
        raise _err("empty graph file", ErrorCode.MISSING, None)
    (_, n, m), edges = rows[0], rows[1:]
    if n < 1:
        raise _err("graph needs at least one vertex", ErrorCode.RANGE, rows[0][0])
    if len(edges) != m:
        raise _err(f"header announces {m} edge(s), found {len(edges)}", ErrorCode.SYNTAX, rows[0][0])
    seen = set()
    for no, u, v in edges:
        if u == v:
            raise _err(f"self-loop on v{u}", ErrorCode.RANGE, no)
        if not (1 <= u <= n and 1 <= v <= n):
            raise _err(f"edge endpoint outside 1..{n}", ErrorCode.RANGE, no)
        e = (min(u, v), max(u, v))
        if e in seen:
            raise _err(f"duplicate edge {u} {v}", ErrorCode.SYNTAX, no)
        seen.add(e)
    return Graph(n, frozenset(seen))


def serialize_graph(g: Graph) -> str:
    edges = sorted(g.edges)
    return "\n".join([f"{g.n} {len(edges)}", *(f"{u} {v}" for u, v in edges)]) + "\n"


def write_atomic(path: str | os.PathLike, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
