"""Parameter sweeps: search effort per (instance, strategy), as CSV plus a figure."""

from __future__ import annotations

import csv
import io
import random
import re
import time
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Sequence

from .enumeration import library_product_bound
from .generate import APPLICABLE_PARAMS, Params, random_instance
from .model import ErrorCode, InvalidInputError
from .problems import normalize_kind
from .solvers import Solution, Strategy, resolve_strategy, search

CSV_COLUMNS = ("kind", "strategy", "param", "value", "nodes", "millis", "answer")


@dataclass(frozen=True)
class BenchRecord:
    kind: str
    strategy: str
    param: str
    value: int
    nodes: int
    millis: float
    answer: str
    bound: int | None = None  # library-product bound, Comp kinds only


def parse_sweep(text: str) -> tuple[str, range]:
    m = re.fullmatch(r"\s*\|?([A-Za-z_]+)\|?\s*=\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*", text)
    if not m:
        raise InvalidInputError(f"sweep must look like name=lo..hi, got {text!r}", ErrorCode.USAGE)
    name, lo, hi = m.group(1), int(m.group(2)), int(m.group(3))
    return name, range(lo, hi + 1)


def parse_setting(text: str) -> tuple[str, int]:
    m = re.fullmatch(r"\s*([A-Za-z_]+)\s*=\s*(\d+)\s*", text)
    if not m:
        raise InvalidInputError(f"setting must look like name=value, got {text!r}", ErrorCode.USAGE)
    return m.group(1), int(m.group(2))


def _check_param(kind: str, name: str) -> None:
    if name not in APPLICABLE_PARAMS[kind]:
        raise InvalidInputError(
            f"parameter {name!r} does not apply to {kind}; choose from {', '.join(APPLICABLE_PARAMS[kind])}",
            ErrorCode.USAGE,
        )


def instance_family(kind: str, param: str, values: Sequence[int], seed: int, base: Params | None = None):
    """Yield ``(value, instance)``; each point has its own seeded generator."""
    kind = normalize_kind(kind)
    _check_param(kind, param)
    base = base or Params()
    for value in values:
        rng = random.Random(f"{seed}:{kind}:{param}:{value}")
        yield value, random_instance(kind, base.with_(**{param: value}), rng)


def run_bench(
    kind: str,
    sweep: tuple[str, Sequence[int]] | str,
    seed: int,
    strategies: Sequence[Strategy | str] | None = None,
    settings: dict | None = None,
) -> list[BenchRecord]:
    """Exhaustively search each instance of the family, once per strategy.

    The search does not stop at the first solution, so ``nodes`` is the size
    of the strategy's whole candidate space for that instance.
    """
    kind = normalize_kind(kind)
    param, values = parse_sweep(sweep) if isinstance(sweep, str) else sweep
    _check_param(kind, param)
    for key in settings or {}:
        _check_param(kind, key)
    strats = [resolve_strategy(kind, s) for s in (strategies or [Strategy.BASELINE])]
    base = Params().with_(**(settings or {}))
    records = []
    for value, inst in instance_family(kind, param, values, seed, base):
        bound = library_product_bound(inst.libraries) if kind in ("scre-comp", "srec-comp") else None
        for strat in strats:
            start = time.perf_counter()
            outcome = search(inst, strat, exhaustive=True)
            millis = (time.perf_counter() - start) * 1000
            answer = "yes" if isinstance(outcome, Solution) else "no"
            records.append(BenchRecord(kind, strat.value, param, value, outcome.nodes, round(millis, 3), answer, bound))
    return records


def records_to_csv(records: Sequence[BenchRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in records:
        row = asdict(r)
        writer.writerow([row[c] for c in CSV_COLUMNS])
    return buf.getvalue()


def plot_records(records: Sequence[BenchRecord], path: str | Path) -> Path:
    """Nodes explored against the swept value, one line per strategy."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    from matplotlib.ticker import MaxNLocator

    path = Path(path)
    fig, ax = plt.subplots(figsize=(5.5, 3.6))
    by_strategy: dict[str, list] = {}
    for r in records:
        by_strategy.setdefault(r.strategy, []).append(r)
    for name, rs in by_strategy.items():
        ax.plot([r.value for r in rs], [max(r.nodes, 1) for r in rs], marker="o", label=name)
    bounded = [r for r in records if r.bound is not None]
    if bounded:
        pts = sorted({(r.value, r.bound) for r in bounded})
        ax.plot([v for v, _ in pts], [b for _, b in pts], ls="--", color="0.4", label="library-product bound")
    if records:
        ax.set_xlabel(records[0].param)
        ax.set_title(records[0].kind, fontsize=10)
    ax.set_ylabel("candidates examined")
    ax.set_yscale("log")  # zero counts are drawn at 1
    ax.xaxis.set_major_locator(MaxNLocator(integer=True))
    ax.legend(fontsize=8, frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
