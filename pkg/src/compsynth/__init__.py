"""Exact synthesis and reconfiguration of two-level selector/procedure systems."""

from .model import (
    Alphabet,
    Budgets,
    ErrorCode,
    InvalidInputError,
    Libraries,
    Literal,
    Procedure,
    Requirement,
    Selector,
    StructureSpec,
    System,
    code_distance,
    component_distance,
    component_type_count,
    consistent_with,
    eval_procedure,
    eval_system,
    normalize_block,
    normalize_system,
    satisfies,
    size_bound,
    system_metrics,
)
from .problems import (
    KINDS,
    SCreComp,
    SCreCompA,
    SCreSpec,
    SRecComp,
    SRecCompA,
    SRecSpec,
    check_solution,
    validate_instance,
)
from .solvers import Bottom, Solution, Strategy, decide, search, solve

__version__ = "0.1.0"
