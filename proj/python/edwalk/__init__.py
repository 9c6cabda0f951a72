"""Exact quantum-walk pair finder.

Closed-form schedule solver plus three simulators (five-dimensional
collapsed model, full vertex-space walk, joint value-register walk) for
finding the unique colliding index pair of an oracle string with
certainty.
"""

from ._core import (
    AlgorithmParams,
    ModelViolation,
    ResourceLimit,
    SolveReport,
    SolverFailure,
    explicit_register_check,
    group_sizes,
    measure,
    query_count,
    run_full,
    run_reduced,
    solve,
    to_json,
    walk_power_residual,
)

__all__ = [
    "AlgorithmParams",
    "ModelViolation",
    "ResourceLimit",
    "SolveReport",
    "SolverFailure",
    "explicit_register_check",
    "group_sizes",
    "measure",
    "query_count",
    "run_full",
    "run_reduced",
    "solve",
    "to_json",
    "walk_power_residual",
]

__version__ = "1.0.0"
