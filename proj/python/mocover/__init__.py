"""Box-subdivision coverings of Pareto sets under inexact values and gradients."""

from ._core import (
    BoxCollection,
    DescentOutcome,
    DescentStatus,
    EmptyCovering,
    HyperBox,
    LineSearchConfig,
    Problem,
    ProductionForm,
    RunConfig,
    SimplexWeights,
    SolveResult,
    SolverConfig,
    SolverMode,
    armijo_step,
    builtin,
    builtin_names,
    cmd_compare,
    cmd_residual_field,
    cmd_run,
    combination,
    confidently_dominated,
    confidently_dominates,
    covering_from_json,
    covering_hausdorff,
    covering_to_json,
    descent_map,
    hausdorff,
    inexact_descent,
    is_subcovering,
    kkt_residual,
    load_config,
    parse_config,
    perturbation,
    residual_field,
    sample_points,
    solve,
    solve_qop,
    validity_check,
)

__all__ = [name for name in dir() if not name.startswith("_")]
