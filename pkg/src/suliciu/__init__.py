"""Exact Riemann solutions and Lax-Friedrichs simulation for the Suliciu
relaxation system, including concentrated-mass (delta shock) solutions with
an independent jump-relation oracle and measure-form residual checks."""

from .core import (
    Conserved,
    Params,
    Region,
    State,
    bracket,
    classify,
    conserved_to_primitive,
    delta_condition,
    eigenvalues,
    flux,
    primitive_to_conserved,
    riemann_invariants,
)
from .exact import (
    ClassicalSolution,
    DeltaShockSolution,
    RiemannSolution,
    SingularPoint,
    check_entropy,
    delta_speed_roots,
    quadratic_residual,
    rh_residual_classical,
    sample_classical,
    sample_delta,
    solve,
    solve_classical,
    solve_delta,
)
from .fv import Field, Grid, SimConfig, SimResult, cfl_dt, init_riemann, lxf_step, run
from .grh import (
    GrhTrajectory,
    default_times,
    trajectory_from_solution,
    verify_derivatives,
    verify_integrated,
)
from .verification import (
    BumpTestFunction,
    ConvergenceRow,
    ResidualReport,
    build_residual_report,
    convergence_study,
    estimate_shock_position,
    extract_delta_weight,
    rasterize,
    weak_residual,
)

__version__ = "0.1.0"
