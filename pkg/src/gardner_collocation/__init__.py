"""Extended cubic B-spline collocation solver for the Gardner equation."""
from .assembly import (
    CoefficientState,
    PhysicsParams,
    SolverError,
    apply_neumann,
    assemble,
    integrate,
    solve_band,
    step,
)
from .basis import GridSpec, eval_basis, nodal_weights, reconstruct
from .diagnostics import conserved_quantities, diagnose, linf_error, relative_changes
from .experiment import ExperimentResult, run_experiment
from .fitting import InitialProfile, fit_initial
from .problems import ExperimentPreset, exact_kink, exact_pulse, preset
from .scan import ScanSpec, scan
from .stability import amplification_factors, verify_stability

__version__ = "0.1.0"
