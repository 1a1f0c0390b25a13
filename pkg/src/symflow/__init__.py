"""Pseudospectral Navier-Stokes/Euler on the periodic box, with symmetry
and stability diagnostics for two-dimensional and helical flows under
three-dimensional perturbations."""

from .bounds import (
    BoundCurve,
    BoundKind,
    PerturbationBudget,
    apriori_bound,
    apriori_curve,
    ladyzhenskaya_ratio_2d,
    perturbation_budget,
    running_bound,
    young_split_gap,
    young_split_minimizer,
)
from .checkpoint import read_checkpoint, write_checkpoint
from .config import ConfigError, ExperimentConfig, load_config, parse_config_text
from .harness import (
    ExperimentReport,
    generate_perturbation,
    random_2p5d_field,
    run_experiment,
    taylor_green_field,
)
from .solver import (
    BlowUpError,
    CFLViolation,
    DiagnosticsSample,
    ResolutionLossError,
    SolverState,
    Trajectory,
    energy_budget_check,
    nonlinear_term,
    simulate,
    step,
    taylor_green_energy,
)
from .spectral import (
    FieldNorms,
    GridSpec,
    ScalarField,
    SpectralVelocityField,
    dealias,
    forward_transform,
    inverse_transform,
    l2_norm_sq,
    leray_project,
    norms,
    validate_field,
    zero_field,
)
from .symmetry import (
    SymmetryKind,
    ei_x3_deviation,
    helical_apply,
    helical_deviation,
    helical_symmetrize,
    make_2p5d,
    symmetrize_z,
    translate_z,
    wild_energy_profile,
)

__version__ = "0.1.0"
