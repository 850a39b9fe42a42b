"""Verification toolkit for numerical-radius operator inequalities.

Computes certified brackets for the numerical radius, operator norms,
matrix functions, and weighted operator means; maintains a registry of
inequalities between those quantities; and checks each registry entry on
randomized (optionally spectrum-constrained) matrix instances, reporting
signed slacks and sphere-infimum correction terms.
"""

from .cases import InequalityCase
from .catalog import (
    FAST_OPTIONS,
    HOLDS,
    PRE_FAILED,
    REGISTRY,
    VIOLATED,
    Bound,
    CheckResult,
    EvalOptions,
    all_bound_ids,
    check_sandwich,
    compare_tightness,
    evaluate_bound,
)
from .errors import (
    BadFunctionError,
    BadKindError,
    BadParametersError,
    BadWindowError,
    DomainError,
    ExampleMismatchError,
    GenerationFailedError,
    NotInvertibleError,
    NumericalBreakdownError,
    PreconditionFailedError,
    ToolkitError,
)
from .generators import GENERATOR_KINDS, case_for_bound, generate_case, make_sandwich_case
from .harness import (
    CSV_COLUMNS,
    REPORT_SCHEMA,
    BoundSummary,
    Report,
    SuiteConfig,
    TrialRecord,
    prospect,
    reproduce_example_2x2,
    resolve_bounds,
    run_suite,
    write_report_json,
    write_summary_csv,
)
from .linalg import (
    abs_op,
    abs_power,
    abs_power_star,
    dagger,
    exp_r_scalar,
    herm_part,
    hermitian_eig,
    matrix_function,
    operator_norm,
    polar_decomposition,
    polar_unitary,
    psd_power,
    weighted_arithmetic_mean,
    weighted_geometric_mean,
    weighted_means,
)
from .radius import RadiusBracket, numerical_radius, radius_brute_oracle
from .scalarfn import ScalarFunction, power
from .scalars import (
    ScalarCheck,
    agm_refined,
    conjugate_exponent,
    jensen_chain,
    power_sum_convexity,
    subadditivity_gap,
    superquadratic_gap,
    young_generalized,
    young_generalized_eq4,
    young_generalized_eq5,
    young_refined,
)
from .sphere import (
    SphereFunctional,
    build_correction_functional,
    infimum_unit_sphere,
    lattice_infimum_oracle,
)

__version__ = "1.0.0"

__all__ = [
    "InequalityCase",
    "FAST_OPTIONS",
    "HOLDS",
    "PRE_FAILED",
    "REGISTRY",
    "VIOLATED",
    "Bound",
    "CheckResult",
    "EvalOptions",
    "all_bound_ids",
    "check_sandwich",
    "compare_tightness",
    "evaluate_bound",
    "BadFunctionError",
    "BadKindError",
    "BadParametersError",
    "BadWindowError",
    "DomainError",
    "ExampleMismatchError",
    "GenerationFailedError",
    "NotInvertibleError",
    "NumericalBreakdownError",
    "PreconditionFailedError",
    "ToolkitError",
    "GENERATOR_KINDS",
    "case_for_bound",
    "generate_case",
    "make_sandwich_case",
    "CSV_COLUMNS",
    "REPORT_SCHEMA",
    "BoundSummary",
    "Report",
    "SuiteConfig",
    "TrialRecord",
    "prospect",
    "reproduce_example_2x2",
    "resolve_bounds",
    "run_suite",
    "write_report_json",
    "write_summary_csv",
    "abs_op",
    "abs_power",
    "abs_power_star",
    "dagger",
    "exp_r_scalar",
    "herm_part",
    "hermitian_eig",
    "matrix_function",
    "operator_norm",
    "polar_decomposition",
    "polar_unitary",
    "psd_power",
    "weighted_arithmetic_mean",
    "weighted_geometric_mean",
    "weighted_means",
    "RadiusBracket",
    "numerical_radius",
    "radius_brute_oracle",
    "ScalarFunction",
    "power",
    "ScalarCheck",
    "agm_refined",
    "conjugate_exponent",
    "jensen_chain",
    "power_sum_convexity",
    "subadditivity_gap",
    "superquadratic_gap",
    "young_generalized",
    "young_generalized_eq4",
    "young_generalized_eq5",
    "young_refined",
    "SphereFunctional",
    "build_correction_functional",
    "infimum_unit_sphere",
    "lattice_infimum_oracle",
    "__version__",
]
