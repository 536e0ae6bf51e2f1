"""specgrad: scalar functions of constant-coefficient differential operators,
applied spectrally to sampled periodic fields, with kernel-convolution dual
paths and closed-form oracles."""

from ._kernels import active_backend, use_backend
from .grid import (
    Field,
    Grid,
    SpectralField,
    coordinates,
    dft_forward,
    dft_inverse,
    make_grid,
    sample_field,
    wavenumbers,
)
from .operators import (
    AMPLIFICATION_LIMIT,
    AmplificationError,
    Kernel1D,
    OperatorSpec,
    PeriodizationWarning,
    ResolutionWarning,
    SpectralMultiplier,
    TruncationWarning,
    apply_multiplier,
    apply_operator,
    build_multiplier,
    convolve_kernel,
    extract_kernel_1d,
    fresnel_cos_apply,
    heat_smooth_realspace,
    inverse_derivative,
    sgn_kernel_apply,
    shift_field,
    shifted_derivative_apply,
    stability_report,
)
from .oracles import (
    OracleCase,
    OracleReport,
    brute_force_apply,
    closed_form_catalog,
    equivalence_cases,
    run_oracles,
)
from .symbols import (
    EvalDomainError,
    EvalError,
    EvalOverflowError,
    ParseError,
    SingularityReport,
    SymbolExpr,
    evaluate,
    evaluate_array,
    parse,
    probe_singularities,
    unparse,
)

__version__ = "0.1.0"

__all__ = [
    "AMPLIFICATION_LIMIT",
    "AmplificationError",
    "EvalDomainError",
    "EvalError",
    "EvalOverflowError",
    "Field",
    "Grid",
    "Kernel1D",
    "OperatorSpec",
    "OracleCase",
    "OracleReport",
    "ParseError",
    "PeriodizationWarning",
    "ResolutionWarning",
    "SingularityReport",
    "SpectralField",
    "SpectralMultiplier",
    "SymbolExpr",
    "TruncationWarning",
    "active_backend",
    "apply_multiplier",
    "apply_operator",
    "brute_force_apply",
    "build_multiplier",
    "closed_form_catalog",
    "convolve_kernel",
    "coordinates",
    "dft_forward",
    "dft_inverse",
    "equivalence_cases",
    "evaluate",
    "evaluate_array",
    "extract_kernel_1d",
    "fresnel_cos_apply",
    "heat_smooth_realspace",
    "inverse_derivative",
    "make_grid",
    "parse",
    "probe_singularities",
    "run_oracles",
    "sample_field",
    "sgn_kernel_apply",
    "shift_field",
    "shifted_derivative_apply",
    "stability_report",
    "unparse",
    "use_backend",
    "wavenumbers",
]
