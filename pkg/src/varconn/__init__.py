"""Frequency-domain directed connectivity for vector autoregressive models.

The package evaluates spectral connectivity measures (coherence, the PDC
family, the DTF family, and their information-theoretic variants iPDC and
iDTF) on stable VAR models, integrates the information variants into
mutual information rates, and ships independent oracle routes that verify
the identities the measures rely on. A CLI (`varconn`) covers simulation,
estimation, measurement, rate integration, and self-verification.
"""

from .errors import (
    DataError,
    DimensionError,
    DomainError,
    EstimationError,
    NumericalError,
    ParseError,
    VarconnError,
)
from .fileio import (
    build_result_document,
    canonical_json,
    load_model,
    load_timeseries,
    save_model,
    save_result,
    save_timeseries,
)
from .infotheory import (
    BOUND_TOL,
    EPS_CLIP,
    InfoDensity,
    MirKind,
    MirMatrix,
    SymmetryReport,
    clip_squared_coherence,
    geweke_hosoya_bridge,
    info_density,
    mir_coherence,
    mir_from_coherence,
    mir_idtf,
    mir_ipdc,
    mir_symmetry_check,
)
from .measures import (
    MeasureKind,
    MeasureResult,
    all_measures,
    coherence,
    dtf_family,
    idtf,
    ipdc,
    pdc_family,
)
from .oracles import (
    CheckResult,
    Fixture,
    VerificationReport,
    fixture,
    orthogonality_residual,
    partialized_innovation_coherence,
    partialized_process_coherence,
    random_stable_model,
    run_verification,
    transfer_function_deviation,
)
from .spectral import (
    CONDITION_LIMIT,
    DEFAULT_N_POINTS,
    FrequencyGrid,
    PartializationSet,
    SpectralSet,
    evaluate_spectra,
    partial_spectrum_via_lemma,
    partialize,
)
from .var_model import (
    STABILITY_TOL,
    TimeSeriesData,
    ValidationReport,
    VarModel,
    companion_matrix,
    estimate,
    rescale,
    select_order,
    simulate,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "BOUND_TOL",
    "CONDITION_LIMIT",
    "CheckResult",
    "DEFAULT_N_POINTS",
    "DataError",
    "DimensionError",
    "DomainError",
    "EstimationError",
    "Fixture",
    "FrequencyGrid",
    "InfoDensity",
    "MeasureKind",
    "MeasureResult",
    "MirKind",
    "MirMatrix",
    "NumericalError",
    "ParseError",
    "PartializationSet",
    "EPS_CLIP",
    "STABILITY_TOL",
    "SpectralSet",
    "SymmetryReport",
    "TimeSeriesData",
    "ValidationReport",
    "VarconnError",
    "VerificationReport",
    "VarModel",
    "all_measures",
    "build_result_document",
    "canonical_json",
    "clip_squared_coherence",
    "coherence",
    "companion_matrix",
    "dtf_family",
    "estimate",
    "evaluate_spectra",
    "fixture",
    "geweke_hosoya_bridge",
    "idtf",
    "info_density",
    "ipdc",
    "load_model",
    "load_timeseries",
    "mir_coherence",
    "mir_from_coherence",
    "mir_idtf",
    "mir_ipdc",
    "mir_symmetry_check",
    "orthogonality_residual",
    "partial_spectrum_via_lemma",
    "partialize",
    "partialized_innovation_coherence",
    "partialized_process_coherence",
    "pdc_family",
    "random_stable_model",
    "rescale",
    "run_verification",
    "save_model",
    "save_result",
    "save_timeseries",
    "select_order",
    "simulate",
    "transfer_function_deviation",
    "validate",
]
