"""dc_optlab: differential-capability loss family, Lambert-W convergence
bounds, and a single-neuron GD/SGD experiment harness."""

__version__ = "0.1.0"

from .errors import (
    DCOptLabError,
    DimensionError,
    DomainError,
    EmptyDatasetError,
    FormatError,
    NumericalError,
    ValidationError,
)
from .lambert_w import BRANCH_POINT, w0, w0_log_enclosure
from .dc_loss import (
    DCParams,
    LossConfigKind,
    classify_config,
    log_response_probability,
    loss_derivative,
    margin_transform,
    new_params,
    per_sample_loss,
    response_probability,
    two_pl,
)
from .convergence import (
    BoundBracket,
    RateCurve,
    ShiftReport,
    VerificationReport,
    bracket_curves,
    corollary_probe,
    dc_rate,
    default_rate,
    rate_curve,
    rate_curve_csv,
    rate_onset,
    theorem_bracket,
    verify_theorem,
)
from .data import Dataset, SyntheticSpec, generate, load_csv, save_csv, split
from .neuron import (
    EpochTrace,
    Init,
    Mode,
    TrainConfig,
    accuracy,
    empirical_loss,
    gd_step,
    loss_gradient,
    margins,
    min_normalized_margin,
    save_trace_csv,
    trace_csv,
    train,
    train_with_weights,
    weights_json,
)
from .sweep import (
    CurveStats,
    GridSpec,
    SweepResult,
    aggregate_curves,
    build_grid,
    run_seeds,
    run_sweep,
    sample_grid,
)

__all__ = [
    "BRANCH_POINT",
    "BoundBracket",
    "CurveStats",
    "DCOptLabError",
    "DCParams",
    "Dataset",
    "DimensionError",
    "DomainError",
    "EmptyDatasetError",
    "EpochTrace",
    "FormatError",
    "GridSpec",
    "Init",
    "LossConfigKind",
    "Mode",
    "NumericalError",
    "RateCurve",
    "ShiftReport",
    "SweepResult",
    "SyntheticSpec",
    "TrainConfig",
    "ValidationError",
    "VerificationReport",
    "accuracy",
    "aggregate_curves",
    "bracket_curves",
    "build_grid",
    "classify_config",
    "corollary_probe",
    "dc_rate",
    "default_rate",
    "empirical_loss",
    "gd_step",
    "generate",
    "load_csv",
    "log_response_probability",
    "loss_derivative",
    "loss_gradient",
    "margin_transform",
    "margins",
    "min_normalized_margin",
    "new_params",
    "per_sample_loss",
    "rate_curve",
    "rate_curve_csv",
    "rate_onset",
    "response_probability",
    "run_seeds",
    "run_sweep",
    "sample_grid",
    "save_csv",
    "save_trace_csv",
    "split",
    "theorem_bracket",
    "trace_csv",
    "train",
    "train_with_weights",
    "two_pl",
    "verify_theorem",
    "w0",
    "w0_log_enclosure",
    "weights_json",
]
