"""Quick linear-regression check for a one-dimensional active subspace."""

from ascheck.domain import InputDomain, read_bounds, to_normalized, to_physical
from ascheck.sampling import SampleSet, default_sample_count, draw_samples, evaluate_model
from ascheck.regression import (
    ActiveDirection,
    LinearFit,
    RankDeficient,
    Underdetermined,
    ZeroGradient,
    active_direction,
    fit_linear,
)
from ascheck.diagnostics import (
    SummaryScatter,
    TrendMetrics,
    coordinate_scatter,
    corner_suggestion,
    importance_weights,
    summary_projection,
)
from ascheck.testfns import AnalyticModel, builtin

__all__ = [
    "ActiveDirection",
    "AnalyticModel",
    "InputDomain",
    "LinearFit",
    "RankDeficient",
    "SampleSet",
    "SummaryScatter",
    "TrendMetrics",
    "Underdetermined",
    "ZeroGradient",
    "active_direction",
    "builtin",
    "coordinate_scatter",
    "corner_suggestion",
    "default_sample_count",
    "draw_samples",
    "evaluate_model",
    "fit_linear",
    "importance_weights",
    "read_bounds",
    "summary_projection",
    "to_normalized",
    "to_physical",
]

__version__ = "0.1.0"
