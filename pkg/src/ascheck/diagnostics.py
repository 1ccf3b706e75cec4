"""Summary scatter, coordinate scatters, importance ranking and corner suggestion."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Union

import numpy as np
from scipy.stats import rankdata

from ascheck.domain import DimensionMismatch, InputDomain
from ascheck.regression import ActiveDirection
from ascheck.sampling import SampleSet


@dataclass(frozen=True)
class TrendMetrics:
    """Numeric companions to the visual judgment of a scatter.

    ``pearson_r`` and ``spearman_rho`` are reported as 0 when either variable is
    constant; ``monotone_fraction`` is the share of neighbouring pairs (sorted by
    ``y``) whose ``f`` does not decrease, and 1 for fewer than two points.
    """

    pearson_r: float
    spearman_rho: float
    monotone_fraction: float


@dataclass(frozen=True)
class SummaryScatter:
    """Pairs ``(y_j, f_j)`` with ``y_j = w . xhat_j``.

    ``source`` is the :class:`ActiveDirection` used, or the 1-based coordinate
    index for a coordinate scatter.
    """

    y: np.ndarray
    f: np.ndarray
    w: np.ndarray
    source: Union[ActiveDirection, int]
    metrics: TrendMetrics

    @property
    def n(self) -> int:
        return int(self.y.size)


def _pearson(a: np.ndarray, b: np.ndarray) -> float:
    da = a - a.mean()
    db = b - b.mean()
    na = np.sqrt(np.dot(da, da))
    nb = np.sqrt(np.dot(db, db))
    if na == 0.0 or nb == 0.0:
        return 0.0
    return float(np.clip(np.dot(da, db) / (na * nb), -1.0, 1.0))


def trend_metrics(y, f) -> TrendMetrics:
    y = np.asarray(y, dtype=float)
    f = np.asarray(f, dtype=float)
    pearson = _pearson(y, f)
    spearman = _pearson(rankdata(y), rankdata(f)) if y.size > 1 else 0.0
    if y.size < 2:
        mono = 1.0
    else:
        order = np.argsort(y, kind="stable")
        mono = float(np.mean(np.diff(f[order]) >= 0.0))
    return TrendMetrics(pearson, spearman, mono)


def _project(s: SampleSet, w: np.ndarray, source) -> SummaryScatter:
    y = s.xhat @ w
    f = s.outputs.copy()
    return SummaryScatter(y=y, f=f, w=w, source=source, metrics=trend_metrics(y, f))


def summary_projection(s: SampleSet, direction: ActiveDirection) -> SummaryScatter:
    """Project every normalized sample onto the active direction."""
    w = np.asarray(direction.w, dtype=float)
    if w.size != s.m:
        raise DimensionMismatch(f"direction has {w.size} components, samples have {s.m}")
    return _project(s, w, direction)


def coordinate_scatter(s: SampleSet, i: int) -> SummaryScatter:
    """Scatter of ``f`` against the ``i``-th normalized input (1-based)."""
    if not 1 <= i <= s.m:
        raise IndexError(f"coordinate index {i} outside 1..{s.m}")
    w = np.zeros(s.m)
    w[i - 1] = 1.0
    return _project(s, w, i)


@dataclass(frozen=True)
class Importance:
    """Ranking of parameters by ``|w_i|``; ``ranking`` holds 1-based indices."""

    ranking: list[tuple[int, float]]
    signed: np.ndarray


def importance_weights(direction: ActiveDirection) -> Importance:
    w = np.asarray(direction.w, dtype=float)
    weights = np.abs(w)
    # lexsort: last key is primary
    order = np.lexsort((np.arange(w.size), -weights))
    ranking = [(int(k) + 1, float(weights[k])) for k in order]
    return Importance(ranking=ranking, signed=w.copy())


def corner_suggestion(
    d: InputDomain,
    direction: ActiveDirection,
    sense: Literal["maximize", "minimize"] = "maximize",
) -> np.ndarray:
    """Vertex of the box aligned with ``w`` (or against it, for ``minimize``).

    Components with ``w_i == 0`` go to the upper bound for either sense, so the
    two suggestions differ exactly where ``w`` is nonzero.
    """
    w = np.asarray(direction.w, dtype=float)
    if w.size != d.m:
        raise DimensionMismatch(f"direction has {w.size} components, domain has {d.m}")
    if sense == "maximize":
        return np.where(w >= 0.0, d.upper, d.lower)
    if sense == "minimize":
        return np.where(w > 0.0, d.lower, d.upper)
    raise ValueError(f"sense must be 'maximize' or 'minimize', not {sense!r}")


def uninformative_components(direction: ActiveDirection) -> list[int]:
    """1-based indices where ``w_i == 0`` and the corner rule fell back to a convention."""
    return [int(i) + 1 for i in np.flatnonzero(np.asarray(direction.w) == 0.0)]


