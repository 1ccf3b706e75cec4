"""Least-squares linear fit in normalized coordinates and the active direction."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ascheck.sampling import SampleSet

# Design matrices with a larger 2-norm condition number are rejected.
MAX_CONDITION = 1e12


class FitError(ValueError):
    pass


class Underdetermined(FitError):
    """Fewer samples than unknowns (N < m + 1)."""


class RankDeficient(FitError):
    """Design matrix [1 | xhat] is numerically rank deficient."""


class ZeroGradient(ValueError):
    """Fitted gradient is negligible: no linear trend was detected.

    This is a diagnostic outcome, not a failure of the check.
    """

    def __init__(self, magnitude: float, threshold: float):
        self.magnitude = magnitude
        self.threshold = threshold
        super().__init__(
            f"fitted gradient norm {magnitude:.3e} <= {threshold:.3e}; no linear trend detected"
        )


@dataclass(frozen=True)
class LinearFit:
    """Coefficients of ``f ~ intercept + gradient . xhat`` with fit diagnostics."""

    intercept: float
    gradient: np.ndarray
    residual_norm: float
    r_squared: float
    condition: float
    n: int
    output_norm: float

    @property
    def coefficients(self) -> np.ndarray:
        """Full coefficient vector ``[intercept, gradient...]``."""
        return np.concatenate([[self.intercept], self.gradient])

    @property
    def m(self) -> int:
        return int(self.gradient.size)


@dataclass(frozen=True)
class ActiveDirection:
    """Unit vector ``w`` along the fitted gradient, and the gradient norm."""

    w: np.ndarray
    magnitude: float

    @property
    def m(self) -> int:
        return int(self.w.size)


def design_matrix(xhat: np.ndarray) -> np.ndarray:
    xhat = np.asarray(xhat, dtype=float)
    return np.hstack([np.ones((xhat.shape[0], 1)), xhat])


def solve_least_squares(xhat, f) -> tuple[np.ndarray, float, float]:
    """Minimize ``||[1 | xhat] u - f||_2`` by an SVD-based solve.

    Returns the minimizer, the residual norm and the condition number of the
    design matrix.
    """
    X = design_matrix(xhat)
    f = np.asarray(f, dtype=float)
    n, p = X.shape
    if n < p:
        raise Underdetermined(
            f"{n} samples cannot determine {p} coefficients; need at least {p} (m + 1)"
        )
    u, _, _, sv = np.linalg.lstsq(X, f, rcond=None)
    cond = float(sv[0] / sv[-1]) if sv[-1] > 0 else np.inf
    if not cond <= MAX_CONDITION:
        raise RankDeficient(
            f"design matrix condition number {cond:.3e} exceeds {MAX_CONDITION:.0e}; "
            "add samples or remove redundant parameters"
        )
    residual = float(np.linalg.norm(X @ u - f))
    return u, residual, cond


def fit_linear(s: SampleSet) -> LinearFit:
    """Fit the linear model to a sample set.

    Raises
    ------
    Underdetermined
        If ``N < m + 1``.
    RankDeficient
        If the condition number of ``[1 | xhat]`` exceeds ``MAX_CONDITION``.
    """
    f = s.outputs
    u, residual, cond = solve_least_squares(s.xhat, f)
    ss_tot = float(np.sum((f - f.mean()) ** 2))
    if ss_tot == 0.0:
        r2 = 1.0
    else:
        r2 = float(min(1.0, max(0.0, 1.0 - residual**2 / ss_tot)))
    gradient = u[1:].copy()
    gradient.setflags(write=False)
    return LinearFit(
        intercept=float(u[0]),
        gradient=gradient,
        residual_norm=residual,
        r_squared=r2,
        condition=cond,
        n=s.n,
        output_norm=float(np.linalg.norm(f)),
    )


def zero_gradient_threshold(fit: LinearFit) -> float:
    return 1e-12 * max(1.0, fit.output_norm / np.sqrt(fit.n))


def active_direction(fit: LinearFit) -> ActiveDirection:
    """Normalize the fitted gradient. The sign is kept: ``w`` points uphill.

    Raises
    ------
    ZeroGradient
        If the gradient norm does not exceed the scale-aware floor.
    """
    magnitude = float(np.linalg.norm(fit.gradient))
    threshold = zero_gradient_threshold(fit)
    if not magnitude > threshold:
        raise ZeroGradient(magnitude, threshold)
    w = fit.gradient / magnitude
    w.setflags(write=False)
    return ActiveDirection(w=w, magnitude=magnitude)


def angle_degrees(a, b) -> float:
    """Angle between two vectors, accurate for nearly parallel inputs."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    a = a / np.linalg.norm(a)
    b = b / np.linalg.norm(b)
    return float(np.degrees(2.0 * np.arctan2(np.linalg.norm(a - b), np.linalg.norm(a + b))))
