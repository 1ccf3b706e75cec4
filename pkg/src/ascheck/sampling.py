"""Uniform Monte Carlo design on [-1, 1]^m and model evaluation."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from ascheck.domain import DimensionMismatch, InputDomain, to_physical

Model = Callable[[np.ndarray], float]


class ModelEvaluationError(RuntimeError):
    """A model run failed; carries the sample row and the physical point."""

    def __init__(self, row: int, point: np.ndarray, cause: BaseException | str):
        self.row = row
        self.point = np.asarray(point, dtype=float)
        self.cause = cause
        coords = " ".join(repr(float(v)) for v in self.point)
        super().__init__(f"model failed on sample row {row} at x=[{coords}]: {cause}")


@dataclass(frozen=True)
class SampleSet:
    """Normalized design, its physical image, and the model outputs.

    ``xhat`` has shape ``(N, m)``; ``x`` is ``to_physical(domain, xhat)`` unless the
    set was ingested from a file, in which case it holds the coordinates as read.
    ``seed`` is ``None`` for ingested data.
    """

    domain: InputDomain
    xhat: np.ndarray
    outputs: np.ndarray
    x: Optional[np.ndarray] = None
    seed: Optional[int] = None

    def __post_init__(self):
        xhat = np.array(self.xhat, dtype=float)
        if xhat.ndim != 2 or xhat.shape[0] < 1:
            raise ValueError("xhat must be a nonempty (N, m) matrix")
        if xhat.shape[1] != self.domain.m:
            raise DimensionMismatch(f"xhat has {xhat.shape[1]} columns, domain has {self.domain.m}")
        if np.any(np.abs(xhat) > 1.0):
            raise ValueError("normalized samples must lie in [-1, 1]")
        f = np.array(self.outputs, dtype=float).reshape(-1)
        if f.size != xhat.shape[0]:
            raise ValueError(f"{f.size} outputs for {xhat.shape[0]} samples")
        bad = np.flatnonzero(~np.isfinite(f))
        if bad.size:
            raise ValueError(f"non-finite output at row {int(bad[0])}")
        x = to_physical(self.domain, xhat) if self.x is None else np.array(self.x, dtype=float)
        if x.shape != xhat.shape:
            raise DimensionMismatch("physical and normalized sample shapes differ")
        for arr in (xhat, f, x):
            arr.setflags(write=False)
        object.__setattr__(self, "xhat", xhat)
        object.__setattr__(self, "outputs", f)
        object.__setattr__(self, "x", x)

    @property
    def n(self) -> int:
        return int(self.xhat.shape[0])

    @property
    def m(self) -> int:
        return self.domain.m

    def with_outputs(self, outputs) -> "SampleSet":
        return SampleSet(self.domain, self.xhat, outputs, self.x, self.seed)


def default_sample_count(m: int) -> int:
    """Default number of model runs, four per parameter."""
    if m < 1:
        raise ValueError("m must be positive")
    return 4 * m


def make_rng(seed: int) -> np.random.Generator:
    """Philox counter-based generator; same seed gives the same stream everywhere."""
    return np.random.Generator(np.random.Philox(seed))


def draw_samples(m: int, n: int, seed: int) -> np.ndarray:
    """Draw an ``(n, m)`` matrix with entries i.i.d. uniform on [-1, 1]."""
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    return make_rng(seed).uniform(-1.0, 1.0, size=(n, m))


def _evaluate_row(model: Model, row: int, point: np.ndarray) -> float:
    try:
        value = float(model(point))
    except ModelEvaluationError:
        raise
    except Exception as exc:
        raise ModelEvaluationError(row, point, exc) from exc
    if not np.isfinite(value):
        raise ModelEvaluationError(row, point, f"non-finite output {value!r}")
    return value


def evaluate_model(
    d: InputDomain,
    xhat,
    model: Model,
    workers: Optional[int] = None,
    seed: Optional[int] = None,
) -> SampleSet:
    """Evaluate ``model`` at the physical image of every row of ``xhat``.

    Rows are dispatched to at most ``workers`` threads (default: CPU count) and
    assembled in row order. The first failing row, by index, is reported.
    """
    xhat = np.asarray(xhat, dtype=float)
    x = to_physical(d, xhat)
    workers = workers or os.cpu_count() or 1
    if workers < 1:
        raise ValueError("workers must be >= 1")
    n = x.shape[0]
    if workers == 1 or n == 1:
        outputs = [_evaluate_row(model, j, x[j].copy()) for j in range(n)]
    else:
        with ThreadPoolExecutor(max_workers=min(workers, n)) as pool:
            futures = [pool.submit(_evaluate_row, model, j, x[j].copy()) for j in range(n)]
            try:
                outputs = [fut.result() for fut in futures]
            except ModelEvaluationError:
                for fut in futures:
                    fut.cancel()
                raise
    return SampleSet(d, xhat, np.array(outputs), x, seed)


def sample_and_evaluate(
    d: InputDomain,
    model: Model,
    n: Optional[int] = None,
    seed: int = 0,
    workers: Optional[int] = None,
) -> SampleSet:
    n = default_sample_count(d.m) if n is None else n
    return evaluate_model(d, draw_samples(d.m, n, seed), model, workers=workers, seed=seed)
