"""Analytic test models with known ridge structure.

Registered names:

``exp2``
    ``exp(x1 + x2)`` on [-1, 1]^2; true direction (1, 1)/sqrt(2).
``constant`` / ``constant-<m>``
    ``f = 5`` (m = 2 by default); no trend.
``linear-<m>``
    ``c . x`` with ``c`` drawn from the seed; recovered exactly by the fit.
``ridge-exp-<m>``
    ``exp(c . x)`` with a random unit vector ``c``; monotone ridge.
``quartic-bowl-<m>``
    ``(c . x)^2`` with a random unit vector ``c``; symmetric ridge whose linear
    fit has zero gradient in expectation, so the check cannot see it.

All parametric families live on [-1, 1]^m, where physical and normalized
coordinates coincide. Ridge vectors come from :func:`ridge_vector` and depend
only on ``(m, seed)``.
"""

from __future__ import annotations

import math
import re
import stat
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional

import numpy as np

from ascheck.domain import InputDomain


@dataclass(frozen=True)
class AnalyticModel:
    name: str
    domain: InputDomain
    evaluator: Callable[[np.ndarray], float]
    known_direction: Optional[np.ndarray]
    coefficients: Optional[np.ndarray]
    # Python expression in ``x`` (list of floats) and ``c`` used for exported scripts.
    expression: str

    @property
    def m(self) -> int:
        return self.domain.m

    def __call__(self, x) -> float:
        return self.evaluator(np.asarray(x, dtype=float))


def ridge_vector(m: int, seed: int, unit: bool = True) -> np.ndarray:
    """Standard-normal coefficients from a Philox stream keyed by ``(seed, m)``.

    The stream is distinct from the one used to draw samples with the same seed.
    """
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, m, 1])))
    c = rng.standard_normal(m)
    return c / np.linalg.norm(c) if unit else c


def _unit(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    return v / np.linalg.norm(v)


def _exp2() -> AnalyticModel:
    return AnalyticModel(
        name="exp2",
        domain=InputDomain.hypercube(2),
        evaluator=lambda x: math.exp(x[0] + x[1]),
        known_direction=_unit([1.0, 1.0]),
        coefficients=None,
        expression="math.exp(x[0] + x[1])",
    )


def _constant(m: int) -> AnalyticModel:
    return AnalyticModel(
        name="constant" if m == 2 else f"constant-{m}",
        domain=InputDomain.hypercube(m),
        evaluator=lambda x: 5.0,
        known_direction=None,
        coefficients=None,
        expression="5.0",
    )


def _linear(m: int, seed: int) -> AnalyticModel:
    c = ridge_vector(m, seed, unit=False)
    return AnalyticModel(
        name=f"linear-{m}",
        domain=InputDomain.hypercube(m),
        evaluator=lambda x: float(np.dot(c, x)),
        known_direction=_unit(c),
        coefficients=c,
        expression="sum(ci * xi for ci, xi in zip(c, x))",
    )


def _ridge_exp(m: int, seed: int) -> AnalyticModel:
    c = ridge_vector(m, seed)
    return AnalyticModel(
        name=f"ridge-exp-{m}",
        domain=InputDomain.hypercube(m),
        evaluator=lambda x: math.exp(float(np.dot(c, x))),
        known_direction=c,
        coefficients=c,
        expression="math.exp(sum(ci * xi for ci, xi in zip(c, x)))",
    )


def _quartic_bowl(m: int, seed: int) -> AnalyticModel:
    c = ridge_vector(m, seed)
    return AnalyticModel(
        name=f"quartic-bowl-{m}",
        domain=InputDomain.hypercube(m),
        evaluator=lambda x: float(np.dot(c, x)) ** 2,
        known_direction=c,
        coefficients=c,
        expression="sum(ci * xi for ci, xi in zip(c, x)) ** 2",
    )


_FAMILIES = {
    "constant": _constant,
    "linear": _linear,
    "ridge-exp": _ridge_exp,
    "quartic-bowl": _quartic_bowl,
}

NAMES = ("exp2", "constant", "constant-<m>", "linear-<m>", "ridge-exp-<m>", "quartic-bowl-<m>")


def builtin(name: str, seed: int = 0) -> AnalyticModel:
    """Look up a registered model; ``seed`` fixes the ridge vector of parametric families."""
    if name == "exp2":
        return _exp2()
    if name == "constant":
        return _constant(2)
    match = re.fullmatch(r"([a-z-]+?)-(\d+)", name)
    if match and match.group(1) in _FAMILIES:
        m = int(match.group(2))
        if m < 1:
            raise KeyError(f"{name}: dimension must be positive")
        family = match.group(1)
        if family == "constant":
            return _constant(m)
        return _FAMILIES[family](m, seed)
    raise KeyError(f"unknown test function {name!r}; known: {', '.join(NAMES)}")


_SCRIPT = '''#!{python}
"""{name}: reads one line of coordinates on stdin, prints f."""
import math
import sys

c = {coefficients}
x = [float(t) for t in sys.stdin.readline().split()]
if len(x) != {m}:
    sys.exit("expected {m} coordinates, got %d" % len(x))
print(repr(float({expression})))
'''


def script_source(model: AnalyticModel) -> str:
    coeffs = [] if model.coefficients is None else [float(v) for v in model.coefficients]
    return _SCRIPT.format(
        python=sys.executable,
        name=model.name,
        coefficients=repr(coeffs),
        m=model.m,
        expression=model.expression,
    )


def export_script(model: AnalyticModel, path) -> Path:
    """Write ``model`` as an executable script speaking the stdin/stdout model protocol."""
    path = Path(path)
    path.write_text(script_source(model))
    path.chmod(path.stat().st_mode | stat.S_IXUSR | stat.S_IXGRP | stat.S_IXOTH)
    return path
