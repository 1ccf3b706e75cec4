"""Input parameter box and the affine map between [-1, 1]^m and physical ranges."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

# Normalized coordinates may overshoot [-1, 1] by this much before being
# rejected; smaller overshoots are clamped.
CLAMP_SLACK = 1e-9


class DomainError(ValueError):
    """Invalid bounds, or a point that does not belong to the domain."""


class DimensionMismatch(DomainError):
    pass


class OutOfBounds(DomainError):
    pass


@dataclass(frozen=True)
class InputDomain:
    """Hyper-rectangle of admissible parameter values.

    Parameters
    ----------
    lower, upper : sequence of float
        Physical lower and upper bound of every parameter. ``lower[i] < upper[i]``
        is required for each ``i``.
    names : sequence of str, optional
        Parameter labels. Defaults to ``x1, ..., xm``.
    """

    lower: np.ndarray
    upper: np.ndarray
    names: tuple[str, ...] = field(default=())

    def __post_init__(self):
        lower = np.array(self.lower, dtype=float).reshape(-1)
        upper = np.array(self.upper, dtype=float).reshape(-1)
        if lower.size == 0:
            raise DomainError("domain needs at least one parameter")
        if lower.shape != upper.shape:
            raise DimensionMismatch(
                f"{lower.size} lower bounds but {upper.size} upper bounds"
            )
        if not (np.all(np.isfinite(lower)) and np.all(np.isfinite(upper))):
            raise DomainError("bounds must be finite")
        bad = np.flatnonzero(~(lower < upper))
        if bad.size:
            i = int(bad[0])
            raise DomainError(
                f"parameter {i + 1}: lower bound {lower[i]!r} is not below upper bound {upper[i]!r}"
            )
        names = tuple(self.names) if self.names else tuple(f"x{i + 1}" for i in range(lower.size))
        if len(names) != lower.size:
            raise DimensionMismatch(f"{len(names)} names for {lower.size} parameters")
        if len(set(names)) != len(names):
            raise DomainError("parameter names must be unique")
        lower.setflags(write=False)
        upper.setflags(write=False)
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)
        object.__setattr__(self, "names", names)

    @property
    def m(self) -> int:
        return int(self.lower.size)

    @classmethod
    def hypercube(cls, m: int) -> "InputDomain":
        """The normalized domain [-1, 1]^m itself."""
        return cls(-np.ones(m), np.ones(m))

    def __eq__(self, other):
        if not isinstance(other, InputDomain):
            return NotImplemented
        return (
            self.names == other.names
            and np.array_equal(self.lower, other.lower)
            and np.array_equal(self.upper, other.upper)
        )

    def __hash__(self):
        return hash((self.names, self.lower.tobytes(), self.upper.tobytes()))


def _check_dim(d: InputDomain, pts: np.ndarray) -> None:
    if pts.shape[-1] != d.m:
        raise DimensionMismatch(f"point has {pts.shape[-1]} coordinates, domain has {d.m}")


def to_physical(d: InputDomain, xhat) -> np.ndarray:
    """Map normalized coordinates to physical ones.

    Accepts a single point of shape ``(m,)`` or a stack of shape ``(N, m)``.
    Endpoints ``xhat = +/-1`` land exactly on the bounds.
    """
    xhat = np.asarray(xhat, dtype=float)
    _check_dim(d, xhat)
    x = 0.5 * ((d.upper - d.lower) * xhat + (d.upper + d.lower))
    x = np.where(xhat == 1.0, d.upper, x)
    x = np.where(xhat == -1.0, d.lower, x)
    return np.clip(x, d.lower, d.upper)


def to_normalized(d: InputDomain, x) -> np.ndarray:
    """Map physical coordinates into [-1, 1]^m (inverse of :func:`to_physical`).

    Raises
    ------
    OutOfBounds
        If some component lies outside its range by more than the clamp slack.
    """
    x = np.asarray(x, dtype=float)
    _check_dim(d, x)
    xhat = (2.0 * x - (d.upper + d.lower)) / (d.upper - d.lower)
    xhat = np.where(x == d.upper, 1.0, xhat)
    xhat = np.where(x == d.lower, -1.0, xhat)
    over = ~(np.abs(xhat) <= 1.0 + CLAMP_SLACK)
    if np.any(over):
        idx = np.argwhere(over)[0]
        i = int(idx[-1])
        raise OutOfBounds(
            f"{d.names[i]}={x[tuple(idx)]!r} outside [{d.lower[i]!r}, {d.upper[i]!r}]"
        )
    return np.clip(xhat, -1.0, 1.0)


def parse_bounds(text: str) -> InputDomain:
    """Parse bounds text: one ``name lower upper`` line per parameter, ``#`` comments."""
    names, lower, upper = [], [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise DomainError(f"line {lineno}: expected 'name lower upper', got {raw.strip()!r}")
        try:
            lo, hi = float(parts[1]), float(parts[2])
        except ValueError:
            raise DomainError(f"line {lineno}: bounds are not numbers: {raw.strip()!r}") from None
        names.append(parts[0])
        lower.append(lo)
        upper.append(hi)
    if not names:
        raise DomainError("bounds file lists no parameters")
    return InputDomain(lower, upper, names)


def read_bounds(path) -> InputDomain:
    return parse_bounds(Path(path).read_text())


def format_bounds(d: InputDomain) -> str:
    lines = [
        f"{name} {lo:.17g} {hi:.17g}"
        for name, lo, hi in zip(d.names, d.lower, d.upper)
    ]
    return "\n".join(lines) + "\n"


def write_bounds(d: InputDomain, path) -> None:
    Path(path).write_text(format_bounds(d))


def corners(d: InputDomain) -> np.ndarray:
    """All 2^m vertices of the box, in physical coordinates."""
    signs = np.array(np.meshgrid(*([[-1.0, 1.0]] * d.m), indexing="ij")).reshape(d.m, -1).T
    return to_physical(d, signs)
