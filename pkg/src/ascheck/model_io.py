"""External model runs over stdin/stdout, and sample CSV persistence.

Protocol for an external model: the program reads one line of ``m``
space-separated decimals (the physical point) from standard input, writes the
scalar output as the first token of the last nonempty line of standard output,
and exits with status 0.
"""

from __future__ import annotations

import csv
import io
import math
import os
import subprocess
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from ascheck.domain import InputDomain, OutOfBounds, to_normalized
from ascheck.sampling import SampleSet


class ModelError(RuntimeError):
    """Failure of a single external model run."""

    def __init__(self, message: str, point):
        self.point = np.asarray(point, dtype=float)
        coords = " ".join(format_number(v) for v in self.point)
        super().__init__(f"{message} (x=[{coords}])")


class NonzeroExit(ModelError):
    def __init__(self, returncode: int, point, stderr: str = ""):
        self.returncode = returncode
        self.stderr = stderr
        tail = stderr.strip().splitlines()[-1:] if stderr else []
        msg = f"model exited with status {returncode}"
        if tail:
            msg += f": {tail[0]}"
        super().__init__(msg, point)


class ModelTimeout(ModelError):
    pass


class ParseFailure(ModelError):
    pass


class NonFinite(ModelError):
    pass


class SchemaError(ValueError):
    pass


class NonFiniteOutput(ValueError):
    def __init__(self, row: int, value: str):
        self.row = row
        super().__init__(f"row {row}: output {value!r} is not finite")


class RowOutOfBounds(OutOfBounds):
    def __init__(self, row: int, detail: str):
        self.row = row
        super().__init__(f"row {row}: {detail}")


def format_number(v: float) -> str:
    """Shortest decimal string that parses back to the same double."""
    return repr(float(v))


@dataclass(frozen=True)
class ModelCommand:
    """External program implementing the model protocol.

    ``timeout`` is per evaluation in seconds (``None`` waits forever);
    ``workers`` bounds concurrent child processes.
    """

    argv: tuple[str, ...]
    timeout: Optional[float] = None
    workers: int = os.cpu_count() or 1

    def __post_init__(self):
        object.__setattr__(self, "argv", tuple(self.argv))
        if not self.argv:
            raise ValueError("model command is empty")
        if self.timeout is not None and not self.timeout > 0:
            raise ValueError("timeout must be positive")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")

    def __call__(self, x) -> float:
        return run_model(self, x)


@dataclass(frozen=True)
class EvaluationRecord:
    x: np.ndarray
    f: float
    seconds: float
    returncode: int


def parse_output(stdout: str, point) -> float:
    lines = [ln for ln in stdout.splitlines() if ln.strip()]
    if not lines:
        raise ParseFailure("model printed nothing", point)
    token = lines[-1].split()[0]
    try:
        value = float(token)
    except ValueError:
        raise ParseFailure(f"cannot parse model output {token!r} as a number", point) from None
    if not math.isfinite(value):
        raise NonFinite(f"model returned {token}", point)
    return value


def evaluate_command(cmd: ModelCommand, x) -> EvaluationRecord:
    x = np.asarray(x, dtype=float)
    line = " ".join(format_number(v) for v in x) + "\n"
    start = time.perf_counter()
    try:
        proc = subprocess.run(
            cmd.argv,
            input=line,
            capture_output=True,
            text=True,
            timeout=cmd.timeout,
        )
    except subprocess.TimeoutExpired:
        raise ModelTimeout(f"model exceeded timeout of {cmd.timeout} s", x) from None
    except OSError as exc:
        raise ModelError(f"cannot start model {cmd.argv[0]!r}: {exc}", x) from exc
    elapsed = time.perf_counter() - start
    if proc.returncode != 0:
        raise NonzeroExit(proc.returncode, x, proc.stderr)
    return EvaluationRecord(x, parse_output(proc.stdout, x), elapsed, proc.returncode)


def run_model(cmd: ModelCommand, x) -> float:
    """Run the external model once at physical point ``x`` and return its output."""
    return evaluate_command(cmd, x).f


def csv_header(d: InputDomain) -> list[str]:
    return list(d.names) + ["f"]


def _default_header(d: InputDomain) -> list[str]:
    return [f"x{i + 1}" for i in range(d.m)] + ["f"]


def format_samples_csv(s: SampleSet) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(csv_header(s.domain))
    for xj, fj in zip(s.x, s.outputs):
        writer.writerow([format_number(v) for v in xj] + [format_number(fj)])
    return buf.getvalue()


def persist_csv(s: SampleSet, path) -> None:
    """Write physical samples and outputs, header ``names...,f``."""
    Path(path).write_text(format_samples_csv(s))


def parse_samples_csv(text: str, d: InputDomain) -> SampleSet:
    rows = list(csv.reader(io.StringIO(text)))
    rows = [r for r in rows if r and any(c.strip() for c in r)]
    if not rows:
        raise SchemaError("sample file is empty")
    header = [c.strip() for c in rows[0]]
    if header not in (csv_header(d), _default_header(d)):
        raise SchemaError(
            f"header {','.join(header)!r} does not match {','.join(csv_header(d))!r}"
        )
    body = rows[1:]
    if not body:
        raise SchemaError("sample file has a header but no rows")
    x = np.empty((len(body), d.m))
    f = np.empty(len(body))
    for j, row in enumerate(body):
        if len(row) != d.m + 1:
            raise SchemaError(f"row {j}: expected {d.m + 1} columns, got {len(row)}")
        try:
            vals = [float(c) for c in row]
        except ValueError:
            raise SchemaError(f"row {j}: non-numeric entry in {row!r}") from None
        if not all(math.isfinite(v) for v in vals[:-1]):
            raise SchemaError(f"row {j}: non-finite coordinate")
        if not math.isfinite(vals[-1]):
            raise NonFiniteOutput(j, row[-1].strip())
        x[j] = vals[:-1]
        f[j] = vals[-1]
    xhat = np.empty_like(x)
    for j in range(x.shape[0]):
        try:
            xhat[j] = to_normalized(d, x[j])
        except OutOfBounds as exc:
            raise RowOutOfBounds(j, str(exc)) from None
    return SampleSet(d, xhat, f, x=x, seed=None)


def ingest_csv(path, d: InputDomain) -> SampleSet:
    """Read a sample CSV written by :func:`persist_csv` (or by hand).

    Raises
    ------
    SchemaError
        Header or column count mismatch, or unparseable entries.
    RowOutOfBounds
        A coordinate lies outside the domain (beyond the clamp slack).
    NonFiniteOutput
        An ``f`` entry is NaN or infinite.
    """
    return parse_samples_csv(Path(path).read_text(), d)


def write_scatter_csv(y: Sequence[float], f: Sequence[float], path) -> None:
    lines = ["y,f"]
    lines += [f"{format_number(a)},{format_number(b)}" for a, b in zip(y, f)]
    Path(path).write_text("\n".join(lines) + "\n")
