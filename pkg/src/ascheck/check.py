"""End-to-end check: sample, evaluate, fit, project, and summarize."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from ascheck.diagnostics import (
    Importance,
    SummaryScatter,
    corner_suggestion,
    importance_weights,
    summary_projection,
    uninformative_components,
)
from ascheck.domain import InputDomain
from ascheck.model_io import format_number, persist_csv, write_scatter_csv
from ascheck.regression import (
    ActiveDirection,
    LinearFit,
    ZeroGradient,
    active_direction,
    angle_degrees,
    fit_linear,
)
from ascheck.sampling import Model, SampleSet, sample_and_evaluate
from ascheck.svg import emit_scatter_svg


@dataclass
class CheckReport:
    samples: SampleSet
    fit: LinearFit
    direction: Optional[ActiveDirection] = None
    zero_gradient: Optional[ZeroGradient] = None
    scatter: Optional[SummaryScatter] = None
    importance: Optional[Importance] = None
    corner_max: Optional[np.ndarray] = None
    corner_min: Optional[np.ndarray] = None
    source: str = ""
    testfn: dict = field(default_factory=dict)
    files: dict = field(default_factory=dict)

    @property
    def domain(self) -> InputDomain:
        return self.samples.domain

    @property
    def has_trend(self) -> bool:
        return self.direction is not None

    def to_dict(self) -> dict:
        d = self.domain
        out = {
            "status": "ok" if self.has_trend else "zero_gradient",
            "source": self.source,
            "domain": {
                "m": d.m,
                "parameters": [
                    {"name": nm, "lower": float(lo), "upper": float(hi)}
                    for nm, lo, hi in zip(d.names, d.lower, d.upper)
                ],
            },
            "n": self.samples.n,
            "seed": self.samples.seed,
            "fit": {
                "intercept": self.fit.intercept,
                "gradient": [float(v) for v in self.fit.gradient],
                "gradient_magnitude": float(np.linalg.norm(self.fit.gradient)),
                "r_squared": self.fit.r_squared,
                "residual_norm": self.fit.residual_norm,
                "condition": self.fit.condition,
            },
        }
        if self.has_trend:
            w = self.direction.w
            out["direction"] = {
                "magnitude": self.direction.magnitude,
                "w": [{"name": nm, "value": float(v)} for nm, v in zip(d.names, w)],
            }
            out["importance"] = [
                {"index": i, "name": d.names[i - 1], "weight": wt}
                for i, wt in self.importance.ranking
            ]
            mt = self.scatter.metrics
            out["metrics"] = {
                "pearson_r": mt.pearson_r,
                "spearman_rho": mt.spearman_rho,
                "monotone_fraction": mt.monotone_fraction,
            }
            out["corners"] = {
                "maximize": [float(v) for v in self.corner_max],
                "minimize": [float(v) for v in self.corner_min],
                "uninformative": uninformative_components(self.direction),
            }
        else:
            out["zero_gradient"] = {
                "magnitude": self.zero_gradient.magnitude,
                "threshold": self.zero_gradient.threshold,
            }
        if self.testfn:
            out["testfn"] = self.testfn
        out["files"] = dict(self.files)
        return out

    def to_text(self) -> str:
        d = self.domain
        width = max(len(nm) for nm in d.names)
        lines = ["Active subspace check", ""]
        if self.source:
            lines.append(f"source      {self.source}")
        lines.append(f"parameters  m = {d.m}")
        for nm, lo, hi in zip(d.names, d.lower, d.upper):
            lines.append(f"  {nm:<{width}}  [{format_number(lo)}, {format_number(hi)}]")
        seed = "n/a (ingested)" if self.samples.seed is None else str(self.samples.seed)
        lines.append(f"samples     N = {self.samples.n}, seed = {seed}")
        lines += [
            "",
            "Linear fit (normalized inputs)",
            f"  intercept           {self.fit.intercept:.10g}",
            f"  gradient magnitude  {np.linalg.norm(self.fit.gradient):.10g}",
            f"  R^2                 {self.fit.r_squared:.6f}",
            f"  residual norm       {self.fit.residual_norm:.6g}",
            f"  condition number    {self.fit.condition:.4g}",
            "",
        ]
        if not self.has_trend:
            lines += [
                "Result: ZeroGradient",
                f"  {self.zero_gradient}",
            ]
        else:
            lines.append("Active direction w")
            for nm, v in zip(d.names, self.direction.w):
                lines.append(f"  {nm:<{width}}  {v: .12f}")
            lines += ["", "Importance ranking (|w_i|)"]
            for rank, (i, wt) in enumerate(self.importance.ranking, start=1):
                lines.append(f"  {rank:>3}. {d.names[i - 1]:<{width}}  {wt:.6f}")
            mt = self.scatter.metrics
            lines += [
                "",
                "Trend metrics on (w'x, f)",
                f"  pearson r           {mt.pearson_r: .6f}",
                f"  spearman rho        {mt.spearman_rho: .6f}",
                f"  monotone fraction   {mt.monotone_fraction:.6f}",
                "",
                "Corner suggestions",
                "  maximize  " + " ".join(format_number(v) for v in self.corner_max),
                "  minimize  " + " ".join(format_number(v) for v in self.corner_min),
            ]
            flat = uninformative_components(self.direction)
            if flat:
                names = ", ".join(d.names[i - 1] for i in flat)
                lines.append(f"  w_i = 0 for {names}; upper bound used in both corners")
        if self.testfn:
            lines += ["", f"Test function {self.testfn['name']}"]
            if "angle_degrees" in self.testfn:
                lines.append(f"  angle(w, known direction) = {self.testfn['angle_degrees']:.6g} deg")
        if self.files:
            lines += ["", "Files"]
            for key, p in self.files.items():
                lines.append(f"  {key:<12} {p}")
        return "\n".join(lines) + "\n"


def analyze(samples: SampleSet, source: str = "") -> CheckReport:
    """Fit, extract the direction and compute diagnostics for an evaluated sample set.

    Raises ``Underdetermined`` / ``RankDeficient``; a zero gradient is recorded
    in the report instead of raised.
    """
    fit = fit_linear(samples)
    report = CheckReport(samples=samples, fit=fit, source=source)
    try:
        direction = active_direction(fit)
    except ZeroGradient as zg:
        report.zero_gradient = zg
        return report
    report.direction = direction
    report.scatter = summary_projection(samples, direction)
    report.importance = importance_weights(direction)
    report.corner_max = corner_suggestion(samples.domain, direction, "maximize")
    report.corner_min = corner_suggestion(samples.domain, direction, "minimize")
    return report


def run_check(
    domain: InputDomain,
    model: Model,
    n: Optional[int] = None,
    seed: int = 0,
    workers: Optional[int] = None,
    source: str = "",
) -> CheckReport:
    samples = sample_and_evaluate(domain, model, n=n, seed=seed, workers=workers)
    return analyze(samples, source=source)


def attach_known_direction(report: CheckReport, name: str, known, coefficients=None) -> None:
    info: dict = {"name": name}
    if known is not None:
        info["known_direction"] = [float(v) for v in known]
        if report.has_trend:
            info["angle_degrees"] = angle_degrees(report.direction.w, known)
    if coefficients is not None:
        info["ridge_coefficients"] = [float(v) for v in coefficients]
    report.testfn = info


def write_outputs(report: CheckReport, out_dir, plot: str = "both") -> None:
    """Write samples.csv, scatter.csv / scatter.svg (per ``plot``), report.txt and report.json."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    files = {"samples": out / "samples.csv"}
    persist_csv(report.samples, files["samples"])
    if report.has_trend:
        if plot in ("csv", "both"):
            files["scatter_csv"] = out / "scatter.csv"
            write_scatter_csv(report.scatter.y, report.scatter.f, files["scatter_csv"])
        if plot in ("svg", "both"):
            files["scatter_svg"] = out / "scatter.svg"
            emit_scatter_svg(report.scatter, files["scatter_svg"])
    files["report_txt"] = out / "report.txt"
    files["report_json"] = out / "report.json"
    report.files = {k: str(v) for k, v in files.items()}
    files["report_txt"].write_text(report.to_text())
    files["report_json"].write_text(json.dumps(report.to_dict(), indent=2) + "\n")
