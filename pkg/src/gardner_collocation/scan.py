"""Coarse-to-fine search for the extension parameter minimising the L-inf error."""
from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .assembly import integrate
from .diagnostics import linf_error
from .fitting import fit_initial
from .problems import ExperimentPreset

__all__ = ["ScanSpec", "ScanResult", "scan", "error_at", "objective_time_for", "write_trace_csv"]


@dataclass(frozen=True)
class ScanSpec:
    lo: float = -1.0
    hi: float = 1.0
    coarse_step: float = 0.05
    refine_rounds: int = 5
    objective_time: float | None = None  # None: the preset's first report time
    min_step: float = 1e-6

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty scan interval [{self.lo}, {self.hi}]")
        if not self.coarse_step > 0:
            raise ValueError("coarse_step must be positive")
        if self.refine_rounds < 0:
            raise ValueError("refine_rounds must be >= 0")


@dataclass
class ScanResult:
    lambda_star: float
    linf_star: float
    trace: list  # (lambda, linf) in evaluation order
    objective_time: float = float("nan")


def error_at(preset: ExperimentPreset, lam: float, t: float, closure: str = "curvature") -> float:
    """Fit, march to time t with extension parameter lam, return the nodal L-inf error."""
    if preset.exact is None:
        raise ValueError(f"preset {preset.name!r} has no exact solution to score against")
    params = preset.params.with_lambda(lam)
    s0 = fit_initial(preset.initial, preset.grid, lam, closure)
    final, _ = integrate(s0, params, preset.grid, preset.dt, t)
    return linf_error(final, preset.exact, preset.grid, lam)


def _coarse_grid(spec):
    if spec.lo == spec.hi:
        return [float(spec.lo)]
    k = int(np.floor((spec.hi - spec.lo) / spec.coarse_step + 1e-9))
    pts = list(spec.lo + spec.coarse_step * np.arange(k + 1)) + [spec.hi]
    if spec.lo <= 0.0 <= spec.hi:
        pts.append(0.0)
    return pts


def scan(preset: ExperimentPreset, spec: ScanSpec = ScanSpec(), map_fn=map,
         closure: str = "curvature") -> ScanResult:
    """Minimise L-inf(objective_time) over lambda in [spec.lo, spec.hi].

    By default the objective is the error at the preset's first report time
    (t_end when it has none).

    The coarse grid always contains 0 when it lies in the interval.  Each
    refinement round evaluates 21 points spaced step/10 around the incumbent.
    ``map_fn`` may be an executor's ``map`` to evaluate candidates concurrently;
    the minimum is taken lexicographically on (linf, lambda) so ties resolve
    the same way regardless of evaluation order.
    """
    if preset.exact is None:
        raise ValueError(f"preset {preset.name!r} has no exact solution to score against")
    t_obj = objective_time_for(preset, spec)
    seen = {}
    trace = []

    def evaluate(cands):
        fresh = []
        for lam in cands:
            key = round(float(lam), 12)
            if key not in seen and spec.lo <= key <= spec.hi:
                seen[key] = None
                fresh.append(key)
        errs = list(map_fn(_Objective(preset, t_obj, closure), fresh))
        for lam, err in zip(fresh, errs):
            seen[lam] = err
            trace.append((lam, err))

    def best():
        return min(((e, l) for l, e in seen.items()), key=lambda p: (p[0], p[1]))

    evaluate(_coarse_grid(spec))
    step = spec.coarse_step
    for _ in range(spec.refine_rounds):
        if step <= spec.min_step or spec.lo == spec.hi:
            break
        step /= 10.0
        _, centre = best()
        evaluate(centre + step * np.arange(-10, 11))
    err, lam = best()
    return ScanResult(lam, err, trace, t_obj)


def objective_time_for(preset: ExperimentPreset, spec: ScanSpec) -> float:
    if spec.objective_time is not None:
        return float(spec.objective_time)
    return float(preset.report_times[0]) if preset.report_times else float(preset.t_end)


class _Objective:
    """Picklable callable so candidates can go through a process pool."""

    def __init__(self, preset, t, closure):
        self.preset, self.t, self.closure = preset, t, closure

    def __call__(self, lam):
        return error_at(self.preset, lam, self.t, self.closure)


def write_trace_csv(result: ScanResult, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["lambda", "linf"])
        for lam, err in sorted(result.trace):
            w.writerow([f"{lam:.17g}", f"{err:.17g}"])
