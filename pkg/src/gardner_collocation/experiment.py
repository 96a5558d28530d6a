"""Run a preset end to end and collect profiles and diagnostics."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .assembly import CoefficientState, integrate, n_steps_for
from .basis import reconstruct
from .diagnostics import DiagnosticsRecord, conserved_quantities, diagnose
from .fitting import fit_initial
from .problems import ExperimentPreset

__all__ = ["ExperimentResult", "run_experiment", "profile_table"]


@dataclass
class ExperimentResult:
    preset: ExperimentPreset
    initial: CoefficientState
    final: CoefficientState
    snapshots: dict
    diagnostics: list = field(default_factory=list)
    invariants0: tuple = ()

    def record_at(self, t: float, tol: float = 1e-9) -> DiagnosticsRecord:
        for rec in self.diagnostics:
            if abs(rec.time - t) <= tol:
                return rec
        raise KeyError(f"no diagnostics recorded at t={t}")


def run_experiment(preset: ExperimentPreset, snapshots=(), diag_every: int = 1,
                   closure: str = "curvature", rule: str = "simpson") -> ExperimentResult:
    """March ``preset`` to its t_end.

    Diagnostics are taken every ``diag_every`` steps, at every snapshot time,
    and at t_end.
    """
    lam = preset.params.lam
    grid = preset.grid
    total = n_steps_for(preset.t_end, preset.dt)
    snap_steps = set()
    for t in snapshots:
        if t < -1e-12 or t > preset.t_end + 1e-9:
            raise ValueError(f"snapshot time {t} outside [0, {preset.t_end}]")
        snap_steps.add(n_steps_for(t, preset.dt))
    s0 = fit_initial(preset.initial, grid, lam, closure)
    q0 = conserved_quantities(s0, preset.params, grid, rule)
    records = []
    counter = {"k": 0}

    def observe(state):
        k = counter["k"]
        counter["k"] += 1
        if k % diag_every == 0 or k == total or k in snap_steps:
            records.append(diagnose(state, preset.params, grid, q0, preset.exact, rule))

    final, snaps = integrate(s0, preset.params, grid, preset.dt, preset.t_end,
                             record_times=tuple(snapshots), callback=observe)
    return ExperimentResult(preset, s0, final, snaps, records, q0)


def profile_table(state: CoefficientState, preset: ExperimentPreset):
    """Columns x, u_numeric, v_numeric, u_exact, error at the grid nodes."""
    grid, lam = preset.grid, preset.params.lam
    x = grid.nodes
    u = reconstruct(state.delta, x, grid, lam)
    v = reconstruct(state.phi, x, grid, lam)
    if preset.exact is None:
        ue = err = None
    else:
        ue = np.asarray(preset.exact(x, state.time), dtype=float)
        err = np.abs(ue - u)
    return {"x": x, "u_numeric": u, "v_numeric": v, "u_exact": ue, "error": err}
