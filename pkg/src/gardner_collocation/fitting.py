"""Initial spline coefficients from the initial profile.

Nodal interpolation at x_0..x_N is closed with the same ghost relations the
stepper uses (see ``assembly.CLOSURES``), giving one tridiagonal system for
delta and one for phi.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .assembly import CLOSURES, CoefficientState, apply_neumann, solve_band
from .basis import GridSpec, nodal_weights

__all__ = ["InitialProfile", "fit_initial", "fit_nodal", "fit_matrix_band"]


@dataclass(frozen=True)
class InitialProfile:
    f: Callable[[np.ndarray], np.ndarray]
    fx: Callable[[np.ndarray], np.ndarray]


def fit_matrix_band(n: int, lam: float, closure: str = "curvature") -> np.ndarray:
    """Interpolation matrix on nodes 0..N in (1, 1) band storage, ghosts folded in."""
    w = nodal_weights(lam, 1.0)
    w_edge, w_next = CLOSURES[closure]
    ab = np.zeros((3, n + 1))
    ab[0, 1:] = w.alpha1  # super-diagonal
    ab[1, :] = w.alpha2
    ab[2, :-1] = w.alpha1  # sub-diagonal
    ab[1, 0] += w_edge * w.alpha1
    ab[0, 1] += w_next * w.alpha1
    ab[1, n] += w_edge * w.alpha1
    ab[2, n - 1] += w_next * w.alpha1
    return ab


def fit_nodal(values, grid: GridSpec, lam: float, closure: str = "curvature") -> np.ndarray:
    """Coefficients (indices -1..N+1) whose spline interpolates ``values`` at the nodes."""
    n = grid.n_intervals
    values = np.asarray(values, dtype=float)
    if values.shape != (n + 1,):
        raise ValueError(f"expected {n + 1} nodal values, got shape {values.shape}")
    c = np.empty(n + 3)
    c[1:-1] = solve_band(fit_matrix_band(n, lam, closure), 1, 1, values)
    w_edge, w_next = CLOSURES[closure]
    c[0] = w_edge * c[1] + w_next * c[2]
    c[-1] = w_edge * c[-2] + w_next * c[-3]
    return c


def fit_initial(profile: InitialProfile, grid: GridSpec, lam: float,
                closure: str = "curvature") -> CoefficientState:
    x = grid.nodes
    f = np.asarray(profile.f(x), dtype=float)
    fx = np.asarray(profile.fx(x), dtype=float)
    if not (np.all(np.isfinite(f)) and np.all(np.isfinite(fx))):
        raise ValueError("initial profile is not finite on the grid")
    state = CoefficientState(
        fit_nodal(f, grid, lam, closure), fit_nodal(fx, grid, lam, closure), 0.0, closure
    )
    return apply_neumann(state)
