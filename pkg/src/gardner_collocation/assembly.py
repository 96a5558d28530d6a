"""Linearized Crank-Nicolson collocation system for the split Gardner equation.

The third-order equation is split as

    u_t + (mu1 u + mu2 u^2) u_x + mu3 v_xx + epsilon = 0,    v - u_x = 0,

and both unknowns are expanded in extended cubic B-splines.  Each node x_m
contributes two rows to a banded system in the interleaved unknowns
(delta_0, phi_0, delta_1, phi_1, ..., delta_N, phi_N).  The ghost
coefficients j = -1 and j = N+1 are eliminated with the homogeneous boundary
conditions before solving.

Two ghost closures are available.  ``"curvature"`` (the default) uses
U_xx = V_xx = 0 at both ends, i.e. c_{-1} = 2c_0 - c_1 and
c_{N+1} = 2c_N - c_{N-1}.  ``"slope"`` uses U_x = V_x = 0, i.e.
c_{-1} = c_1 and c_{N+1} = c_{N-1}.  With the slope closure the
odd-even coefficient mode (-1)^j is a defective steady mode of the linear
step operator and grows secularly once the solution moves; the curvature
closure does not have that mode.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import NamedTuple

import numpy as np
from scipy.linalg import lapack

from .basis import GridSpec, NodalWeights, nodal_weights

__all__ = [
    "PhysicsParams",
    "CoefficientState",
    "BandedSystem",
    "LocalizedNonlinearity",
    "NuCoefficients",
    "SolverError",
    "compute_kl",
    "nu_coefficients",
    "assemble",
    "banded_solve",
    "solve_band",
    "band_matvec",
    "band_to_dense",
    "apply_neumann",
    "CLOSURES",
    "step",
    "integrate",
    "n_steps_for",
]

KL = KU = 3  # half-bandwidths of the interleaved two-equation system

PIVOT_FLOOR = 1e-14

# ghost = w_edge * c_edge + w_next * c_next, per boundary closure
CLOSURES = {"curvature": (2.0, -1.0), "slope": (0.0, 1.0)}


class SolverError(RuntimeError):
    """Raised when the banded factorisation meets a (near) zero pivot."""

    def __init__(self, message, row=None):
        super().__init__(message)
        self.row = row


@dataclass(frozen=True)
class PhysicsParams:
    mu1: float
    mu2: float
    mu3: float
    epsilon: float = 0.0
    lam: float = 0.0

    def __post_init__(self):
        vals = (self.mu1, self.mu2, self.mu3, self.epsilon, self.lam)
        if not all(np.isfinite(v) for v in vals):
            raise ValueError(f"non-finite physics parameter in {self}")

    def with_lambda(self, lam: float) -> "PhysicsParams":
        return replace(self, lam=float(lam))


@dataclass
class CoefficientState:
    """Spline coefficients for U (delta) and V (phi), indices -1..N+1."""

    delta: np.ndarray
    phi: np.ndarray
    time: float = 0.0
    closure: str = "curvature"

    def __post_init__(self):
        self.delta = np.asarray(self.delta, dtype=float)
        self.phi = np.asarray(self.phi, dtype=float)
        if self.delta.shape != self.phi.shape or self.delta.ndim != 1:
            raise ValueError("delta and phi must be 1-d arrays of equal length")
        if self.closure not in CLOSURES:
            raise ValueError(f"unknown closure {self.closure!r}; choose from {sorted(CLOSURES)}")

    @property
    def n_intervals(self) -> int:
        return self.delta.size - 3

    @classmethod
    def zeros(cls, grid: GridSpec, time: float = 0.0, closure: str = "curvature") -> "CoefficientState":
        n = grid.n_intervals + 3
        return cls(np.zeros(n), np.zeros(n), time, closure)

    def unknowns(self) -> np.ndarray:
        """Interleaved vector (delta_0, phi_0, ..., delta_N, phi_N)."""
        x = np.empty(2 * (self.delta.size - 2))
        x[0::2] = self.delta[1:-1]
        x[1::2] = self.phi[1:-1]
        return x

    @classmethod
    def from_unknowns(cls, x: np.ndarray, time: float, closure: str = "curvature") -> "CoefficientState":
        delta = np.empty(x.size // 2 + 2)
        phi = np.empty_like(delta)
        delta[1:-1] = x[0::2]
        phi[1:-1] = x[1::2]
        return apply_neumann(cls(delta, phi, time, closure))


def apply_neumann(state: CoefficientState) -> CoefficientState:
    """Overwrite the ghost coefficients from the boundary closure (in place)."""
    w_edge, w_next = CLOSURES[state.closure]
    for c in (state.delta, state.phi):
        c[0] = w_edge * c[1] + w_next * c[2]
        c[-1] = w_edge * c[-2] + w_next * c[-3]
    return state


@dataclass(frozen=True)
class LocalizedNonlinearity:
    """Per-node frozen values: K = U(x_m), L = V(x_m) at time level n."""

    K: np.ndarray
    L: np.ndarray


def compute_kl(state: CoefficientState, weights: NodalWeights) -> LocalizedNonlinearity:
    a1, a2 = weights.alpha1, weights.alpha2
    d, p = state.delta, state.phi
    K = a1 * d[:-2] + a2 * d[1:-1] + a1 * d[2:]
    L = a1 * p[:-2] + a2 * p[1:-1] + a1 * p[2:]
    return LocalizedNonlinearity(K, L)


class NuCoefficients(NamedTuple):
    """Row coefficients of the first collocation equation.

    nu1, nu3, nu5 multiply delta_{m-1}, delta_m, delta_{m+1} and nu2, nu4 the
    phi neighbours on the new level; nu6, nu7 are the old-level delta weights.
    """

    nu1: np.ndarray
    nu2: float
    nu3: np.ndarray
    nu4: float
    nu5: np.ndarray
    nu6: np.ndarray
    nu7: np.ndarray


def nu_coefficients(kl: LocalizedNonlinearity, params: PhysicsParams,
                    weights: NodalWeights, dt: float) -> NuCoefficients:
    if not dt > 0:
        raise ValueError(f"time step must be positive, got {dt}")
    K, L = np.asarray(kl.K, dtype=float), np.asarray(kl.L, dtype=float)
    mu1, mu2, mu3 = params.mu1, params.mu2, params.mu3
    w = weights
    reaction = 2.0 / dt + mu1 * L + 2.0 * mu2 * K * L
    advection = mu1 * K + mu2 * K * K
    old = 2.0 / dt + mu2 * K * L
    return NuCoefficients(
        nu1=reaction * w.alpha1 + advection * w.beta1,
        nu2=mu3 * w.gamma1,
        nu3=reaction * w.alpha2,
        nu4=mu3 * w.gamma2,
        nu5=reaction * w.alpha1 - advection * w.beta1,
        nu6=old * w.alpha1,
        nu7=old * w.alpha2,
    )


@dataclass
class BandedSystem:
    """A x^{n+1} = B x^n + f in LAPACK band storage (ab[KU + i - j, j] = A[i, j])."""

    lhs: np.ndarray
    rhs_matrix: np.ndarray
    rhs_forcing: np.ndarray
    kl: int = field(default=KL)
    ku: int = field(default=KU)

    @property
    def size(self) -> int:
        return self.lhs.shape[1]

    def lhs_dense(self) -> np.ndarray:
        return band_to_dense(self.lhs, self.kl, self.ku)

    def rhs_dense(self) -> np.ndarray:
        return band_to_dense(self.rhs_matrix, self.kl, self.ku)


def band_to_dense(ab, kl, ku):
    n = ab.shape[1]
    A = np.zeros((n, n))
    for d in range(-kl, ku + 1):  # d = j - i
        diag = ab[ku - d, max(d, 0):n + min(d, 0)]
        A += np.diag(diag, d)
    return A


def band_matvec(ab, kl, ku, x):
    n = ab.shape[1]
    y = np.zeros(n)
    for d in range(-kl, ku + 1):
        if d >= 0:
            y[:n - d] += ab[ku - d, d:] * x[d:]
        else:
            y[-d:] += ab[ku - d, :n + d] * x[:n + d]
    return y


# (equation, spline offset, unknown) for the eleven nonzero entries of a node's
# two rows; equation 0 is the PDE row, 1 the v = u_x row; unknown 0 = delta, 1 = phi
_TERMS = (
    (0, -1, 0), (0, -1, 1), (0, 0, 0), (0, 0, 1), (0, 1, 0), (0, 1, 1),
    (1, -1, 0), (1, -1, 1), (1, 0, 1), (1, 1, 0), (1, 1, 1),
)


@lru_cache(maxsize=32)
def _pattern(n, closure):
    """Flat band positions and fold weights for every (term, node) entry."""
    w_edge, w_next = CLOSURES[closure]
    size = 2 * (n + 1)
    m = np.arange(n + 1)
    src, dst, wt = [], [], []
    for t, (eq, off, unk) in enumerate(_TERMS):
        row = 2 * m + eq
        k = m + off
        pieces = [(k, np.ones(n + 1))]
        left, right = k < 0, k > n
        if left.any() or right.any():
            k0 = np.where(left, 0, np.where(right, n, k))
            k1 = np.where(left, 1, np.where(right, n - 1, k))
            ghost = left | right
            pieces = [(k0, np.where(ghost, w_edge, 1.0)), (k1, np.where(ghost, w_next, 0.0))]
        for kk, ww in pieces:
            col = 2 * kk + unk
            src.append(t * (n + 1) + m)
            dst.append((KU + row - col) * size + col)
            wt.append(ww)
    return np.concatenate(src), np.concatenate(dst), np.concatenate(wt)


def _band_from_terms(values, n, closure):
    src, dst, wt = _pattern(n, closure)
    size = 2 * (n + 1)
    flat = np.bincount(dst, weights=values.ravel()[src] * wt, minlength=(KL + KU + 1) * size)
    return flat.reshape(KL + KU + 1, size)


def assemble(state: CoefficientState, params: PhysicsParams, grid: GridSpec,
             dt: float) -> BandedSystem:
    n = grid.n_intervals
    if state.delta.size != n + 3:
        raise ValueError(f"state has {state.delta.size} coefficients, grid needs {n + 3}")
    w = nodal_weights(params.lam, grid.h)
    nu = nu_coefficients(compute_kl(state, w), params, w, dt)
    one = np.ones(n + 1)
    lhs = np.array([
        nu.nu1, nu.nu2 * one, nu.nu3, nu.nu4 * one, nu.nu5, nu.nu2 * one,
        -w.beta1 * one, w.alpha1 * one, w.alpha2 * one, w.beta1 * one, w.alpha1 * one,
    ])
    rhs = np.array([
        nu.nu6, -nu.nu2 * one, nu.nu7, -nu.nu4 * one, nu.nu6, -nu.nu2 * one,
        w.beta1 * one, -w.alpha1 * one, -w.alpha2 * one, -w.beta1 * one, -w.alpha1 * one,
    ])
    forcing = np.zeros(2 * (n + 1))
    forcing[0::2] = -2.0 * params.epsilon
    return BandedSystem(
        _band_from_terms(lhs, n, state.closure),
        _band_from_terms(rhs, n, state.closure),
        forcing,
    )


def solve_band(ab, kl, ku, rhs):
    """Solve a banded system by LU with partial pivoting (LAPACK gbtrf/gbtrs)."""
    n = ab.shape[1]
    work = np.zeros((2 * kl + ku + 1, n))
    work[kl:] = ab
    lu, piv, info = lapack.dgbtrf(work, kl, ku)
    if info < 0:
        raise ValueError(f"dgbtrf: illegal argument {-info}")
    row_scale = _row_max(ab, kl, ku)
    pivots = np.abs(lu[kl + ku])
    bad = np.flatnonzero(~(pivots > PIVOT_FLOOR * row_scale)) if info == 0 else [info - 1]
    if len(bad):
        row = int(bad[0])
        raise SolverError(f"singular or ill-conditioned banded matrix at row {row}", row=row)
    x, info = lapack.dgbtrs(lu, kl, ku, np.asarray(rhs, dtype=float), piv)
    if info != 0:
        raise SolverError(f"dgbtrs failed with info={info}")
    return x


def _row_max(ab, kl, ku):
    n = ab.shape[1]
    out = np.zeros(n)
    for d in range(-kl, ku + 1):
        if d >= 0:
            np.maximum(out[:n - d], np.abs(ab[ku - d, d:]), out=out[:n - d])
        else:
            np.maximum(out[-d:], np.abs(ab[ku - d, :n + d]), out=out[-d:])
    return out


def banded_solve(system: BandedSystem, x_n: np.ndarray) -> np.ndarray:
    rhs = band_matvec(system.rhs_matrix, system.kl, system.ku, x_n) + system.rhs_forcing
    return solve_band(system.lhs, system.kl, system.ku, rhs)


def step(state: CoefficientState, params: PhysicsParams, grid: GridSpec,
         dt: float) -> CoefficientState:
    """Advance one Crank-Nicolson step with K, L frozen at the current level.

    The boundary closure is taken from ``state.closure``.
    """
    system = assemble(state, params, grid, dt)
    x_new = banded_solve(system, state.unknowns())
    if not np.all(np.isfinite(x_new)):
        raise SolverError(f"non-finite coefficients at t={state.time + dt:g}")
    return CoefficientState.from_unknowns(x_new, state.time + dt, state.closure)


def n_steps_for(t_end: float, dt: float, tol: float = 1e-9) -> int:
    """Number of steps to reach t_end; t_end must be a multiple of dt."""
    if not dt > 0 or t_end < 0:
        raise ValueError(f"need dt > 0 and t_end >= 0, got dt={dt}, t_end={t_end}")
    k = round(t_end / dt)
    if abs(k * dt - t_end) > tol * max(1.0, abs(t_end)):
        raise ValueError(f"dt={dt} does not divide t_end={t_end}")
    return int(k)


def integrate(state: CoefficientState, params: PhysicsParams, grid: GridSpec,
              dt: float, t_end: float, record_times=(), callback=None):
    """March from ``state`` to ``t_end``.

    Returns ``(final_state, snapshots)`` where ``snapshots`` maps each entry of
    ``record_times`` (multiples of dt) to the state reached at that time.
    ``callback(state)`` is invoked after the initial state and after every step.
    """
    total = n_steps_for(t_end - state.time, dt)
    wanted = {n_steps_for(t - state.time, dt): t for t in record_times}
    snapshots = {}
    t0 = state.time
    if 0 in wanted:
        snapshots[wanted[0]] = state
    if callback is not None:
        callback(state)
    for k in range(1, total + 1):
        state = step(state, params, grid, dt)
        state.time = t0 + k * dt  # avoid drift from repeated addition
        if k in wanted:
            snapshots[wanted[k]] = state
        if callback is not None:
            callback(state)
    return state, snapshots
