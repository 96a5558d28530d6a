"""Von Neumann amplification factors of the linearised collocation scheme.

Fourier modes delta_j = A1 xi^n exp(i j phi), phi_j = A2 xi^n exp(i j phi)
are inserted into the scheme with the nonlinear coefficient frozen at a
constant value ``eps_local``.  Coefficients: a1 = alpha1, a2 = alpha2,
a3 = 1/(2h), a4 = gamma1, a5 = gamma2, and the time step dt multiplies the
spatial terms.

    rho1 = (X1 + iY) / (X2 - iY)
        X1, X2 = A1 (2 a1 cos phi + a2) -/+ (A2 dt mu3 / 2)(2 a4 cos phi + a5)
        Y      = w dt eps_local A1 a3 sin phi
    rho2 = (X3 + iZ) / (X4 - iZ),  X3 = A2 (2 a1 cos phi + a2),  X4 = -X3,
        Z = 2 A1 a3 sin phi

``w`` is the weight of the frozen advection term (default 1).  The amplitudes
may be complex.  The second collocation equation ties A2 to A1 for every
mode except the odd-time parasite rho = -1; ``mode_amplitudes`` returns that
ratio and is what ``verify_stability`` sweeps with.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .assembly import PhysicsParams
from .basis import nodal_weights

__all__ = [
    "StabilityInput",
    "StabilityReport",
    "amplification_factors",
    "mode_amplitudes",
    "verify_stability",
]

STABILITY_TOL = 1e-12


@dataclass(frozen=True)
class StabilityInput:
    params: PhysicsParams
    h: float
    dt: float
    eps_local: float
    phi_mode: float
    amp1: complex = 1.0
    amp2: complex = 1.0
    weight: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.phi_mode < 2.0 * np.pi:
            raise ValueError(f"phi_mode must lie in (0, 2 pi), got {self.phi_mode}")
        if self.amp1 == 0 and self.amp2 == 0:
            raise ValueError("amplitudes cannot both vanish")


def _coeffs(lam, h):
    w = nodal_weights(lam, h)
    return w.alpha1, w.alpha2, 1.0 / (2.0 * h), w.gamma1, w.gamma2


def mode_amplitudes(phi, lam, h):
    """(A1, A2) = (1, A2) satisfying V = U_x for mode angle phi."""
    a1, a2, a3, _, _ = _coeffs(lam, h)
    return 1.0, 2j * a3 * np.sin(phi) / (2.0 * a1 * np.cos(phi) + a2)


def _factors(params, h, dt, eps_local, phi, amp1, amp2, weight):
    a1, a2, a3, a4, a5 = _coeffs(params.lam, h)
    mass = 2.0 * a1 * np.cos(phi) + a2
    disp = 2.0 * a4 * np.cos(phi) + a5
    x1 = amp1 * mass - amp2 * dt * params.mu3 / 2.0 * disp
    x2 = amp1 * mass + amp2 * dt * params.mu3 / 2.0 * disp
    y = weight * dt * eps_local * amp1 * a3 * np.sin(phi)
    rho1 = (x1 + 1j * y) / (x2 - 1j * y)
    x3 = amp2 * mass
    z = 2.0 * amp1 * a3 * np.sin(phi)
    num = x3 + 1j * z
    # X4 = -X3, so rho2 = num / -num; keep the removable limit where num = 0
    with np.errstate(invalid="ignore", divide="ignore"):
        rho2 = np.where(np.abs(num) > 0, num / (-x3 - 1j * z), -1.0 + 0j)
    return rho1, rho2


def amplification_factors(inp: StabilityInput):
    rho1, rho2 = _factors(inp.params, inp.h, inp.dt, inp.eps_local, inp.phi_mode,
                          inp.amp1, inp.amp2, inp.weight)
    return complex(rho1), complex(rho2)


@dataclass
class StabilityReport:
    phi: np.ndarray       # shape (n_modes,)
    eps_local: np.ndarray  # shape (n_eps,)
    abs_rho1: np.ndarray  # shape (n_eps, n_modes)
    abs_rho2: np.ndarray
    tol: float = STABILITY_TOL

    @property
    def max_rho1(self) -> float:
        return float(self.abs_rho1.max())

    @property
    def max_rho2(self) -> float:
        return float(self.abs_rho2.max())

    def argmax(self, which=1):
        arr = self.abs_rho1 if which == 1 else self.abs_rho2
        i, j = np.unravel_index(np.argmax(arr), arr.shape)
        return float(self.phi[j]), float(self.eps_local[i])

    @property
    def passed(self) -> bool:
        return self.max_rho1 <= 1.0 + self.tol and self.max_rho2 <= 1.0 + self.tol

    def write_csv(self, path):
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["phi", "eps_local", "abs_rho1", "abs_rho2"])
            for i, e in enumerate(self.eps_local):
                for j, p in enumerate(self.phi):
                    w.writerow([f"{p:.17g}", f"{e:.17g}",
                                f"{self.abs_rho1[i, j]:.17g}", f"{self.abs_rho2[i, j]:.17g}"])


def verify_stability(params: PhysicsParams, h: float, dt: float, eps_range=(0.0, 1.0),
                     n_modes: int = 720, n_eps: int = 16, weight: float = 1.0,
                     amplitudes=None) -> StabilityReport:
    """Sweep |rho1|, |rho2| over phi in (0, 2 pi) and eps_local in eps_range.

    Mode angles are cell-centred, phi_k = 2 pi (k + 1/2) / n_modes.  By default
    each mode uses ``mode_amplitudes``; pass ``amplitudes=(A1, A2)`` to fix them.
    """
    if n_modes < 8:
        raise ValueError("n_modes must be >= 8")
    phi = 2.0 * np.pi * (np.arange(n_modes) + 0.5) / n_modes
    eps = np.linspace(eps_range[0], eps_range[1], n_eps)
    if amplitudes is None:
        amp1, amp2 = mode_amplitudes(phi, params.lam, h)
    else:
        amp1, amp2 = amplitudes
    P, E = np.meshgrid(phi, eps)
    A1 = np.broadcast_to(amp1, phi.shape)[None, :]
    A2 = np.broadcast_to(amp2, phi.shape)[None, :]
    rho1, rho2 = _factors(params, h, dt, E, P, A1, A2, weight)
    return StabilityReport(phi, eps, np.abs(rho1), np.abs(rho2))
