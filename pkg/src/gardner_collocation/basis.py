"""Extended cubic B-spline basis on a uniform grid.

Each basis function E_j is supported on [x_{j-2}, x_{j+2}] and is made of
four quartic pieces that degenerate to the classical cubic B-spline when the
extension parameter ``lam`` is zero.  Indices run over j = -1..N+1; knots
outside [a, b] are extrapolated uniformly.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P

__all__ = [
    "GridSpec",
    "NodalWeights",
    "nodal_weights",
    "branch_coefficients",
    "eval_basis",
    "reconstruct",
]


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid a = x_0 < x_1 < ... < x_N = b."""

    a: float
    b: float
    n_intervals: int

    def __post_init__(self):
        if not (np.isfinite(self.a) and np.isfinite(self.b)) or not self.a < self.b:
            raise ValueError(f"need finite a < b, got [{self.a}, {self.b}]")
        if int(self.n_intervals) != self.n_intervals or self.n_intervals < 4:
            raise ValueError(f"n_intervals must be an integer >= 4, got {self.n_intervals}")
        object.__setattr__(self, "n_intervals", int(self.n_intervals))

    @property
    def h(self) -> float:
        return (self.b - self.a) / self.n_intervals

    @property
    def nodes(self) -> np.ndarray:
        return self.a + self.h * np.arange(self.n_intervals + 1)

    def knot(self, k):
        """Knot x_k; any integer k, extrapolated beyond [a, b]."""
        return self.a + self.h * np.asarray(k)


@dataclass(frozen=True)
class NodalWeights:
    alpha1: float
    alpha2: float
    beta1: float
    gamma1: float
    gamma2: float


def nodal_weights(lam: float, h: float) -> NodalWeights:
    """Nodal value/derivative weights of the extended cubic B-spline.

    At a node x_m, U = alpha1*d_{m-1} + alpha2*d_m + alpha1*d_{m+1},
    U' = beta1*(d_{m-1} - d_{m+1}) and U'' = gamma1*d_{m-1} + gamma2*d_m + gamma1*d_{m+1}.
    """
    if not h > 0:
        raise ValueError(f"mesh size must be positive, got {h}")
    return NodalWeights(
        alpha1=(4.0 - lam) / 24.0,
        alpha2=(8.0 + lam) / 12.0,
        beta1=-1.0 / (2.0 * h),
        gamma1=(2.0 + lam) / (2.0 * h * h),
        gamma2=-(4.0 + 2.0 * lam) / (2.0 * h * h),
    )


def branch_coefficients(branch: int, lam: float) -> np.ndarray:
    """Ascending coefficients of piece ``branch`` (1..4) of 24*E_j.

    The variable is the shift t = (x - x_ref)/h, with x_ref = x_{j-2}, x_{j-1},
    x_{j+1}, x_{j+2} for branches 1..4 respectively.
    """
    if branch == 1:
        c = [0.0, 0.0, 0.0, 4.0 * (1.0 - lam), 3.0 * lam]
    elif branch == 2:
        c = [4.0 - lam, 12.0, 6.0 * (2.0 + lam), -12.0, -3.0 * lam]
    elif branch == 3:
        c = [4.0 - lam, -12.0, 6.0 * (2.0 + lam), 12.0, -3.0 * lam]
    elif branch == 4:
        c = [0.0, 0.0, 0.0, 4.0 * (lam - 1.0), 3.0 * lam]
    else:
        raise ValueError(f"branch must be 1..4, got {branch}")
    return np.array(c) / 24.0


# offset of each branch's reference knot relative to x_j, in units of h
_REF_OFFSET = {1: -2, 2: -1, 3: 1, 4: 2}


def _check_order(derivative_order):
    if derivative_order not in (0, 1, 2):
        raise ValueError(
            "extended cubic B-splines are only C2; derivative_order must be 0, 1 or 2, "
            f"got {derivative_order}"
        )


def _piece(branch, lam, derivative_order):
    c = branch_coefficients(branch, lam)
    return P.polyder(c, derivative_order) if derivative_order else c


def eval_basis(j: int, x: float, grid: GridSpec, lam: float, derivative_order: int = 0) -> float:
    """Value (or derivative) of E_j at x.

    Pieces are half-open on the left, the last one closed at x_{j+2}.
    """
    _check_order(derivative_order)
    h = grid.h
    u = (x - grid.knot(j)) / h
    if u < -2.0 or u > 2.0:
        return 0.0
    if u < -1.0:
        branch = 1
    elif u < 0.0:
        branch = 2
    elif u < 1.0:
        branch = 3
    else:
        branch = 4
    t = u - _REF_OFFSET[branch]
    return float(P.polyval(t, _piece(branch, lam, derivative_order))) / h**derivative_order


def reconstruct(coeffs, x, grid: GridSpec, lam: float, derivative_order: int = 0):
    """Evaluate sum_j coeffs[j] E_j(x) (or a derivative) for x in [a, b].

    ``coeffs`` has length N+3 and holds the coefficients for j = -1..N+1.
    ``x`` may be a scalar or an array; the result has the same shape.
    """
    _check_order(derivative_order)
    coeffs = np.asarray(coeffs, dtype=float)
    n = grid.n_intervals
    if coeffs.shape != (n + 3,):
        raise ValueError(f"expected {n + 3} coefficients, got shape {coeffs.shape}")
    xs = np.asarray(x, dtype=float)
    tol = 1e-12 * (grid.b - grid.a)
    if np.any(xs < grid.a - tol) or np.any(xs > grid.b + tol):
        raise ValueError(f"x outside [{grid.a}, {grid.b}]")
    h = grid.h
    u = np.clip((xs - grid.a) / h, 0.0, n)
    cell = np.minimum(np.floor(u).astype(int), n - 1)
    t = u - cell
    # On cell [x_i, x_{i+1}] the active splines are E_{i-1}..E_{i+2}; array index = j + 1.
    out = (
        coeffs[cell] * P.polyval(t - 1.0, _piece(4, lam, derivative_order))
        + coeffs[cell + 1] * P.polyval(t - 1.0, _piece(3, lam, derivative_order))
        + coeffs[cell + 2] * P.polyval(t, _piece(2, lam, derivative_order))
        + coeffs[cell + 3] * P.polyval(t, _piece(1, lam, derivative_order))
    ) / h**derivative_order
    return float(out) if np.ndim(x) == 0 else out
