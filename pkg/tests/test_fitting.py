import numpy as np
import pytest

from gardner_collocation.assembly import CLOSURES, compute_kl
from gardner_collocation.basis import GridSpec, nodal_weights, reconstruct
from gardner_collocation.fitting import InitialProfile, fit_initial, fit_matrix_band, fit_nodal
from gardner_collocation.problems import exact_pulse, exact_pulse_x


def _dense(ab):
    n = ab.shape[1]
    return np.diag(ab[1]) + np.diag(ab[0, 1:], 1) + np.diag(ab[2, :-1], -1)


@pytest.mark.parametrize("closure", sorted(CLOSURES))
def test_constant_profile(closure):
    grid = GridSpec(-1.0, 1.0, 20)
    prof = InitialProfile(lambda x: np.full_like(x, 0.3), lambda x: np.zeros_like(x))
    s = fit_initial(prof, grid, 0.2, closure)
    np.testing.assert_allclose(s.delta, 0.3, atol=1e-14)
    np.testing.assert_allclose(s.phi, 0.0, atol=1e-14)


@pytest.mark.parametrize("lam", [-0.5, 0.0, 0.5])
def test_pulse_interpolation_residual(lam):
    grid = GridSpec(-20.0, 30.0, 100)
    prof = InitialProfile(lambda x: exact_pulse(x, 0.0), lambda x: exact_pulse_x(x, 0.0))
    s = fit_initial(prof, grid, lam)
    x = grid.nodes
    assert np.max(np.abs(reconstruct(s.delta, x, grid, lam) - exact_pulse(x, 0.0))) <= 1e-10
    assert np.max(np.abs(reconstruct(s.phi, x, grid, lam) - exact_pulse_x(x, 0.0))) <= 1e-10
    # the frozen nodal values seen by the stepper are the fitted ones
    kl = compute_kl(s, nodal_weights(lam, grid.h))
    np.testing.assert_allclose(kl.K, reconstruct(s.delta, x, grid, lam), atol=1e-12)


def test_linear_profile_slope_is_exact():
    grid = GridSpec(0.0, 4.0, 16)
    prof = InitialProfile(lambda x: 2.0 * x - 1.0, lambda x: np.full_like(x, 2.0))
    s = fit_initial(prof, grid, 0.1)
    x = grid.nodes[1:-1]
    np.testing.assert_allclose(reconstruct(s.delta, x, grid, 0.1, 1), 2.0, atol=1e-10)
    np.testing.assert_allclose(reconstruct(s.delta, grid.nodes, grid, 0.1), 2 * grid.nodes - 1,
                               atol=1e-12)


@pytest.mark.parametrize("closure", sorted(CLOSURES))
def test_band_matches_dense_construction(closure):
    n, lam = 6, 0.3
    w = nodal_weights(lam, 1.0)
    w_edge, w_next = CLOSURES[closure]
    # nodes 0..n against coefficients -1..n+1, then fold the ghosts
    full = np.zeros((n + 1, n + 3))
    for m in range(n + 1):
        full[m, m:m + 3] = (w.alpha1, w.alpha2, w.alpha1)
    A = full[:, 1:-1].copy()
    A[:, 0] += w_edge * full[:, 0]
    A[:, 1] += w_next * full[:, 0]
    A[:, -1] += w_edge * full[:, -1]
    A[:, -2] += w_next * full[:, -1]
    np.testing.assert_allclose(_dense(fit_matrix_band(n, lam, closure)), A, atol=1e-15)


def test_fit_nodal_shape_error():
    grid = GridSpec(0.0, 1.0, 10)
    with pytest.raises(ValueError):
        fit_nodal(np.zeros(10), grid, 0.0)


def test_non_finite_profile_rejected():
    grid = GridSpec(0.0, 1.0, 10)
    prof = InitialProfile(lambda x: np.where(x > 0.5, np.nan, x), lambda x: np.zeros_like(x))
    with pytest.raises(ValueError):
        fit_initial(prof, grid, 0.0)
