"""Extended cubic B-splines: shape, nodal weights and smoothness."""
# %%
import numpy as np

from gardner_collocation.basis import GridSpec, eval_basis, nodal_weights, reconstruct

grid = GridSpec(0.0, 8.0, 8)

# %% Nodal weights. lam = 0 gives the classical (1/6, 2/3, 1/6) stencil.
for lam in (-1.0, 0.0, 0.5, 1.0):
    w = nodal_weights(lam, grid.h)
    print(f"lam={lam:5.2f}  alpha=({w.alpha1:.4f}, {w.alpha2:.4f})  "
          f"gamma=({w.gamma1:.4f}, {w.gamma2:.4f})  sum={2 * w.alpha1 + w.alpha2:.3f}")

# %% The spline centred on x_4 sharpens or flattens as lam varies.
xs = np.linspace(2.0, 6.0, 9)
for lam in (-1.0, 0.0, 1.0):
    print(f"lam={lam:5.2f}", np.round([eval_basis(4, x, grid, lam) for x in xs], 4))

# %% Second derivatives match across a knot; third derivatives would not.
for order in (0, 1, 2):
    left = eval_basis(4, 5.0 - 1e-9, grid, 0.3, order)
    right = eval_basis(4, 5.0 + 1e-9, grid, 0.3, order)
    print(f"order {order}: jump at x_5 = {abs(left - right):.1e}")

# %% Coefficients equal to the knots reproduce the line u = x exactly.
coeffs = grid.knot(np.arange(-1, 10))
x = np.array([0.3, 2.7, 7.9])
print(reconstruct(coeffs, x, grid, 0.4), reconstruct(coeffs, x, grid, 0.4, 1))
