"""Von Neumann amplification factors."""
# %%
from gardner_collocation.assembly import PhysicsParams
from gardner_collocation.stability import StabilityInput, amplification_factors, mode_amplitudes
from gardner_collocation.stability import verify_stability

params = PhysicsParams(4.0, -3.0, 1.0)
h, dt = 0.5, 0.1

# %% With A2 tied to A1 through V = U_x the first factor has unit modulus.
for phi in (0.5, 1.5, 3.0):
    a1, a2 = mode_amplitudes(phi, params.lam, h)
    rho1, rho2 = amplification_factors(StabilityInput(params, h, dt, 0.2, phi, a1, a2))
    print(f"phi={phi}: |rho1|={abs(rho1):.15f}  |rho2|={abs(rho2):.15f}")

# %% Full sweep.
rep = verify_stability(params, h, dt, eps_range=(-6.0, 6.0))
print(f"max|rho1| = {rep.max_rho1!r}, max|rho2| = {rep.max_rho2!r}, passed = {rep.passed}")

# %% Unit real amplitudes ignore the coupling and are not a stability statement.
rep = verify_stability(params, h, dt, eps_range=(0.0, 1.0), amplitudes=(1.0, 1.0))
print(f"A1 = A2 = 1: max|rho1| = {rep.max_rho1:.1f} at (phi, eps) = {rep.argmax(1)}")
