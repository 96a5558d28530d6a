"""Kink solution: spatial convergence and conserved-quantity drift."""
# %%
from gardner_collocation.assembly import integrate
from gardner_collocation.diagnostics import conserved_quantities, linf_error, relative_changes
from gardner_collocation.fitting import fit_initial
from gardner_collocation.problems import preset

# The kink joins u = 0.2 on the left to u = 0 on the right and drifts at 1/30.
# It does not decay at x = a, so M, E and H change through the left boundary:
# the relative changes are of order 5e-3 at t = 12 for every N.
print("   N    linf(12)     M0        C(M12)    C(E12)    C(H12)")
previous = None
for n in (100, 200, 400, 600, 800):
    p = preset("kink").with_overrides(n=n)
    s0 = fit_initial(p.initial, p.grid, 0.0)
    final, _ = integrate(s0, p.params, p.grid, p.dt, p.t_end)
    q0 = conserved_quantities(s0, p.params, p.grid, rule="nodal")
    c = relative_changes(conserved_quantities(final, p.params, p.grid, rule="nodal"), q0)
    err = linf_error(final, p.exact, p.grid, 0.0)
    order = "" if previous is None else f"  rate {previous[1] / err:.2f}x"
    print(f"{n:4d}  {err:.4e}  {q0[0]:.4f}  {c[0]:.3e}  {c[1]:.3e}  {c[2]:.3e}{order}")
    previous = (n, err)
