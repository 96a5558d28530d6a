"""Why the ghost coefficients are closed with zero curvature."""
# %%
import numpy as np

from gardner_collocation.assembly import integrate
from gardner_collocation.basis import reconstruct
from gardner_collocation.diagnostics import linf_error
from gardner_collocation.fitting import fit_initial
from gardner_collocation.problems import preset

# Closing with zero slope (c_-1 = c_1) leaves the sawtooth (-1)^j as a steady,
# defective mode of the step operator.  A moving wave feeds it, and it shows up
# as odd-even noise in the coefficients that grows with N.
for closure in ("slope", "curvature"):
    for n in (100, 200):
        p = preset("pulse").with_overrides(n=n)
        s0 = fit_initial(p.initial, p.grid, 0.0, closure)
        final, _ = integrate(s0, p.params, p.grid, p.dt, p.t_end)
        d = final.delta
        saw = abs(np.mean(d[1:-1] * (-1.0) ** np.arange(d.size - 2)))
        print(f"{closure:9s} N={n}: linf(5)={linf_error(final, p.exact, p.grid, 0.0):.3e}  "
              f"sawtooth amplitude={saw:.2e}")

# %% Both closures reproduce their own boundary condition exactly.
p = preset("pulse")
for closure, order in (("slope", 1), ("curvature", 2)):
    s = fit_initial(p.initial, p.grid, 0.0, closure)
    print(closure, reconstruct(s.delta, np.array([p.grid.a, p.grid.b]), p.grid, 0.0, order))
