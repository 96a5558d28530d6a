"""A broad initial pulse breaking into a train of solitary waves."""
# %%
import numpy as np
from scipy.signal import find_peaks

from gardner_collocation.basis import reconstruct
from gardner_collocation.experiment import run_experiment
from gardner_collocation.problems import preset

# mu1 = 10 makes the initial pulse too heavy to be a single solitary wave.
p = preset("generation")
res = run_experiment(p, snapshots=(0.0, 5.0, 10.0, 15.0), diag_every=100)
x = p.grid.nodes

# %% Crests, frontier first.  The frontier grows, the followers separate.
for t, state in sorted(res.snapshots.items()):
    u = reconstruct(state.delta, x, p.grid, 0.0)
    peaks, _ = find_peaks(u, prominence=0.01)
    peaks = peaks[np.argsort(-x[peaks])]
    print(f"t={t:4.1f}: " + ", ".join(f"{u[i]:.4f} at x={x[i]:.2f}" for i in peaks))

# %% Mass is kept to 1e-6; H drifts by about 2e-3 while the train forms.
for r in res.diagnostics[::3]:
    print(f"t={r.time:5.2f}  C_M={r.c_m:.2e}  C_E={r.c_e:.2e}  C_H={r.c_h:.2e}")
