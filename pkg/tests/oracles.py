"""Independent reference integrals of the closed-form profiles."""
import numpy as np
from scipy.integrate import simpson

PANELS = 100_000


def invariant_densities(f, fx, mu):
    mu1, mu2, mu3 = mu
    return (
        lambda x: f(x),
        lambda x: f(x) ** 2,
        lambda x: mu1 * f(x) ** 3 / 3 + mu2 * f(x) ** 4 / 6 - mu3 * fx(x) ** 2,
    )


def simpson_invariants(f, fx, mu, a, b, panels=PANELS):
    """(M, E, H) by composite Simpson with ``panels`` double intervals."""
    x = np.linspace(a, b, 2 * panels + 1)
    return tuple(float(simpson(g(x), x=x)) for g in invariant_densities(f, fx, mu))


def nodal_sum_invariants(f, fx, mu, a, b, n):
    """The plain nodal sum h * sum g(x_j): integral plus h/2 (g(a) + g(b)) up to O(h^2 g')."""
    h = (b - a) / n
    exact = simpson_invariants(f, fx, mu, a, b)
    ends = [h / 2 * (g(np.array(a)) + g(np.array(b))) for g in invariant_densities(f, fx, mu)]
    return tuple(float(q + e) for q, e in zip(exact, ends))
