"""Closed-form solutions, initial data and experiment presets."""
from __future__ import annotations

from dataclasses import dataclass, replace
from functools import partial
from typing import Callable, Optional

import numpy as np

from .assembly import PhysicsParams
from .basis import GridSpec
from .fitting import InitialProfile

__all__ = [
    "ExperimentPreset",
    "exact_pulse",
    "exact_pulse_x",
    "exact_kink",
    "exact_kink_x",
    "pulse3_initial",
    "pulse3_initial_x",
    "GENERATION_AMPLITUDE",
    "preset",
    "PRESETS",
]

_S14 = np.sqrt(14.0)
_KINK_K = np.sqrt(30.0) / 60.0


def exact_pulse(x, t):
    """Solitary wave for mu = (4, -3, 1); peak at x = 5 + t/9."""
    return 2.0 / (12.0 + 3.0 * _S14 * np.cosh(-x / 3.0 + 5.0 / 3.0 + t / 27.0))


def exact_pulse_x(x, t):
    z = -x / 3.0 + 5.0 / 3.0 + t / 27.0
    den = 12.0 + 3.0 * _S14 * np.cosh(z)
    return 2.0 * _S14 * np.sinh(z) / den**2


def exact_kink(x, t):
    """Kink for mu = (1, -5, 1); 0.2 as x -> -inf, 0 as x -> +inf, speed 1/30."""
    return 0.1 - 0.1 * np.tanh(_KINK_K * (x - t / 30.0))


def exact_kink_x(x, t):
    return -0.1 * _KINK_K / np.cosh(_KINK_K * (x - t / 30.0)) ** 2


# Numerator giving a peak of 0.4305 at x = 5.  A numerator of 2/3 gives a pulse
# five times lower (peak 0.0861) whose invariants are 1/5, 1/25 of the
# reference values M0 = 5.2255, E0 = 1.5033.
GENERATION_AMPLITUDE = 10.0 / 3.0


def pulse3_initial(x, amplitude=GENERATION_AMPLITUDE):
    """Initial pulse for the wave-generation run, centred at x = 5."""
    return amplitude / (4.0 + _S14 * np.cosh(x / 3.0 - 5.0 / 3.0))


def pulse3_initial_x(x, amplitude=GENERATION_AMPLITUDE):
    z = x / 3.0 - 5.0 / 3.0
    return -(amplitude / 3.0) * _S14 * np.sinh(z) / (4.0 + _S14 * np.cosh(z)) ** 2


@dataclass(frozen=True)
class ExperimentPreset:
    name: str
    params: PhysicsParams
    grid: GridSpec
    dt: float
    t_end: float
    initial: InitialProfile
    exact: Optional[Callable] = None
    report_times: tuple = ()

    def with_overrides(self, n=None, dt=None, lam=None, epsilon=None, t_end=None):
        """Copy with selected fields replaced; ``None`` keeps the preset value."""
        params = self.params
        if lam is not None:
            params = replace(params, lam=float(lam))
        if epsilon is not None:
            params = replace(params, epsilon=float(epsilon))
        grid = self.grid if n is None else GridSpec(self.grid.a, self.grid.b, int(n))
        return replace(
            self,
            params=params,
            grid=grid,
            dt=self.dt if dt is None else float(dt),
            t_end=self.t_end if t_end is None else float(t_end),
        )


def _pulse(n=100):
    return ExperimentPreset(
        name="pulse",
        params=PhysicsParams(4.0, -3.0, 1.0),
        grid=GridSpec(-20.0, 30.0, n),
        dt=0.1,
        t_end=5.0,
        initial=InitialProfile(partial(exact_pulse, t=0.0), partial(exact_pulse_x, t=0.0)),
        exact=exact_pulse,
        report_times=(2.5, 5.0),
    )


def _kink(n=400):
    return ExperimentPreset(
        name="kink",
        params=PhysicsParams(1.0, -5.0, 1.0),
        grid=GridSpec(-80.0, 80.0, n),
        dt=0.1,
        t_end=12.0,
        initial=InitialProfile(partial(exact_kink, t=0.0), partial(exact_kink_x, t=0.0)),
        exact=exact_kink,
        report_times=(4.0, 12.0),
    )


def _generation(n=400):
    return ExperimentPreset(
        name="generation",
        params=PhysicsParams(10.0, -3.0, 1.0, epsilon=0.0),
        grid=GridSpec(-40.0, 60.0, n),
        dt=0.01,
        t_end=15.0,
        initial=InitialProfile(pulse3_initial, pulse3_initial_x),
        exact=None,
        report_times=(5.0, 10.0, 15.0),
    )


PRESETS = {"pulse": _pulse, "kink": _kink, "generation": _generation}


def preset(name: str) -> ExperimentPreset:
    try:
        return PRESETS[name]()
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
