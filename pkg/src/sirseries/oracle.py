"""Fixed-step classical Runge-Kutta reference for the SIR system.

Used to check series solutions independently of any power-series
machinery. The right-hand side is the same kernel that ``model.rhs``
calls.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np

from . import _backend
from .errors import DivergenceError
from .model import InitialState, SeriesSolution, SirParams
from .series import evaluate_many, format_float

DEFAULT_STEP = 1e-4


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    states: np.ndarray  # shape (n, 3): columns S, I, R

    def __post_init__(self):
        if self.times.ndim != 1 or self.states.shape != (self.times.size, 3):
            raise ValueError("states must have shape (len(times), 3)")
        if self.times.size and np.any(np.diff(self.times) <= 0):
            raise ValueError("times must be strictly increasing")

    def __len__(self) -> int:
        return self.times.size

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("t,S,I,R\n")
        for t, (s, i, r) in zip(self.times.tolist(), self.states.tolist()):
            buf.write(",".join(format_float(x) for x in (t, s, i, r)) + "\n")
        return buf.getvalue()


def step_times(t_end: float, step: float) -> np.ndarray:
    """0, step, 2*step, ... ending exactly on ``t_end``."""
    if not step > 0 or not math.isfinite(step):
        raise ValueError("step must be positive and finite")
    if not t_end >= 0 or not math.isfinite(t_end):
        raise ValueError("t_end must be >= 0 and finite")
    n_full = int(math.floor(t_end / step + 1e-9))
    times = np.arange(n_full + 1, dtype=np.float64) * step
    times = times[times < t_end - 1e-9 * step] if t_end > 0 else times[:1]
    if t_end > 0:
        times = np.append(times, t_end)
    return times


def rk4_integrate(params: SirParams, init: InitialState, t_end: float,
                  step: float = DEFAULT_STEP) -> Trajectory:
    times = step_times(t_end, step)
    states, bad = _backend.rk4_sir(
        params.lam, params.epsilon, params.d,
        params.f1.coeffs, params.f2.coeffs, params.f3.coeffs,
        init.as_tuple(), times,
    )
    if bad >= 0:
        raise DivergenceError(
            f"RK4 state became non-finite at t={float(times[bad])!r}",
            time=float(times[bad]))
    return Trajectory(times, states)


def trajectory_from_solution(sol: SeriesSolution, times) -> Trajectory:
    times = np.asarray(times, dtype=np.float64)
    states = np.column_stack([evaluate_many(x, times) for x in (sol.s, sol.i, sol.r)])
    return Trajectory(times, states)


def max_deviation(sol: SeriesSolution, traj: Trajectory) -> float:
    """Largest |series - trajectory| over samples and compartments."""
    if len(traj) == 0:
        raise ValueError("trajectory is empty")
    approx = np.column_stack([evaluate_many(x, traj.times) for x in (sol.s, sol.i, sol.r)])
    return float(np.max(np.abs(approx - traj.states)))
