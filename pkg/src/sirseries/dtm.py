"""Differential transform method.

The transform of a function is its Taylor coefficient sequence at t = 0,
so solving the system reduces to a forward recurrence on coefficients:
each new coefficient depends only on those already computed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _backend
from .errors import ArithmeticOverflowError, CapacityError
from .model import InitialState, SeriesSolution, SirParams
from .series import PowerSeries

MAX_DEGREE = 128

_KINDS = ("monomial", "exponential", "sine", "cosine")


@dataclass(frozen=True)
class ElementaryDescriptor:
    """An elementary function with a closed-form transform.

    ``monomial``: t**m; ``exponential``: exp(rate*t);
    ``sine``/``cosine``: sin/cos(omega*t + alpha).
    """

    kind: str
    m: int = 0
    rate: float = 0.0
    omega: float = 1.0
    alpha: float = 0.0

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"kind must be one of {_KINDS}, got {self.kind!r}")
        if self.m < 0:
            raise ValueError("monomial power must be >= 0")
        for name in ("rate", "omega", "alpha"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    @classmethod
    def monomial(cls, m: int) -> "ElementaryDescriptor":
        return cls("monomial", m=m)

    @classmethod
    def exponential(cls, rate: float) -> "ElementaryDescriptor":
        return cls("exponential", rate=rate)

    @classmethod
    def sine(cls, omega: float, alpha: float = 0.0) -> "ElementaryDescriptor":
        return cls("sine", omega=omega, alpha=alpha)

    @classmethod
    def cosine(cls, omega: float, alpha: float = 0.0) -> "ElementaryDescriptor":
        return cls("cosine", omega=omega, alpha=alpha)


def _power_over_factorial(x: float, n: int) -> np.ndarray:
    # x**k / k! built incrementally to stay finite for large k.
    out = np.empty(n + 1)
    out[0] = 1.0
    for k in range(1, n + 1):
        out[k] = out[k - 1] * x / k
    return out


def dtm_transform(desc: ElementaryDescriptor, max_degree: int) -> PowerSeries:
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    if desc.kind == "monomial":
        out = np.zeros(max_degree + 1)
        if desc.m <= max_degree:
            out[desc.m] = 1.0
        return PowerSeries._wrap(out)
    if desc.kind == "exponential":
        return PowerSeries._wrap(_power_over_factorial(desc.rate, max_degree))
    base = _power_over_factorial(desc.omega, max_degree)
    k = np.arange(max_degree + 1)
    # sin/cos(pi*k/2 + alpha) cycles through +-sin(alpha), +-cos(alpha);
    # indexing the cycle avoids the rounding in pi*k/2.
    sa, ca = math.sin(desc.alpha), math.cos(desc.alpha)
    if desc.kind == "sine":
        cycle = np.array([sa, ca, -sa, -ca])
    else:
        cycle = np.array([ca, -sa, -ca, sa])
    return PowerSeries._wrap(base * cycle[k % 4])


def dtm_solve(params: SirParams, init: InitialState, degree: int,
              max_degree: int = MAX_DEGREE) -> SeriesSolution:
    """Taylor coefficients of (S, I, R) through ``degree``.

    Forcing enters through its own coefficients, so non-constant
    polynomial inputs are handled as well.
    """
    if degree < 0:
        raise ValueError("degree must be >= 0")
    if degree > max_degree:
        raise CapacityError(f"degree {degree} exceeds cap {max_degree}")
    S, I, R = _backend.dtm_recurrence(
        params.lam, params.epsilon, params.d,
        params.f1.coeffs, params.f2.coeffs, params.f3.coeffs,
        init.s0, init.i0, init.r0, int(degree),
    )
    if not (np.all(np.isfinite(S)) and np.all(np.isfinite(I)) and np.all(np.isfinite(R))):
        raise ArithmeticOverflowError("DTM recurrence overflowed")
    return SeriesSolution(PowerSeries._wrap(S), PowerSeries._wrap(I),
                          PowerSeries._wrap(R), "dtm", int(degree))
