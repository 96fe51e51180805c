"""The modified SIR computer-virus system and its residual functionals.

    S' = f1 - lam*S*I - d*S
    I' = f2 + lam*S*I - eps*I - d*R
    R' = f3 + eps*I - d*R

Note the ``-d*R`` coupling in the infected equation; it is part of the
model and not a typo for ``-d*I``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import _backend
from .errors import ParseError, ValidationError
from .series import PowerSeries, add, cauchy_product, differentiate, evaluate, scale

DEFAULT_LAMBDA = 0.001
DEFAULT_EPSILON = 0.1
DEFAULT_D = 0.1
DEFAULT_S0, DEFAULT_I0, DEFAULT_R0 = 20.0, 15.0, 10.0


def _zero() -> PowerSeries:
    return PowerSeries.zero()


@dataclass(frozen=True)
class SirParams:
    """Rates and forcing inputs. Forcings are power series in t."""

    lam: float = DEFAULT_LAMBDA
    epsilon: float = DEFAULT_EPSILON
    d: float = DEFAULT_D
    f1: PowerSeries = field(default_factory=_zero)
    f2: PowerSeries = field(default_factory=_zero)
    f3: PowerSeries = field(default_factory=_zero)

    def __post_init__(self):
        for name in ("lam", "epsilon", "d"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValidationError(f"{name} must be finite, got {value!r}")
            if value < 0:
                raise ValidationError(f"{name} must be >= 0, got {value!r}")
            object.__setattr__(self, name, float(value))
        for name in ("f1", "f2", "f3"):
            f = getattr(self, name)
            if not isinstance(f, PowerSeries):
                object.__setattr__(self, name, PowerSeries(f))

    @property
    def forcing_is_constant(self) -> bool:
        return all(np.all(f.coeffs[1:] == 0.0) for f in (self.f1, self.f2, self.f3))


@dataclass(frozen=True)
class InitialState:
    s0: float = DEFAULT_S0
    i0: float = DEFAULT_I0
    r0: float = DEFAULT_R0

    def __post_init__(self):
        for name in ("s0", "i0", "r0"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValidationError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, float(value))

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.s0, self.i0, self.r0)


@dataclass(frozen=True)
class SeriesSolution:
    """Approximants S_n, I_n, R_n sharing one truncation degree."""

    s: PowerSeries
    i: PowerSeries
    r: PowerSeries
    method: str
    degree: int

    def __post_init__(self):
        if not (self.s.degree == self.i.degree == self.r.degree == self.degree):
            raise ValueError("s, i, r must all have the solution degree")
        if self.method not in ("dtm", "ladm"):
            raise ValueError(f"unknown method tag {self.method!r}")

    @property
    def listing_label(self) -> int:
        # DTM listings are labelled by term count, LADM by highest power.
        return self.degree + 1 if self.method == "dtm" else self.degree

    def state(self, t: float) -> tuple[float, float, float]:
        return (evaluate(self.s, t), evaluate(self.i, t), evaluate(self.r, t))


class ResidualSample(NamedTuple):
    t: float
    e_s: float
    e_i: float
    e_r: float


def rhs(params: SirParams, t: float, s: float, i: float, r: float):
    """Right-hand side of the system at time ``t``."""
    return _backend.sir_rhs(
        params.lam, params.epsilon, params.d,
        evaluate(params.f1, t), evaluate(params.f2, t), evaluate(params.f3, t),
        float(s), float(i), float(r),
    )


def residual_point(sol: SeriesSolution, params: SirParams, t: float) -> ResidualSample:
    """Defect of the approximant at ``t``: derivative minus right-hand side.

    The product S_n(t)*I_n(t) is formed from the evaluated values, so it
    is not truncated.
    """
    s, i, r = sol.state(t)
    ds = evaluate(differentiate(sol.s), t)
    di = evaluate(differentiate(sol.i), t)
    dr = evaluate(differentiate(sol.r), t)
    gs, gi, gr = rhs(params, t, s, i, r)
    return ResidualSample(float(t), ds - gs, di - gi, dr - gr)


def residual_series(sol: SeriesSolution, params: SirParams):
    """Residuals expanded as power series (product carried to degree 2n).

    Built as derivative minus right-hand side, with the right-hand side
    assembled in the same operation order the recurrences use, so the
    constant coefficient cancels exactly.
    """
    n = sol.degree
    prod = cauchy_product(sol.s, sol.i, 2 * n)
    lam_si = scale(prod, params.lam)
    g_s = add(add(params.f1, -lam_si), scale(sol.s, -params.d))
    g_i = add(add(add(params.f2, lam_si), scale(sol.i, -params.epsilon)),
              scale(sol.r, -params.d))
    g_r = add(add(params.f3, scale(sol.i, params.epsilon)), scale(sol.r, -params.d))
    return tuple(add(differentiate(x), -g)
                 for x, g in ((sol.s, g_s), (sol.i, g_i), (sol.r, g_r)))


# Parameter files --------------------------------------------------------

_KEYS = {
    "lambda": "lam", "epsilon": "epsilon", "d": "d",
    "f1": "f1", "f2": "f2", "f3": "f3",
    "S0": "s0", "I0": "i0", "R0": "r0",
}
_LINE = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(.*?)\s*$")


def _parse_number(text: str, lineno: int, key: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise ParseError(f"expected a number, got {text!r}", lineno, key) from None
    if not math.isfinite(value):
        raise ParseError(f"value must be finite, got {text!r}", lineno, key)
    return value


def _parse_value(text: str, lineno: int, key: str):
    if text.startswith("["):
        if not text.endswith("]"):
            raise ParseError("unterminated coefficient list", lineno, key)
        body = text[1:-1].strip()
        if not body:
            raise ParseError("empty coefficient list", lineno, key)
        return [_parse_number(p.strip(), lineno, key) for p in body.split(",")]
    return _parse_number(text, lineno, key)


def parse_params(text: str) -> tuple[SirParams, InitialState]:
    """Parse a ``key = value`` parameter document.

    Keys are ``lambda, epsilon, d, f1, f2, f3, S0, I0, R0``; forcings take a
    scalar or ``[c0, c1, ...]``; ``#`` starts a comment. Missing keys keep
    their defaults.
    """
    values: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        m = _LINE.match(line)
        if m is None:
            raise ParseError(f"expected 'key = value', got {raw.strip()!r}", lineno)
        key, value_text = m.group(1), m.group(2)
        if key not in _KEYS:
            raise ParseError(
                f"unknown key (expected one of {', '.join(_KEYS)})", lineno, key)
        if _KEYS[key] in values:
            raise ParseError("duplicate key", lineno, key)
        if not value_text:
            raise ParseError("missing value", lineno, key)
        value = _parse_value(value_text, lineno, key)
        if isinstance(value, list) and not key.startswith("f"):
            raise ParseError("only forcings accept coefficient lists", lineno, key)
        values[_KEYS[key]] = value

    forcing = {k: PowerSeries(values.pop(k)) for k in ("f1", "f2", "f3") if k in values}
    init = InitialState(**{k: values.pop(k) for k in ("s0", "i0", "r0") if k in values})
    params = SirParams(**values, **forcing)
    return params, init


def load_params(path) -> tuple[SirParams, InitialState]:
    with open(path, encoding="utf-8") as fh:
        return parse_params(fh.read())
