"""Dense truncated power series in t about t = 0.

Coefficients are binary64 and stored lowest degree first; a series is
immutable once built. All arithmetic is exposed as module functions
(``add``, ``cauchy_product``, ...) with operator sugar on the class.
"""

from __future__ import annotations

import json
from typing import Iterable

import numpy as np

from . import _backend
from .errors import ArithmeticOverflowError


def _check_finite(arr: np.ndarray, what: str) -> np.ndarray:
    # max(|x|) is NaN or inf exactly when some coefficient is non-finite.
    if not np.abs(arr).max() < np.inf:
        raise ArithmeticOverflowError(f"{what} produced a non-finite coefficient")
    return arr


class PowerSeries:
    """Truncated power series ``sum(coeffs[k] * t**k)``."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[float] | float):
        arr = np.array(coeffs, dtype=np.float64, copy=True).reshape(-1)
        if arr.size == 0:
            arr = np.zeros(1)
        if not np.all(np.isfinite(arr)):
            raise ArithmeticOverflowError("power series coefficients must be finite")
        arr.flags.writeable = False
        self._c = arr

    @classmethod
    def _wrap(cls, arr: np.ndarray) -> "PowerSeries":
        # Trusted constructor for kernel output; skips the defensive copy.
        obj = cls.__new__(cls)
        arr = np.ascontiguousarray(arr, dtype=np.float64)
        arr.flags.writeable = False
        obj._c = arr
        return obj

    @classmethod
    def zero(cls) -> "PowerSeries":
        return cls([0.0])

    @classmethod
    def constant(cls, value: float) -> "PowerSeries":
        return cls([value])

    @property
    def coeffs(self) -> np.ndarray:
        """Read-only coefficient array, lowest degree first."""
        return self._c

    @property
    def degree(self) -> int:
        return self._c.size - 1

    def __len__(self) -> int:
        return self._c.size

    def __getitem__(self, k: int) -> float:
        # Coefficients past the stored degree read as zero.
        if isinstance(k, slice):
            raise TypeError("use .coeffs for slicing")
        if k < 0:
            raise IndexError("negative power")
        return float(self._c[k]) if k < self._c.size else 0.0

    def __iter__(self):
        return iter(self._c.tolist())

    def tolist(self) -> list[float]:
        return self._c.tolist()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self._c.size == other._c.size and bool(np.all(self._c == other._c))

    def __hash__(self) -> int:
        return hash(self._c.tobytes())

    def __repr__(self) -> str:
        return f"PowerSeries({self._c.tolist()!r})"

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        return add(self, other)

    def __neg__(self) -> "PowerSeries":
        return scale(self, -1.0)

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        return add(self, scale(other, -1.0))

    def __call__(self, t: float) -> float:
        return evaluate(self, t)

    def to_json(self) -> str:
        return to_json(self)


def _as_series(a) -> PowerSeries:
    return a if isinstance(a, PowerSeries) else PowerSeries(a)


def add(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    a, b = _as_series(a), _as_series(b)
    n = max(a._c.size, b._c.size)
    out = np.zeros(n)
    with np.errstate(over="ignore", invalid="ignore"):
        out[: a._c.size] += a._c
        out[: b._c.size] += b._c
    return PowerSeries._wrap(_check_finite(out, "add"))


def scale(a: PowerSeries, beta: float) -> PowerSeries:
    a = _as_series(a)
    if not np.isfinite(beta):
        raise ArithmeticOverflowError(f"scale factor must be finite, got {beta!r}")
    with np.errstate(over="ignore", invalid="ignore"):
        out = a._c * float(beta)
    return PowerSeries._wrap(_check_finite(out, "scale"))


def cauchy_product(a: PowerSeries, b: PowerSeries, max_degree: int) -> PowerSeries:
    """Product of ``a`` and ``b`` keeping powers ``0..max_degree``.

    ``result[k] = sum(a[s] * b[k - s] for s in range(k + 1))``.
    """
    a, b = _as_series(a), _as_series(b)
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    out = _backend.convolve(a._c, b._c, int(max_degree))
    return PowerSeries._wrap(_check_finite(out, "cauchy_product"))


def integrate(a: PowerSeries) -> PowerSeries:
    """Antiderivative with zero constant term."""
    a = _as_series(a)
    out = np.zeros(a._c.size + 1)
    out[1:] = a._c / np.arange(1, a._c.size + 1, dtype=np.float64)
    return PowerSeries._wrap(out)


def differentiate(a: PowerSeries) -> PowerSeries:
    a = _as_series(a)
    if a._c.size == 1:
        return PowerSeries.zero()
    out = a._c[1:] * np.arange(1, a._c.size, dtype=np.float64)
    return PowerSeries._wrap(out)


def evaluate(a: PowerSeries, t: float) -> float:
    """Value at ``t`` by Horner's scheme."""
    a = _as_series(a)
    if not np.isfinite(t):
        raise ArithmeticOverflowError(f"evaluation point must be finite, got {t!r}")
    value = _backend.horner(a._c, float(t))
    if not np.isfinite(value):
        raise ArithmeticOverflowError(f"evaluation at t={t!r} overflowed")
    return value


def evaluate_many(a: PowerSeries, ts) -> np.ndarray:
    """Horner evaluation at every point of ``ts``, same rounding as ``evaluate``."""
    a = _as_series(a)
    ts = np.asarray(ts, dtype=np.float64)
    c = a._c
    acc = np.full(ts.shape, c[-1])
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(c.size - 2, -1, -1):
            acc = acc * ts + c[k]
    if not np.all(np.isfinite(acc)):
        raise ArithmeticOverflowError("evaluation overflowed")
    return acc


def truncate(a: PowerSeries, max_degree: int) -> PowerSeries:
    a = _as_series(a)
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    out = np.zeros(max_degree + 1)
    m = min(a._c.size, max_degree + 1)
    out[:m] = a._c[:m]
    return PowerSeries._wrap(out)


def format_float(x: float) -> str:
    """17 significant digits; round-trips every binary64 value."""
    return format(float(x), ".17g")


def to_json(a: PowerSeries) -> str:
    return "[" + ", ".join(format_float(c) for c in a._c.tolist()) + "]"


def from_json(text: str) -> PowerSeries:
    data = json.loads(text)
    if not isinstance(data, list) or not all(
        isinstance(x, (int, float)) and not isinstance(x, bool) for x in data
    ):
        raise ValueError("expected a JSON array of numbers")
    return PowerSeries(data)


def format_polynomial(a: PowerSeries, digits: int = 6, var: str = "t") -> str:
    """Human-readable polynomial, e.g. ``20 - 2.3 t + 0.15425 t^2``.

    Zero coefficients are omitted.
    """
    parts: list[str] = []
    for k, c in enumerate(a.tolist()):
        if c == 0.0 and (k > 0 or a.degree > 0):
            continue
        mag = format(abs(c), f".{digits}g")
        if k == 0:
            term = mag
        elif k == 1:
            term = f"{mag} {var}"
        else:
            term = f"{mag} {var}^{k}"
        if not parts:
            parts.append(f"-{term}" if c < 0 else term)
        else:
            parts.append(f"- {term}" if c < 0 else f"+ {term}")
    return " ".join(parts) if parts else "0"
