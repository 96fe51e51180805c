"""Laplace-Adomian decomposition.

The solution is split into correction terms S_j, I_j, R_j. The bilinear
term S*I is expanded in Adomian polynomials A_j = sum_i S_i * I_{j-i}, and
each correction comes from ``L^-1[(1/z) L[g]]`` applied to the previous
terms. For polynomial ``g`` that operator is exactly the antiderivative
with zero constant, which is how it is computed here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _backend
from .errors import ArithmeticOverflowError, CapacityError
from .model import InitialState, SeriesSolution, SirParams
from .series import PowerSeries, add, integrate, truncate

MAX_TERMS = 128


@dataclass(frozen=True)
class DecompositionTerms:
    s_terms: tuple[PowerSeries, ...]
    i_terms: tuple[PowerSeries, ...]
    r_terms: tuple[PowerSeries, ...]

    def __post_init__(self):
        if not (len(self.s_terms) == len(self.i_terms) == len(self.r_terms)):
            raise ValueError("term sequences must have equal length")

    def __len__(self) -> int:
        return len(self.s_terms)

    def appended(self, s: PowerSeries, i: PowerSeries, r: PowerSeries) -> "DecompositionTerms":
        return DecompositionTerms(self.s_terms + (s,), self.i_terms + (i,),
                                  self.r_terms + (r,))


@dataclass(frozen=True)
class AdomianSequence:
    a_terms: tuple[PowerSeries, ...] = ()

    def __len__(self) -> int:
        return len(self.a_terms)

    def appended(self, a: PowerSeries) -> "AdomianSequence":
        return AdomianSequence(self.a_terms + (a,))


def adomian_term(s_terms, i_terms, j: int, max_degree: int) -> PowerSeries:
    """A_j = S_0 I_j + S_1 I_{j-1} + ... + S_j I_0, truncated to ``max_degree``."""
    if j < 0 or len(s_terms) <= j or len(i_terms) <= j:
        raise IndexError(f"Adomian term {j} needs {j + 1} decomposition terms")
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    out = _backend.adomian_sum([s.coeffs for s in s_terms[: j + 1]],
                               [i.coeffs for i in i_terms[: j + 1]], j, int(max_degree))
    if not np.all(np.isfinite(out)):
        raise ArithmeticOverflowError(f"Adomian term {j} overflowed")
    return PowerSeries._wrap(out)


def ladm_initial(params: SirParams, init: InitialState, max_degree: int):
    """Zeroth terms: initial value plus the integrated forcing."""
    return tuple(
        truncate(add(PowerSeries.constant(x0), integrate(f)), max_degree)
        for x0, f in ((init.s0, params.f1), (init.i0, params.f2), (init.r0, params.f3))
    )


def ladm_step(params: SirParams, terms: DecompositionTerms,
              adomian: AdomianSequence, max_degree: int):
    """Next correction (S_j, I_j, R_j) from terms j-1 and A_{j-1}."""
    if len(terms) == 0:
        raise ValueError("need the initial decomposition terms")
    j = len(terms)
    if len(adomian) < j:
        raise IndexError(f"Adomian term {j - 1} is not available")
    lam, eps, d = params.lam, params.epsilon, params.d
    a = _padded(adomian.a_terms[j - 1], max_degree)
    s = _padded(terms.s_terms[-1], max_degree)
    i = _padded(terms.i_terms[-1], max_degree)
    r = _padded(terms.r_terms[-1], max_degree)
    with np.errstate(over="ignore", invalid="ignore"):
        g_s = (-lam) * a + (-d) * s
        g_i = (lam * a + (-eps) * i) + (-d) * r
        g_r = eps * i + (-d) * r
    return tuple(_integrated(g, max_degree) for g in (g_s, g_i, g_r))


def _padded(x: PowerSeries, max_degree: int) -> np.ndarray:
    out = np.zeros(max_degree + 1)
    m = min(len(x), max_degree + 1)
    out[:m] = x.coeffs[:m]
    return out


def _integrated(g: np.ndarray, max_degree: int) -> PowerSeries:
    # Antiderivative truncated back to max_degree; g[max_degree] drops out.
    if not np.abs(g).max() < np.inf:
        raise ArithmeticOverflowError("decomposition term overflowed")
    out = np.zeros(max_degree + 1)
    out[1:] = g[:max_degree] / np.arange(1, max_degree + 1, dtype=np.float64)
    return PowerSeries._wrap(out)


def ladm_solve(params: SirParams, init: InitialState, n: int,
               max_degree: int | None = None, max_terms: int = MAX_TERMS):
    """Partial sums of the first ``n + 1`` decomposition terms.

    Terms are truncated to ``max_degree`` (default ``n``), so the partial
    sums are polynomials of degree ``max_degree``.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n > max_terms:
        raise CapacityError(f"term count {n} exceeds cap {max_terms}")
    if max_degree is None:
        max_degree = n
    s0, i0, r0 = ladm_initial(params, init, max_degree)
    terms = DecompositionTerms((s0,), (i0,), (r0,))
    adomian = AdomianSequence()
    for j in range(1, n + 1):
        adomian = adomian.appended(
            adomian_term(terms.s_terms, terms.i_terms, j - 1, max_degree))
        terms = terms.appended(*ladm_step(params, terms, adomian, max_degree))

    def partial_sum(seq):
        acc = np.zeros(max_degree + 1)
        for term in seq:
            acc += _padded(term, max_degree)
        return PowerSeries._wrap(acc)

    sol = SeriesSolution(partial_sum(terms.s_terms), partial_sum(terms.i_terms),
                         partial_sum(terms.r_terms), "ladm", max_degree)
    return sol, terms
