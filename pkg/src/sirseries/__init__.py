"""Semi-analytic power-series solvers for the modified SIR computer-virus model.

Two constructions of the truncated Taylor solution are provided, the
differential transform method (:func:`dtm_solve`) and the Laplace-Adomian
decomposition (:func:`ladm_solve`), together with residual evaluation and
an RK4 reference integrator.
"""

__version__ = "0.1.0"

from ._backend import BACKEND
from .dtm import ElementaryDescriptor, dtm_solve, dtm_transform
from .errors import (ArithmeticOverflowError, CapacityError, DivergenceError,
                     ParseError, SirSeriesError, ValidationError)
from .ladm import (AdomianSequence, DecompositionTerms, adomian_term,
                   ladm_initial, ladm_solve, ladm_step)
from .model import (InitialState, ResidualSample, SeriesSolution, SirParams,
                    parse_params, residual_point, residual_series, rhs)
from .oracle import Trajectory, max_deviation, rk4_integrate
from .series import (PowerSeries, add, cauchy_product, differentiate, evaluate,
                     integrate, scale, truncate)

__all__ = [
    "BACKEND", "PowerSeries", "add", "scale", "cauchy_product", "integrate",
    "differentiate", "evaluate", "truncate", "SirParams", "InitialState",
    "SeriesSolution", "ResidualSample", "rhs", "residual_point", "residual_series",
    "parse_params", "ElementaryDescriptor", "dtm_transform", "dtm_solve",
    "DecompositionTerms", "AdomianSequence", "adomian_term", "ladm_initial",
    "ladm_step", "ladm_solve", "Trajectory", "rk4_integrate", "max_deviation",
    "SirSeriesError", "ArithmeticOverflowError", "CapacityError", "ParseError",
    "ValidationError", "DivergenceError",
]
