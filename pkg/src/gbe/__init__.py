"""Exact 1/N expansions for the Gaussian beta ensemble.

Resolvent coefficients W_1^l from the loop equations, general-beta moment
polynomials, classical-ensemble cross-checks, smoothed densities with their
boundary terms, finite-part integration and a Monte Carlo harness.
"""

from .classical import Ensemble, closed_form_moment, recurrence_moments
from .density import (LinearStatistic, SmoothedDensity, density_from_resolvent, linear_statistic_mean,
                      polynomial_mean, stieltjes)
from .errors import GbeError
from .exact import MultiPoly, TruncatedSeries
from .hadamard import QuadratureConfig, SmoothFunction, hadamard_finite_part
from .loops import resolvent_expansion
from .moments import MomentPoly, moment_polynomial
from .spectral import SpectralExpr, parse_spectral

__version__ = "0.1.0"
