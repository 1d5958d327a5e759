"""Analytic torsion of bounded generalized cones.

The package computes the scalar analytic torsion of a metric cone of unit
slant height over a closed base manifold, from nothing but the coclosed
form spectrum and Betti numbers of the base.  Closed-form results for
circle and flat-torus bases are implemented next to fully numerical
zeta-regularization routes over exact Bessel-zero spectra, so every
theorem-level value in the package can be re-derived independently at
runtime (see `conetorsion selftest`).
"""

from .errors import (
    ConvergenceError,
    OrderLimitError,
    SingularModelError,
    ValidationError,
)

__all__ = [
    "ConvergenceError",
    "OrderLimitError",
    "SingularModelError",
    "ValidationError",
]

__version__ = "0.1.0"
