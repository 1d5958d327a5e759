"""Exception taxonomy shared across the package.

Validation problems (bad parameters, violated hypotheses of the closed-form
results) raise :class:`ValidationError`; iterative machinery that fails to
reach its tolerance raises :class:`ConvergenceError`.  The command line maps
these to exit codes 2 and 3 respectively.
"""


class ValidationError(ValueError):
    """Input rejected: a stated hypothesis or parameter constraint fails."""


class SingularModelError(ValidationError):
    """The model operator has a zero mode (boundary parameter + order = 0)."""


class OrderLimitError(ValidationError):
    """An asymptotic-polynomial order beyond the supported range was requested."""


class ConvergenceError(RuntimeError):
    """An iterative routine failed to meet its accuracy target."""
