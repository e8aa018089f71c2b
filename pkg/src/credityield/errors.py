"""Exception types shared across the library.

Two families: ``ModelInputError`` for invalid inputs (the caller's fault)
and ``SolverFailure`` for numerical routines that could not deliver a
result (the data's fault, or a genuine internal error). The CLI maps the
families to exit codes 2 and 3 respectively.
"""


class ModelInputError(ValueError):
    """Invalid model input (bad hazard, recovery, maturity, ...)."""


class SolverFailure(RuntimeError):
    """A numerical routine could not produce a result within tolerance."""


class NoSignChange(SolverFailure):
    """Root bracket endpoints do not straddle a sign change."""


class MaxIterExceeded(SolverFailure):
    """Iteration budget exhausted before reaching the requested tolerance."""


class ToleranceNotReached(SolverFailure):
    """Adaptive quadrature exhausted its refinement budget."""


class NoSolution(SolverFailure):
    """No yield consistent with the given price exists in the search range."""


class NoRootInRange(SolverFailure):
    """Bootstrap could not reprice a quote with any admissible intensity."""


class ZeroPremiumLeg(SolverFailure):
    """CDS premium leg evaluated to a non-positive value (internal error)."""


class HazardTooShort(ModelInputError):
    """Per-period hazard sequence does not cover the requested maturity."""


class DegenerateHazard(ModelInputError):
    """Hazard assumption makes the requested quantity undefined."""


class NonMonotoneMaturities(ModelInputError):
    """Bond quotes are not sorted strictly ascending in maturity."""
