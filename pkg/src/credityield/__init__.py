"""Defaultable-bond and CDS analytics under reduced-form default risk.

Discrete- and continuous-time pricing of defaultable coupon bonds,
yield-to-maturity and par-yield analytics, fair CDS spreads, scenario
grids over maturity and coupon rate, and bootstrapping of
piecewise-constant default intensities from bond quotes.
"""

from . import calibration, cds, continuous, curves, discrete, numerics
from .calibration import BondQuote, CalibrationResult, ZeroCurve, bootstrap
from .calibration import conditional_default_probabilities
from .cds import CdsSpec, PiecewiseLinearIntensity, slope_sign, spread_continuous
from .cds import spread_curve, spread_discrete
from .continuous import ContinuousBond, PiecewiseConstantIntensity, survival
from .curves import CurveTable, ScenarioSpec, classify_slope, generate
from .discrete import DiscreteBond, bond_spread
from .errors import (
    DegenerateHazard,
    HazardTooShort,
    MaxIterExceeded,
    ModelInputError,
    NonMonotoneMaturities,
    NoRootInRange,
    NoSignChange,
    NoSolution,
    SolverFailure,
    ToleranceNotReached,
    ZeroPremiumLeg,
)

__version__ = "0.1.0"

__all__ = [
    "BondQuote",
    "CalibrationResult",
    "CdsSpec",
    "ContinuousBond",
    "CurveTable",
    "DegenerateHazard",
    "DiscreteBond",
    "HazardTooShort",
    "MaxIterExceeded",
    "ModelInputError",
    "NonMonotoneMaturities",
    "NoRootInRange",
    "NoSignChange",
    "NoSolution",
    "PiecewiseConstantIntensity",
    "PiecewiseLinearIntensity",
    "ScenarioSpec",
    "SolverFailure",
    "ToleranceNotReached",
    "ZeroCurve",
    "ZeroPremiumLeg",
    "bond_spread",
    "bootstrap",
    "calibration",
    "cds",
    "classify_slope",
    "conditional_default_probabilities",
    "continuous",
    "curves",
    "discrete",
    "generate",
    "numerics",
    "slope_sign",
    "spread_continuous",
    "spread_curve",
    "spread_discrete",
    "survival",
]
