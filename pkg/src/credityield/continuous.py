"""Continuous-time defaultable bond analytics.

Default arrives as the first jump of a Poisson process with intensity
lam(t), so survival to t is exp(-integral_0^t lam(s) ds). The coupon C
is paid continuously while the bond survives, recovery R is paid at the
default time, and the face value at maturity T if no default occurred.
With a flat rate r and constant intensity lam:

    P(T) = (C + R*lam) / (r + lam) * (1 - exp(-(r+lam)T))
         + F * exp(-(r+lam)T)

Piecewise-constant intensities price segment by segment: within a
segment the integrand C * exp(-r t) * S(t) (and its recovery twin) is an
exponential, so each segment contributes in closed form, weighted by the
survival and discount accumulated up to the segment start.

The continuously-compounded yield y solves

    P = C * (1 - exp(-yT)) / y + F * exp(-yT)

and the par yield is c_par = r + (1 - R/F) * lam, independent of
maturity. Yields are capped by r + lam regardless of the coupon.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .errors import ModelInputError, NoSolution
from .numerics import NoSignChange, RootProblem, expand_upper_bracket, solve_root

_YTM_RESIDUAL_REL = 1e-12
_YTM_POLISH_STEPS = 4
_SMALL_RATE = 1e-6  # below this, annuity derivatives switch to series


@dataclass(frozen=True)
class ContinuousBond:
    """Coupon amount paid per year (continuously), maturity in years, face."""

    coupon: float
    maturity: float
    face: float = 100.0

    def __post_init__(self) -> None:
        if self.face <= 0.0:
            raise ModelInputError("face must be positive")
        if self.coupon < 0.0:
            raise ModelInputError("coupon must be nonnegative")
        if self.maturity <= 0.0:
            raise ModelInputError("maturity must be positive")

    @property
    def coupon_rate(self) -> float:
        return self.coupon / self.face


@dataclass(frozen=True)
class PiecewiseConstantIntensity:
    """Default intensity that is constant on segments between break times.

    ``values[i]`` applies on (breaks[i-1], breaks[i]]; the final value
    extends beyond the last break.
    """

    breaks: tuple[float, ...]
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "breaks", tuple(float(b) for b in self.breaks))
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if len(self.values) != len(self.breaks) + 1:
            raise ModelInputError(
                f"{len(self.breaks)} breaks require {len(self.breaks) + 1} values, "
                f"got {len(self.values)}"
            )
        prev = 0.0
        for b in self.breaks:
            if b <= prev:
                raise ModelInputError("breaks must be strictly ascending and positive")
            prev = b
        for v in self.values:
            if v < 0.0:
                raise ModelInputError(f"intensity {v} must be nonnegative")

    def segments(self, horizon: float) -> list[tuple[float, float, float]]:
        """(start, end, intensity) triples covering [0, horizon]."""
        out = []
        start = 0.0
        for b, v in zip(self.breaks, self.values):
            if start >= horizon:
                return out
            out.append((start, min(b, horizon), v))
            start = b
        if start < horizon:
            out.append((start, horizon, self.values[-1]))
        return out


# Constant intensity is written as a bare float.
IntensitySpec = Union[float, PiecewiseConstantIntensity]


@dataclass(frozen=True)
class CreditAssumptions:
    """Default intensity plus recovery amount paid at the default time."""

    intensity: IntensitySpec
    recovery: float


def _segments(intensity: IntensitySpec, horizon: float) -> list[tuple[float, float, float]]:
    if isinstance(intensity, PiecewiseConstantIntensity):
        return intensity.segments(horizon)
    lam = float(intensity)
    if lam < 0.0:
        raise ModelInputError(f"intensity {lam} must be nonnegative")
    return [(0.0, horizon, lam)]


def survival(intensity: IntensitySpec, t: float) -> float:
    """Probability of no default through time t: exp(-integral of lam)."""
    if t < 0.0:
        raise ModelInputError("time must be nonnegative")
    if t == 0.0:
        return 1.0
    cum = 0.0
    for start, end, lam in _segments(intensity, t):
        cum += lam * (end - start)
    return math.exp(-cum)


def _expm1_ratio(w: float, h: float) -> float:
    """(1 - exp(-w*h)) / w, stable for small w; equals h at w = 0."""
    if w == 0.0:
        return h
    return -math.expm1(-w * h) / w


def price(bond: ContinuousBond, credit: CreditAssumptions, rate: float) -> float:
    """Expected discounted payoff under continuous coupon and discounting.

    Each constant-intensity segment contributes
    (C + R*lam_i) * S(a) * exp(-r a) * (1 - exp(-(r+lam_i)h)) / (r+lam_i)
    with h the segment length; the face value is discounted by the full
    survival and discount to maturity.
    """
    _validate(bond, credit, rate)
    c, t_mat, face = bond.coupon, bond.maturity, bond.face
    recovery = credit.recovery
    segments = _segments(credit.intensity, t_mat)
    if len(segments) == 1:
        # Single segment reduces to the constant-intensity closed form
        # (kept on one path so the two spellings price identically).
        lam = segments[0][2]
        w = rate + lam
        return (c + recovery * lam) * _expm1_ratio(w, t_mat) + face * math.exp(-w * t_mat)
    pv = 0.0
    surv = 1.0
    for start, end, lam in segments:
        h = end - start
        pv += (c + recovery * lam) * surv * math.exp(-rate * start) * _expm1_ratio(rate + lam, h)
        surv *= math.exp(-lam * h)
    return pv + face * math.exp(-rate * t_mat) * surv


def _validate(bond: ContinuousBond, credit: CreditAssumptions, rate: float) -> None:
    if rate < 0.0:
        raise ModelInputError("risk-free rate must be nonnegative")
    if not 0.0 <= credit.recovery <= bond.face:
        raise ModelInputError(f"recovery {credit.recovery} outside [0, face={bond.face}]")


def nominal_value(yield_rate: float, bond: ContinuousBond) -> float:
    """Nominal cash flows discounted continuously at a single rate."""
    c, t_mat, face = bond.coupon, bond.maturity, bond.face
    return c * _expm1_ratio(yield_rate, t_mat) + face * math.exp(-yield_rate * t_mat)


def _nominal_value_and_slope(yield_rate: float, bond: ContinuousBond) -> tuple[float, float]:
    c, t_mat, face = bond.coupon, bond.maturity, bond.face
    disc = math.exp(-yield_rate * t_mat)
    pv = c * _expm1_ratio(yield_rate, t_mat) + face * disc
    if abs(yield_rate) < _SMALL_RATE:
        annuity_slope = -(t_mat**2) / 2.0 + yield_rate * t_mat**3 / 3.0
    else:
        annuity_slope = (t_mat * disc * yield_rate + math.expm1(-yield_rate * t_mat)) / yield_rate**2
    return pv, c * annuity_slope - face * t_mat * disc


def ytm(price_value: float, bond: ContinuousBond) -> float:
    """Continuously-compounded yield equating nominal flows to the price."""
    if price_value <= 0.0:
        raise ModelInputError("price must be positive")

    def objective(y: float) -> float:
        return nominal_value(y, bond) - price_value

    try:
        lo, hi = expand_upper_bracket(objective)
        y = solve_root(RootProblem(objective, lo, hi))
    except NoSignChange as exc:
        raise NoSolution(
            f"no yield in the admissible range reprices {price_value} "
            f"for coupon {bond.coupon}, maturity {bond.maturity}"
        ) from exc

    tol_abs = _YTM_RESIDUAL_REL * bond.face
    for _ in range(_YTM_POLISH_STEPS):
        pv, slope = _nominal_value_and_slope(y, bond)
        resid = pv - price_value
        if abs(resid) <= tol_abs or slope == 0.0:
            break
        y -= resid / slope
    return y


def par_yield(credit: CreditAssumptions, rate: float, face: float = 100.0) -> float:
    """Coupon rate pricing the bond at face for every maturity:
    r + (1 - R/face) * lam."""
    lam = _constant_intensity(credit)
    if rate < 0.0:
        raise ModelInputError("risk-free rate must be nonnegative")
    if not 0.0 <= credit.recovery <= face:
        raise ModelInputError(f"recovery {credit.recovery} outside [0, face={face}]")
    return rate + (1.0 - credit.recovery / face) * lam


def ytm_upper_bound(credit: CreditAssumptions, rate: float, face: float = 100.0) -> float:
    """Coupon-independent yield cap; algebra collapses it to r + lam."""
    lam = _constant_intensity(credit)
    return par_yield(credit, rate, face) + credit.recovery * lam / face


def _constant_intensity(credit: CreditAssumptions) -> float:
    if isinstance(credit.intensity, PiecewiseConstantIntensity):
        raise ModelInputError("operation requires a constant intensity")
    lam = float(credit.intensity)
    if lam < 0.0:
        raise ModelInputError(f"intensity {lam} must be nonnegative")
    return lam
