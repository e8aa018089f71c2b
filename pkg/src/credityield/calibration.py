"""Bootstrap a piecewise-constant default intensity from bond quotes.

Quotes are repriced with the continuous model: the annual coupon is
treated as an amount 100 * coupon_rate paid continuously, default
intensity is constant within each year, and discounting uses either a
flat continuously-compounded rate or a zero-rate curve (linear
interpolation in the zero rate, discount factor exp(-z(t) * t)).

Processing quotes in maturity order, each one pins the intensity of the
latest year: earlier segments stay fixed and the newest segment level is
solved so the model price matches the quote exactly. Years without a
quote inherit the previous segment's intensity (flat extension).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .continuous import ContinuousBond, CreditAssumptions, PiecewiseConstantIntensity
from .continuous import price as continuous_price
from .errors import ModelInputError, NonMonotoneMaturities, NoRootInRange
from .numerics import NoSignChange, QuadProblem, RootProblem, integrate, solve_root

DEFAULT_LAMBDA_MAX = 20.0  # yearly conditional default probability 1 - 2e-9

_FACE = 100.0
_CURVE_QUAD_TOL = 1e-12


@dataclass(frozen=True)
class BondQuote:
    """One observed bond: maturity in years, coupon rate, clean price per 100."""

    maturity: float
    coupon_rate: float
    clean_price: float

    def __post_init__(self) -> None:
        if self.maturity <= 0.0:
            raise ModelInputError("quote maturity must be positive")
        if self.coupon_rate < 0.0:
            raise ModelInputError("coupon rate must be nonnegative")
        if self.clean_price <= 0.0:
            raise ModelInputError("clean price must be positive")


@dataclass(frozen=True)
class ZeroCurve:
    """Zero-rate term structure, linearly interpolated in the zero rate.

    Rates are continuously compounded; the curve extends flat beyond its
    first and last pillars.
    """

    maturities: tuple[float, ...]
    zero_rates: tuple[float, ...]

    def __post_init__(self) -> None:
        mats = tuple(float(t) for t in self.maturities)
        rates = tuple(float(z) for z in self.zero_rates)
        object.__setattr__(self, "maturities", mats)
        object.__setattr__(self, "zero_rates", rates)
        if not mats:
            raise ModelInputError("zero curve needs at least one pillar")
        if len(mats) != len(rates):
            raise ModelInputError("zero curve maturities and rates differ in length")
        prev = 0.0
        for t in mats:
            if t <= prev:
                raise ModelInputError("zero curve maturities must be strictly ascending")
            prev = t
        for z in rates:
            if not math.isfinite(z):
                raise ModelInputError("zero rates must be finite")

    def zero(self, t: float) -> float:
        return float(np.interp(t, self.maturities, self.zero_rates))

    def discount(self, t: float) -> float:
        return math.exp(-self.zero(t) * t)


# A bare float is a flat continuously-compounded risk-free rate.
DiscountSpec = Union[float, ZeroCurve]


@dataclass(frozen=True)
class CalibrationResult:
    """Bootstrapped yearly intensities and their diagnostics."""

    intensities: tuple[tuple[int, float], ...]  # (year, lambda)
    conditional_probs: tuple[tuple[int, float], ...]  # (year, 1 - exp(-lambda))
    residuals: tuple[float, ...]  # model price minus quote, per quote

    @property
    def intensity_curve(self) -> PiecewiseConstantIntensity:
        values = tuple(lam for _, lam in self.intensities)
        return PiecewiseConstantIntensity(breaks=tuple(range(1, len(values))), values=values)


def bootstrap(
    quotes: Sequence[BondQuote],
    recovery: float,
    discount: DiscountSpec,
    lambda_max: float = DEFAULT_LAMBDA_MAX,
) -> CalibrationResult:
    """Sequentially solve one intensity per year so each quote reprices.

    Quotes must be sorted strictly ascending in maturity. Raises
    NoRootInRange (naming the maturity) when no intensity in
    [0, lambda_max] can reproduce a quote, e.g. when the quote is priced
    above its zero-intensity model value.
    """
    if not quotes:
        raise ModelInputError("at least one quote is required")
    if not 0.0 <= recovery <= _FACE:
        raise ModelInputError(f"recovery {recovery} outside [0, {_FACE}]")
    if lambda_max <= 0.0:
        raise ModelInputError("lambda_max must be positive")
    prev = 0.0
    for q in quotes:
        if q.maturity <= prev:
            raise NonMonotoneMaturities(
                f"quote maturities must be strictly ascending; {q.maturity} follows {prev}"
            )
        prev = q.maturity

    lams: list[float] = []
    residuals: list[float] = []
    solved_through = 0
    for q in quotes:
        year = math.ceil(q.maturity)
        if year <= solved_through:
            raise ModelInputError(
                f"quote at maturity {q.maturity} falls in year {year}, already calibrated"
            )
        fill = lams[-1] if lams else 0.0
        while len(lams) < year - 1:
            lams.append(fill)

        def objective(x: float, q: BondQuote = q) -> float:
            return _model_price(q, lams + [x], recovery, discount) - q.clean_price

        try:
            lam = solve_root(RootProblem(objective, 0.0, lambda_max, tol_x=1e-14))
        except NoSignChange as exc:
            raise NoRootInRange(
                f"no intensity in [0, {lambda_max}] reprices the quote at maturity {q.maturity}"
            ) from exc
        lams.append(lam)
        solved_through = year
        residuals.append(_model_price(q, lams, recovery, discount) - q.clean_price)

    return CalibrationResult(
        intensities=tuple((i + 1, lam) for i, lam in enumerate(lams)),
        conditional_probs=tuple((i + 1, -math.expm1(-lam)) for i, lam in enumerate(lams)),
        residuals=tuple(residuals),
    )


def conditional_default_probabilities(result: CalibrationResult) -> list[float]:
    """Per-year probability of default given survival: 1 - exp(-lambda)."""
    return [-math.expm1(-lam) for _, lam in result.intensities]


def _model_price(
    quote: BondQuote, lams: Sequence[float], recovery: float, discount: DiscountSpec
) -> float:
    intensity = PiecewiseConstantIntensity(
        breaks=tuple(float(i) for i in range(1, len(lams))),
        values=tuple(lams),
    )
    if isinstance(discount, ZeroCurve):
        return _curve_discounted_price(quote, intensity, recovery, discount)
    bond = ContinuousBond(coupon=_FACE * quote.coupon_rate, maturity=quote.maturity)
    return continuous_price(bond, CreditAssumptions(intensity, recovery), float(discount))


def _curve_discounted_price(
    quote: BondQuote,
    intensity: PiecewiseConstantIntensity,
    recovery: float,
    curve: ZeroCurve,
) -> float:
    coupon = _FACE * quote.coupon_rate
    pv = 0.0
    surv = 1.0
    for start, end, lam in intensity.segments(quote.maturity):
        for a, b in _split_at_pillars(start, end, curve.maturities):

            def integrand(t: float, lam=lam, start=start, surv=surv) -> float:
                return (
                    (coupon + recovery * lam)
                    * curve.discount(t)
                    * surv
                    * math.exp(-lam * (t - start))
                )

            pv += integrate(QuadProblem(integrand, a, b, _CURVE_QUAD_TOL))
        surv *= math.exp(-lam * (end - start))
    return pv + _FACE * curve.discount(quote.maturity) * surv


def _split_at_pillars(
    start: float, end: float, pillars: Sequence[float]
) -> list[tuple[float, float]]:
    points = [start]
    points.extend(t for t in pillars if start < t < end)
    points.append(end)
    return list(zip(points, points[1:]))
