"""Fair CDS spreads and term-structure slope analysis.

The fair spread equates the expected discounted default leg (protection
payout 1-R at default) with the expected discounted premium leg (spread
paid while the reference survives). Recovery enters as a *fraction* of
notional here, unlike the bond modules where it is an amount per 100.

Discrete time, premium paid in arrears at t = 1..T:

    S(T) = (1-R) * sum_t lam_t * prod_{j<t}(1-lam_j) / (1+r)^t
                 / sum_t prod_{j<=t}(1-lam_j) / (1+r)^t

which reduces to (1-R) * lam / (1-lam) for a constant hazard, flat in T.

Continuous time, premium paid continuously:

    S(T) = (1-R) * int_0^T lam(s) w(s) ds / int_0^T w(s) ds

with a choice of discount weight w:

  * kernel="paper":       w(s) = exp(-(r + lam(s)) * s) -- the level at s
                          is applied over the whole lookback [0, s];
  * kernel="consistent":  w(s) = exp(-r s) * exp(-int_0^s lam) -- the
                          exact survival probability.

The kernels coincide whenever lam is constant, where both give
S = (1-R) * lam. Piecewise-constant hazards use closed-form segment
integrals; piecewise-linear hazards are integrated adaptively.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Sequence, Union

from .continuous import PiecewiseConstantIntensity
from .discrete import hazard_path
from .errors import DegenerateHazard, ModelInputError, ZeroPremiumLeg
from .numerics import QuadProblem, integrate

KERNEL_CHOICES = ("paper", "consistent")

_SLOPE_ZERO_REL = 1e-12  # |sign quantity| below this times the premium leg counts as flat
_QUAD_TOL = 1e-10


@dataclass(frozen=True)
class CdsSpec:
    """Contract terms: maturity, recovery fraction of notional, flat rate."""

    maturity: float
    recovery_fraction: float
    risk_free: float

    def __post_init__(self) -> None:
        if self.maturity <= 0.0:
            raise ModelInputError("maturity must be positive")
        if not 0.0 <= self.recovery_fraction <= 1.0:
            raise ModelInputError("recovery_fraction must lie in [0, 1]")
        if self.risk_free < 0.0:
            raise ModelInputError("risk-free rate must be nonnegative")


@dataclass(frozen=True)
class PiecewiseLinearIntensity:
    """Continuous piecewise-linear intensity through (time, level) knots.

    Flat extension applies before the first knot and after the last one,
    so the function is defined (and continuous) on all of t >= 0.
    """

    knots: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        knots = tuple((float(t), float(v)) for t, v in self.knots)
        object.__setattr__(self, "knots", knots)
        if not knots:
            raise ModelInputError("at least one knot is required")
        prev = -math.inf
        for t, v in knots:
            if t < 0.0:
                raise ModelInputError("knot times must be nonnegative")
            if t <= prev:
                raise ModelInputError("knot times must be strictly ascending")
            if v < 0.0:
                raise ModelInputError(f"intensity level {v} must be nonnegative")
            prev = t

    def level(self, t: float) -> float:
        knots = self.knots
        if t <= knots[0][0]:
            return knots[0][1]
        for (t0, v0), (t1, v1) in zip(knots, knots[1:]):
            if t <= t1:
                return v0 + (v1 - v0) * (t - t0) / (t1 - t0)
        return knots[-1][1]

    def cumulative(self, t: float) -> float:
        """Integral of the intensity from 0 to t (piecewise trapezoids)."""
        knots = self.knots
        total = knots[0][1] * min(t, knots[0][0])
        if t <= knots[0][0]:
            return total
        for (t0, v0), (t1, v1) in zip(knots, knots[1:]):
            if t <= t0:
                break
            end = min(t, t1)
            v_end = v0 + (v1 - v0) * (end - t0) / (t1 - t0)
            total += 0.5 * (v0 + v_end) * (end - t0)
        if t > knots[-1][0]:
            total += knots[-1][1] * (t - knots[-1][0])
        return total


CdsHazard = Union[float, Sequence[float], PiecewiseConstantIntensity, PiecewiseLinearIntensity]


def spread_discrete(hazard: float | Sequence[float], spec: CdsSpec) -> float:
    """Fair spread with annual premium payments in arrears.

    A constant hazard gives (1-R) * lam / (1-lam) for every maturity; a
    sequence is priced leg by leg. Certain default in the first period
    zeroes the premium leg and raises DegenerateHazard.
    """
    periods = _integer_maturity(spec.maturity)
    loss = 1.0 - spec.recovery_fraction
    if isinstance(hazard, (int, float)):
        lam = float(hazard)
        if not 0.0 <= lam <= 1.0:
            raise ModelInputError(f"conditional default probability {lam} outside [0, 1]")
        if lam == 1.0:
            raise DegenerateHazard("premium leg vanishes under certain default")
        return loss * lam / (1.0 - lam)
    path = hazard_path(hazard, periods)
    default_leg = 0.0
    premium_leg = 0.0
    surviving = 1.0
    disc = 1.0
    for lam in path:
        disc /= 1.0 + spec.risk_free
        default_leg += disc * surviving * lam
        surviving *= 1.0 - lam
        premium_leg += disc * surviving
    if premium_leg == 0.0:
        raise DegenerateHazard("premium leg vanishes under certain default")
    return loss * default_leg / premium_leg


def _integer_maturity(maturity: float) -> int:
    if maturity <= 0 or int(maturity) != maturity:
        raise ModelInputError(
            f"discrete CDS maturity must be a positive integer number of periods, got {maturity}"
        )
    return int(maturity)


def spread_continuous(hazard: CdsHazard, spec: CdsSpec, kernel: str = "paper") -> float:
    """Fair spread with continuously paid premium.

    Constant hazards return (1-R)*lam under either kernel.
    Piecewise-constant hazards use closed-form segment integrals;
    piecewise-linear ones adaptive quadrature at tolerance 1e-10.
    """
    if kernel not in KERNEL_CHOICES:
        raise ModelInputError(f"kernel must be one of {KERNEL_CHOICES}, got {kernel!r}")
    loss = 1.0 - spec.recovery_fraction
    horizon = spec.maturity
    rate = spec.risk_free
    if isinstance(hazard, (int, float)):
        lam = float(hazard)
        if lam < 0.0:
            raise ModelInputError(f"intensity {lam} must be nonnegative")
        return loss * lam
    if isinstance(hazard, PiecewiseConstantIntensity):
        default_leg, premium_leg = _piecewise_constant_legs(hazard, horizon, rate, kernel)
    elif isinstance(hazard, PiecewiseLinearIntensity):
        default_leg, premium_leg = _piecewise_linear_legs(hazard, horizon, rate, kernel)
    else:
        raise ModelInputError(f"unsupported continuous hazard type {type(hazard).__name__}")
    if premium_leg <= 0.0:
        raise ZeroPremiumLeg(f"premium leg {premium_leg} is not positive")
    return loss * default_leg / premium_leg


def _expm1_ratio(w: float, h: float) -> float:
    if w == 0.0:
        return h
    return -math.expm1(-w * h) / w


def _piecewise_constant_legs(
    hazard: PiecewiseConstantIntensity, horizon: float, rate: float, kernel: str
) -> tuple[float, float]:
    default_leg = 0.0
    premium_leg = 0.0
    surv = 1.0  # survival to segment start; only the consistent kernel uses it
    for start, end, lam in hazard.segments(horizon):
        h = end - start
        if kernel == "paper":
            piece = math.exp(-(rate + lam) * start) * _expm1_ratio(rate + lam, h)
        else:
            piece = surv * math.exp(-rate * start) * _expm1_ratio(rate + lam, h)
            surv *= math.exp(-lam * h)
        premium_leg += piece
        default_leg += lam * piece
    return default_leg, premium_leg


def _piecewise_linear_legs(
    hazard: PiecewiseLinearIntensity, horizon: float, rate: float, kernel: str
) -> tuple[float, float]:
    if kernel == "paper":

        def weight(s: float) -> float:
            return math.exp(-(rate + hazard.level(s)) * s)

    else:

        def weight(s: float) -> float:
            return math.exp(-rate * s - hazard.cumulative(s))

    premium_leg = _integrate_over_knots(weight, hazard, horizon)
    default_leg = _integrate_over_knots(lambda s: hazard.level(s) * weight(s), hazard, horizon)
    return default_leg, premium_leg


def _integrate_over_knots(f, hazard: PiecewiseLinearIntensity, horizon: float) -> float:
    # Split at knots so every piece is smooth.
    points = [0.0]
    points.extend(t for t, _ in hazard.knots if 0.0 < t < horizon)
    points.append(horizon)
    tol = _QUAD_TOL / max(len(points) - 1, 1)
    return sum(
        integrate(QuadProblem(f, a, b, tol)) for a, b in zip(points, points[1:])
    )


def slope_sign(hazard: PiecewiseLinearIntensity, spec: CdsSpec, horizon: float) -> int:
    """Sign of the spread-curve slope at the given horizon.

    The spread is locally increasing, flat, or decreasing in maturity
    according to the sign of

        lam(T) * int_0^T w(s) ds - int_0^T lam(s) w(s) ds

    with the "paper" weight w(s) = exp(-(r + lam(s)) s). Values within
    1e-12 of zero relative to the premium leg report as flat (0).
    """
    if horizon <= 0.0:
        raise ModelInputError("horizon must be positive")
    default_leg, premium_leg = _piecewise_linear_legs(hazard, horizon, spec.risk_free, "paper")
    quantity = hazard.level(horizon) * premium_leg - default_leg
    if abs(quantity) < _SLOPE_ZERO_REL * premium_leg:
        return 0
    return 1 if quantity > 0.0 else -1


def spread_curve(
    hazard: CdsHazard,
    spec: CdsSpec,
    maturities: Sequence[float],
    model: str,
    kernel: str = "paper",
) -> list[tuple[float, float]]:
    """Fair spread at each maturity, holding the other terms fixed."""
    if model not in ("discrete", "continuous"):
        raise ModelInputError(f"model must be 'discrete' or 'continuous', got {model!r}")
    prev = 0.0
    for t in maturities:
        if t <= prev:
            raise ModelInputError("maturities must be strictly ascending and positive")
        prev = t
    out = []
    for t in maturities:
        point = replace(spec, maturity=float(t))
        if model == "discrete":
            out.append((float(t), spread_discrete(hazard, point)))
        else:
            out.append((float(t), spread_continuous(hazard, point, kernel)))
    return out
