"""Discrete-time defaultable coupon bond analytics.

Bonds pay an annual coupon C, return the face value at an integer
maturity T, and default in period t (given survival to t-1) with
conditional probability lam. Default pays the recovery amount R at the
end of the defaulting period. With a flat risk-free rate r the price is
the expected discounted payoff:

    P(T) = sum_t C * (1-lam)^t / (1+r)^t
         + sum_t R * lam * (1-lam)^(t-1) / (1+r)^t
         + F * (1-lam)^T / (1+r)^T

which collapses to a geometric-series closed form for constant lam < 1.
A per-period hazard sequence (lam_1, ..., lam_T) generalizes the powers
of (1-lam) to running survival products.

The yield-to-maturity y discounts the *nominal* cash flows:

    P = sum_t C / (1+y)^t + F / (1+y)^T

so y blends default risk with the contractual coupon and maturity. The
par yield c_par = (r + (1 - R/F) * lam) / (1 - lam) is the coupon rate at
which every maturity prices exactly at face.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

from .errors import DegenerateHazard, HazardTooShort, ModelInputError, NoSolution
from .numerics import NoSignChange, RootProblem, expand_upper_bracket, solve_root

# Per-period hazard: a single conditional default probability, or one per period.
HazardSpec = Union[float, Sequence[float]]

_YTM_RESIDUAL_REL = 1e-12  # price residual relative to face
_YTM_POLISH_STEPS = 4


@dataclass(frozen=True)
class DiscreteBond:
    """Contractual terms: coupon amount per period, integer maturity, face."""

    coupon: float
    maturity: int
    face: float = 100.0

    def __post_init__(self) -> None:
        if self.face <= 0.0:
            raise ModelInputError("face must be positive")
        if self.coupon < 0.0:
            raise ModelInputError("coupon must be nonnegative")
        if self.maturity < 1 or int(self.maturity) != self.maturity:
            raise ModelInputError("maturity must be a positive integer number of periods")

    @property
    def coupon_rate(self) -> float:
        return self.coupon / self.face


@dataclass(frozen=True)
class CreditAssumptions:
    """Default-risk inputs: per-period hazard plus recovery amount."""

    hazard: HazardSpec
    recovery: float


def hazard_path(hazard: HazardSpec, maturity: int) -> tuple[float, ...]:
    """Expand a hazard spec to one conditional default probability per period.

    Raises HazardTooShort when a sequence does not cover the maturity.
    """
    if isinstance(hazard, (int, float)):
        lam = float(hazard)
        _check_probability(lam)
        return (lam,) * maturity
    path = tuple(float(x) for x in hazard)
    if len(path) < maturity:
        raise HazardTooShort(
            f"hazard sequence has {len(path)} entries but maturity is {maturity} periods"
        )
    for lam in path:
        _check_probability(lam)
    return path[:maturity]


def _check_probability(lam: float) -> None:
    if not 0.0 <= lam <= 1.0:
        raise ModelInputError(f"conditional default probability {lam} outside [0, 1]")


def _validate(bond: DiscreteBond, credit: CreditAssumptions, rate: float) -> None:
    if rate < 0.0:
        raise ModelInputError("risk-free rate must be nonnegative")
    if not 0.0 <= credit.recovery <= bond.face:
        raise ModelInputError(
            f"recovery {credit.recovery} outside [0, face={bond.face}]"
        )


def price(bond: DiscreteBond, credit: CreditAssumptions, rate: float) -> float:
    """Expected discounted payoff of the bond.

    Constant hazard below 1 uses the geometric closed form; a
    non-constant sequence (or certain default) uses the
    survival-product summation. A sequence whose entries are all equal
    takes the constant path, so the two spellings price identically.
    """
    _validate(bond, credit, rate)
    path = hazard_path(credit.hazard, bond.maturity)
    lam0 = path[0]
    if lam0 < 1.0 and all(lam == lam0 for lam in path):
        return _price_closed_form(bond, lam0, credit.recovery, rate)
    return _price_summation(bond, path, credit.recovery, rate)


def _price_closed_form(bond: DiscreteBond, lam: float, recovery: float, rate: float) -> float:
    c, t_mat, face = bond.coupon, bond.maturity, bond.face
    if rate + lam == 0.0:  # only when rate = lam = 0
        return c * t_mat + face
    x = (1.0 - lam) / (1.0 + rate)  # one-period survival-discount factor
    x_t = x**t_mat
    annuity = (c * (1.0 - lam) + recovery * lam) / (rate + lam)
    return annuity * (1.0 - x_t) + face * x_t


def _price_summation(
    bond: DiscreteBond, path: tuple[float, ...], recovery: float, rate: float
) -> float:
    c, face = bond.coupon, bond.face
    surviving = 1.0  # probability of no default before the period starts
    disc = 1.0
    pv = 0.0
    for lam in path:
        disc /= 1.0 + rate
        pv += disc * surviving * (c * (1.0 - lam) + recovery * lam)
        surviving *= 1.0 - lam
    return pv + disc * surviving * face


def nominal_value(yield_rate: float, bond: DiscreteBond) -> float:
    """Present value of the nominal cash flows at a single discount rate."""
    c, t_mat, face = bond.coupon, bond.maturity, bond.face
    if yield_rate == 0.0:
        return c * t_mat + face
    growth = math.log1p(yield_rate)
    disc_t = math.exp(-t_mat * growth)  # (1+y)^-T
    annuity = -math.expm1(-t_mat * growth) / yield_rate
    return c * annuity + face * disc_t


def _nominal_value_and_slope(yield_rate: float, bond: DiscreteBond) -> tuple[float, float]:
    # Direct O(T) sums; only used for the final Newton polish.
    c, t_mat, face = bond.coupon, bond.maturity, bond.face
    q = 1.0 / (1.0 + yield_rate)
    d = 1.0
    pv = 0.0
    slope = 0.0
    for t in range(1, t_mat + 1):
        d *= q
        pv += c * d
        slope -= t * c * d * q
    pv += face * d
    slope -= t_mat * face * d * q
    return pv, slope


def ytm(price_value: float, bond: DiscreteBond) -> float:
    """Yield-to-maturity: the rate equating nominal cash flows to the price.

    Unique because the nominal value is strictly decreasing in the
    yield. Solved by bracketed root finding on [-99%, 100%] with upper
    doublings, then Newton-polished to a price residual within
    1e-12 of face.

    Raises NoSolution when no admissible yield reproduces the price.
    """
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
    """Coupon rate at which the bond prices exactly at face, any maturity.

    Requires a constant hazard; certain default (lam = 1) leaves no
    surviving coupon stream and the par yield is undefined.
    """
    lam = _constant_hazard(credit)
    if lam == 1.0:
        raise DegenerateHazard("par yield undefined for certain default (hazard = 1)")
    if rate < 0.0:
        raise ModelInputError("risk-free rate must be nonnegative")
    if not 0.0 <= credit.recovery <= face:
        raise ModelInputError(f"recovery {credit.recovery} outside [0, face={face}]")
    return (rate + (1.0 - credit.recovery / face) * lam) / (1.0 - lam)


def ytm_upper_bound(credit: CreditAssumptions, rate: float, face: float = 100.0) -> float:
    """Coupon-independent cap on the yield-to-maturity.

    Equals the par yield plus the recovery-driven gap
    (R * lam / face) / (1 - lam); every yield stays strictly below it
    unless lam = 0 or R = 0, where it collapses onto the par yield.
    """
    lam = _constant_hazard(credit)
    if lam == 1.0:
        raise DegenerateHazard("bound undefined for certain default (hazard = 1)")
    gap = (credit.recovery * lam / face) / (1.0 - lam)
    return par_yield(credit, rate, face) + gap


def bond_spread(yield_rate: float, rate: float) -> float:
    """Yield-to-maturity in excess of the risk-free rate."""
    return yield_rate - rate


def price_increment(bond: DiscreteBond, credit: CreditAssumptions, rate: float) -> float:
    """Closed-form price change from extending the maturity by one period.

    Returns price(T+1) - price(T) for a constant hazard. The increment
    carries the sign of (coupon - par coupon), so prices rise with
    maturity above par and fall below it.
    """
    lam = _constant_hazard(credit)
    _validate(bond, credit, rate)
    c, t_mat, face = bond.coupon, bond.maturity, bond.face
    x = (1.0 - lam) / (1.0 + rate)
    step = (c * (1.0 - lam) + credit.recovery * lam + face * (1.0 - lam)) / (1.0 + rate) - face
    return x**t_mat * step


def _constant_hazard(credit: CreditAssumptions) -> float:
    if not isinstance(credit.hazard, (int, float)):
        raise ModelInputError("operation requires a constant hazard, not a sequence")
    lam = float(credit.hazard)
    _check_probability(lam)
    return lam
