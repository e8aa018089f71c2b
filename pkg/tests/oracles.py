"""Independent brute-force oracles used across the test suite.

These deliberately avoid the library's code paths: prices come from
plain summation loops or scipy's Gauss-Kronrod quadrature, never from
the closed forms under test.
"""

import math

from scipy.integrate import quad


def discrete_price_sum(coupon, maturity, hazard, recovery, rate, face=100.0):
    """Direct summation of the discrete pricing equation, term by term."""
    if isinstance(hazard, (int, float)):
        hazard = [hazard] * maturity
    pv = 0.0
    for t in range(1, maturity + 1):
        survive_t = 1.0
        for n in range(t):
            survive_t *= 1.0 - hazard[n]
        survive_before = 1.0
        for n in range(t - 1):
            survive_before *= 1.0 - hazard[n]
        disc = (1.0 + rate) ** t
        pv += coupon * survive_t / disc
        pv += recovery * hazard[t - 1] * survive_before / disc
    survive_all = 1.0
    for n in range(maturity):
        survive_all *= 1.0 - hazard[n]
    return pv + face * survive_all / (1.0 + rate) ** maturity


def discrete_nominal_pv(yield_rate, coupon, maturity, face=100.0):
    """Nominal cash flows discounted term by term at one rate."""
    pv = sum(coupon / (1.0 + yield_rate) ** t for t in range(1, maturity + 1))
    return pv + face / (1.0 + yield_rate) ** maturity


def piecewise_intensity_fn(breaks, values):
    """lambda(t) for a right-continuous step intensity."""

    def lam(t):
        for b, v in zip(breaks, values):
            if t <= b:
                return v
        return values[-1]

    return lam


def cumulative_hazard(lam_fn, t, points=()):
    """Integral of lambda over [0, t] via scipy quadrature."""
    inner = sorted(p for p in points if 0.0 < p < t)
    total, _ = quad(lam_fn, 0.0, t, points=inner or None, limit=200, epsabs=1e-13)
    return total


def continuous_price_quad(coupon, maturity, lam_fn, recovery, rate, points=(), face=100.0):
    """Quadrature of the continuous pricing integrals with independent
    survival evaluation."""

    def survival(t):
        return math.exp(-cumulative_hazard(lam_fn, t, points))

    def integrand(t):
        return (coupon + recovery * lam_fn(t)) * math.exp(-rate * t) * survival(t)

    inner = sorted(p for p in points if 0.0 < p < maturity)
    pv, _ = quad(integrand, 0.0, maturity, points=inner or None, limit=200, epsabs=1e-11)
    return pv + face * math.exp(-rate * maturity) * survival(maturity)


def cds_legs_quad(lam_fn, maturity, rate, kernel, points=()):
    """Default and premium legs by quadrature, for either weight kernel."""
    if kernel == "paper":

        def weight(s):
            return math.exp(-(rate + lam_fn(s)) * s)

    else:

        def weight(s):
            return math.exp(-rate * s - cumulative_hazard(lam_fn, s, points))

    inner = sorted(p for p in points if 0.0 < p < maturity)
    default_leg, _ = quad(
        lambda s: lam_fn(s) * weight(s), 0.0, maturity, points=inner or None, limit=200
    )
    premium_leg, _ = quad(weight, 0.0, maturity, points=inner or None, limit=200)
    return default_leg, premium_leg
