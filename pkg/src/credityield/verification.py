"""Built-in regression suite over published reference values.

Each case recomputes a yield or par rate from first principles and
compares it against the reference number at the tolerance used when the
number was reported (yields rounded to basis points). The CLI `verify`
command prints one line per case.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from . import discrete

_R = 80.0
_RATE = 0.03


@dataclass(frozen=True)
class ReferenceCase:
    name: str
    expected: float
    tol: float
    compute: Callable[[], float]


@dataclass(frozen=True)
class VerificationOutcome:
    case: ReferenceCase
    value: float

    @property
    def passed(self) -> bool:
        return abs(self.value - self.case.expected) <= self.case.tol


def _model_ytm(coupon: float, maturity: int, lam: float, rate: float = _RATE) -> float:
    bond = discrete.DiscreteBond(coupon=coupon, maturity=maturity)
    credit = discrete.CreditAssumptions(lam, _R)
    return discrete.ytm(discrete.price(bond, credit, rate), bond)


def _stepping_down_ytm(coupon_rate: float) -> float:
    # Conditional default probability starting at 10.0% and stepping
    # down 0.2% per year.
    path = [0.100 - 0.002 * t for t in range(50)]
    bond = discrete.DiscreteBond(coupon=100.0 * coupon_rate, maturity=10)
    credit = discrete.CreditAssumptions(path, _R)
    return discrete.ytm(discrete.price(bond, credit, _RATE), bond)


def _crossing_share() -> float:
    """Fraction of maturities 13..30 where the low-hazard zero-coupon
    yield exceeds the high-hazard one (1.0 when the curves have crossed)."""
    hits = 0
    maturities = range(13, 31)
    for t_mat in maturities:
        bond = discrete.DiscreteBond(coupon=0.0, maturity=t_mat)
        y_low = discrete.ytm(
            discrete.price(bond, discrete.CreditAssumptions(0.01, _R), _RATE), bond
        )
        y_high = discrete.ytm(
            discrete.price(bond, discrete.CreditAssumptions(0.10, _R), _RATE), bond
        )
        if y_low > y_high:
            hits += 1
    return hits / len(maturities)


def reference_cases() -> list[ReferenceCase]:
    return [
        ReferenceCase(
            "ytm zero-coupon T=10, hazard 10%",
            0.0341,
            1e-4,
            lambda: _model_ytm(0.0, 10, 0.10),
        ),
        ReferenceCase(
            "ytm coupon 10 T=10, hazard 10%",
            0.0679,
            1e-4,
            lambda: _model_ytm(10.0, 10, 0.10),
        ),
        ReferenceCase(
            "ytm coupon 15 T=10, hazard 1%",
            0.0353,
            1e-4,
            lambda: _model_ytm(15.0, 10, 0.01),
        ),
        ReferenceCase(
            "par yield, hazard 1%",
            0.0323,
            5e-5,
            lambda: discrete.par_yield(discrete.CreditAssumptions(0.01, _R), _RATE),
        ),
        ReferenceCase(
            "par yield, hazard 10%",
            0.0556,
            5e-5,
            lambda: discrete.par_yield(discrete.CreditAssumptions(0.10, _R), _RATE),
        ),
        ReferenceCase(
            "ytm zero-coupon T=15, hazard 10%, rate 3%",
            0.0274,
            1e-4,
            lambda: _model_ytm(0.0, 15, 0.10, rate=0.03),
        ),
        ReferenceCase(
            "ytm zero-coupon T=15, hazard 10%, rate 2%",
            0.0224,
            1e-4,
            lambda: _model_ytm(0.0, 15, 0.10, rate=0.02),
        ),
        ReferenceCase(
            "ytm T=10, coupon rate 4%, hazard stepping down from 10%",
            0.0492,
            2e-4,
            lambda: _stepping_down_ytm(0.04),
        ),
        ReferenceCase(
            "ytm T=10, coupon rate 7%, hazard stepping down from 10%",
            0.0584,
            2e-4,
            lambda: _stepping_down_ytm(0.07),
        ),
        ReferenceCase(
            "zero-coupon curves crossed for maturities 13..30",
            1.0,
            0.0,
            _crossing_share,
        ),
    ]


def run_verification() -> list[VerificationOutcome]:
    return [VerificationOutcome(case, case.compute()) for case in reference_cases()]
