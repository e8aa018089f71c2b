"""Yield term-structure scenario grids and slope classification.

Evaluates price, yield-to-maturity, and spread over a maturity x coupon
grid under one credit assumption, in either model. Output rows are
maturity-major and deterministic, so identical scenarios produce
byte-identical CSV files.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import IO, Optional, Sequence, Union

from . import continuous, discrete
from .errors import ModelInputError, SolverFailure

CSV_FIELDS = ("model", "maturity", "coupon_rate", "price", "ytm", "spread")

_FACE = 100.0
_FLAT_TOL = 1e-10

HazardLike = Union[float, Sequence[float], continuous.PiecewiseConstantIntensity]


@dataclass(frozen=True)
class ScenarioSpec:
    """A grid request: model, maturities, coupon rates, credit and rate."""

    model: str  # "discrete" | "continuous"
    maturities: tuple[float, ...]
    coupon_rates: tuple[float, ...]
    hazard: HazardLike
    recovery: float
    risk_free: float

    def __post_init__(self) -> None:
        if self.model not in ("discrete", "continuous"):
            raise ModelInputError(f"model must be 'discrete' or 'continuous', got {self.model!r}")
        if not self.maturities:
            raise ModelInputError("at least one maturity is required")
        if not self.coupon_rates:
            raise ModelInputError("at least one coupon rate is required")
        prev = 0.0
        for t in self.maturities:
            if t <= prev:
                raise ModelInputError("maturities must be strictly ascending and positive")
            prev = t
        if self.model == "discrete":
            for t in self.maturities:
                if int(t) != t:
                    raise ModelInputError(f"discrete maturities must be integers, got {t}")


@dataclass(frozen=True)
class CurveRow:
    model: str
    maturity: float
    coupon_rate: float
    price: float
    ytm: float
    spread: float


@dataclass
class CurveTable:
    """Grid results plus the flat par-yield reference when it exists."""

    rows: list[CurveRow]
    par_yield: Optional[float] = None

    def to_records(self) -> list[dict]:
        return [
            {
                "model": r.model,
                "maturity": r.maturity,
                "coupon_rate": r.coupon_rate,
                "price": r.price,
                "ytm": r.ytm,
                "spread": r.spread,
            }
            for r in self.rows
        ]

    def write_csv(self, stream: IO[str]) -> None:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(CSV_FIELDS)
        for r in self.rows:
            writer.writerow(
                [
                    r.model,
                    _fmt(r.maturity),
                    _fmt(r.coupon_rate),
                    _fmt(r.price),
                    _fmt(r.ytm),
                    _fmt(r.spread),
                ]
            )

    def ytm_column(self, coupon_rate: float) -> list[float]:
        """Yields across maturities for one coupon rate, in grid order."""
        return [r.ytm for r in self.rows if r.coupon_rate == coupon_rate]


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def generate(spec: ScenarioSpec) -> CurveTable:
    """Price the grid and solve yields, one row per (maturity, coupon)."""
    rows = []
    for t_mat in spec.maturities:
        for c in spec.coupon_rates:
            try:
                price_value, ytm_value = _evaluate_cell(spec, t_mat, c)
            except (ModelInputError, SolverFailure) as exc:
                raise type(exc)(f"maturity {t_mat}, coupon rate {c}: {exc}") from exc
            rows.append(
                CurveRow(
                    model=spec.model,
                    maturity=float(t_mat),
                    coupon_rate=float(c),
                    price=price_value,
                    ytm=ytm_value,
                    spread=ytm_value - spec.risk_free,
                )
            )
    return CurveTable(rows=rows, par_yield=_par_reference(spec))


def _evaluate_cell(spec: ScenarioSpec, t_mat: float, c: float) -> tuple[float, float]:
    if spec.model == "discrete":
        bond = discrete.DiscreteBond(coupon=_FACE * c, maturity=int(t_mat))
        credit = discrete.CreditAssumptions(spec.hazard, spec.recovery)
        price_value = discrete.price(bond, credit, spec.risk_free)
        return price_value, discrete.ytm(price_value, bond)
    bond_c = continuous.ContinuousBond(coupon=_FACE * c, maturity=float(t_mat))
    credit_c = continuous.CreditAssumptions(spec.hazard, spec.recovery)
    price_value = continuous.price(bond_c, credit_c, spec.risk_free)
    return price_value, continuous.ytm(price_value, bond_c)


def _par_reference(spec: ScenarioSpec) -> Optional[float]:
    if not isinstance(spec.hazard, (int, float)):
        return None
    if spec.model == "discrete":
        if float(spec.hazard) == 1.0:
            return None
        credit = discrete.CreditAssumptions(spec.hazard, spec.recovery)
        return discrete.par_yield(credit, spec.risk_free)
    credit_c = continuous.CreditAssumptions(spec.hazard, spec.recovery)
    return continuous.par_yield(credit_c, spec.risk_free)


def classify_slope(values: Sequence[float], tol: float = _FLAT_TOL) -> str:
    """Shape of a yield column across maturities.

    Differences within ``tol`` of zero count as flat. "humped" means the
    nonzero differences switch sign exactly once, from rising to falling.
    """
    if len(values) < 2:
        raise ModelInputError("at least two values are required to classify a slope")
    signs = []
    for a, b in zip(values, values[1:]):
        d = b - a
        signs.append(0 if abs(d) <= tol else (1 if d > 0 else -1))
    nonzero = [s for s in signs if s != 0]
    if not nonzero:
        return "flat"
    if all(s >= 0 for s in signs):
        return "monotone-increasing"
    if all(s <= 0 for s in signs):
        return "monotone-decreasing"
    flips = sum(1 for a, b in zip(nonzero, nonzero[1:]) if a != b)
    if flips == 1 and nonzero[0] > 0:
        return "humped"
    return "other"
