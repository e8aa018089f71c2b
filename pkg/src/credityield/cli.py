"""Command-line interface.

Subcommands: price, ytm, par-yield, curve, cds, bootstrap, verify.
All rates are decimals (0.03 means 3%); percent signs are rejected.
Exit codes: 0 success, 2 invalid input, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from typing import IO, Optional, Sequence

from . import calibration, cds, continuous, curves, discrete, verification
from .errors import ModelInputError, SolverFailure

_FACE = 100.0

QUOTE_FIELDS = ["maturity_years", "coupon_rate", "clean_price"]
ZERO_CURVE_FIELDS = ["maturity_years", "zero_rate"]
HAZARD_FIELDS = ["period_or_time", "lambda"]


def _decimal(text: str) -> float:
    if "%" in text:
        raise argparse.ArgumentTypeError(
            f"{text!r}: rates are decimals (0.03 = 3%); percent signs are not accepted"
        )
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a number") from None


def _maturity_list(text: str) -> list[float]:
    """A maturity grid: single value, comma list, or inclusive range a:b."""
    if ":" in text:
        lo_text, hi_text = text.split(":", 1)
        lo, hi = int(lo_text), int(hi_text)
        if hi < lo:
            raise argparse.ArgumentTypeError(f"empty maturity range {text!r}")
        return [float(t) for t in range(lo, hi + 1)]
    return [_decimal(part) for part in text.split(",") if part]


def _rate_list(text: str) -> list[float]:
    return [_decimal(part) for part in text.split(",") if part]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="credityield",
        description="Defaultable-bond and CDS analytics under reduced-form default risk.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, model: bool = True) -> None:
        if model:
            p.add_argument("--model", choices=["discrete", "continuous"], default="discrete")
        p.add_argument("--out", help="output file (default: stdout)")
        p.add_argument("--format", choices=["csv", "json"], default=None)

    p_price = sub.add_parser("price", help="price a bond under credit assumptions")
    add_common(p_price)
    p_price.add_argument("--coupon", type=_decimal, help="coupon amount per period")
    p_price.add_argument("--coupon-rate", type=_decimal, help="coupon as a fraction of face")
    p_price.add_argument("--maturity", type=_decimal, required=True)
    p_price.add_argument("--lambda", dest="hazard_level", type=_decimal)
    p_price.add_argument("--hazard-file", help="CSV with header period_or_time,lambda")
    p_price.add_argument("--recovery", type=_decimal, required=True, help="amount per 100 face")
    p_price.add_argument("--rate", type=_decimal, required=True, help="flat risk-free rate")
    p_price.set_defaults(handler=cmd_price)

    p_ytm = sub.add_parser("ytm", help="yield-to-maturity from a price or from assumptions")
    add_common(p_ytm)
    p_ytm.add_argument("--coupon", type=_decimal)
    p_ytm.add_argument("--coupon-rate", type=_decimal)
    p_ytm.add_argument("--maturity", type=_decimal, required=True)
    p_ytm.add_argument("--price", type=_decimal, help="solve from this price")
    p_ytm.add_argument("--lambda", dest="hazard_level", type=_decimal)
    p_ytm.add_argument("--hazard-file")
    p_ytm.add_argument("--recovery", type=_decimal)
    p_ytm.add_argument("--rate", type=_decimal)
    p_ytm.set_defaults(handler=cmd_ytm)

    p_par = sub.add_parser("par-yield", help="coupon rate that prices the bond at face")
    add_common(p_par)
    p_par.add_argument("--lambda", dest="hazard_level", type=_decimal, required=True)
    p_par.add_argument("--recovery", type=_decimal, required=True)
    p_par.add_argument("--rate", type=_decimal, required=True)
    p_par.set_defaults(handler=cmd_par_yield)

    p_curve = sub.add_parser("curve", help="yield grid over maturities and coupon rates")
    add_common(p_curve)
    p_curve.add_argument("--maturity", type=_maturity_list, required=True,
                         help="single value, comma list, or range a:b")
    p_curve.add_argument("--coupon-rate", type=_rate_list, required=True,
                         help="comma list of coupon rates as decimals")
    p_curve.add_argument("--lambda", dest="hazard_level", type=_decimal)
    p_curve.add_argument("--hazard-file")
    p_curve.add_argument("--recovery", type=_decimal, required=True)
    p_curve.add_argument("--rate", type=_decimal, required=True)
    p_curve.set_defaults(handler=cmd_curve)

    p_cds = sub.add_parser("cds", help="fair CDS spread or spread curve")
    add_common(p_cds)
    p_cds.add_argument("--maturity", type=_maturity_list, required=True)
    p_cds.add_argument("--lambda", dest="hazard_level", type=_decimal)
    p_cds.add_argument("--hazard-file")
    p_cds.add_argument("--hazard-interp", choices=["step", "linear"], default="step",
                       help="treat hazard file rows as piecewise-constant or piecewise-linear")
    p_cds.add_argument("--recovery-fraction", type=_decimal, required=True,
                       help="recovery as a fraction of notional, in [0, 1]")
    p_cds.add_argument("--rate", type=_decimal, required=True)
    p_cds.add_argument("--kernel", choices=list(cds.KERNEL_CHOICES), default="paper")
    p_cds.set_defaults(handler=cmd_cds)

    p_boot = sub.add_parser("bootstrap", help="piecewise-constant intensities from bond quotes")
    add_common(p_boot, model=False)
    p_boot.add_argument("--quotes-file", required=True,
                        help="CSV with header maturity_years,coupon_rate,clean_price")
    p_boot.add_argument("--recovery", type=_decimal, required=True, help="amount per 100 face")
    p_boot.add_argument("--rate", type=_decimal, help="flat risk-free rate")
    p_boot.add_argument("--zero-curve-file", help="CSV with header maturity_years,zero_rate")
    p_boot.add_argument("--lambda-max", type=_decimal, default=calibration.DEFAULT_LAMBDA_MAX)
    p_boot.set_defaults(handler=cmd_bootstrap)

    p_verify = sub.add_parser("verify", help="run the built-in reference regression suite")
    p_verify.set_defaults(handler=cmd_verify)

    return parser


# ---------------------------------------------------------------------------
# input parsing helpers


def _read_csv(path: str, fields: list[str]) -> list[dict]:
    try:
        with open(path, newline="") as f:
            reader = csv.DictReader(f)
            if reader.fieldnames is None or [c.strip() for c in reader.fieldnames] != fields:
                raise ModelInputError(
                    f"{path}: expected header {','.join(fields)}, got "
                    f"{','.join(reader.fieldnames or [])}"
                )
            rows = list(reader)
    except OSError as exc:
        raise ModelInputError(f"cannot read {path}: {exc}") from exc
    if not rows:
        raise ModelInputError(f"{path}: no data rows")
    return rows


def _float_field(row: dict, key: str, path: str) -> float:
    raw = (row.get(key) or "").strip()
    if "%" in raw:
        raise ModelInputError(f"{path}: {key}={raw!r}; rates are decimals, not percentages")
    try:
        return float(raw)
    except ValueError:
        raise ModelInputError(f"{path}: {key}={raw!r} is not a number") from None


def _read_hazard_file(path: str) -> list[tuple[float, float]]:
    rows = _read_csv(path, HAZARD_FIELDS)
    points = [
        (_float_field(r, "period_or_time", path), _float_field(r, "lambda", path)) for r in rows
    ]
    prev = -float("inf")
    for t, _ in points:
        if t <= prev:
            raise ModelInputError(f"{path}: period_or_time must be strictly ascending")
        prev = t
    return points


def _discrete_hazard(args) -> float | list[float]:
    if args.hazard_level is not None:
        return args.hazard_level
    if args.hazard_file:
        return [lam for _, lam in _read_hazard_file(args.hazard_file)]
    raise ModelInputError("either --lambda or --hazard-file is required")


def _continuous_hazard(args) -> float | continuous.PiecewiseConstantIntensity:
    if args.hazard_level is not None:
        return args.hazard_level
    if args.hazard_file:
        points = _read_hazard_file(args.hazard_file)
        times = [t for t, _ in points]
        values = [lam for _, lam in points]
        # Row (t_i, lam_i) applies up to time t_i; the last value extends.
        return continuous.PiecewiseConstantIntensity(
            breaks=tuple(times[:-1]), values=tuple(values)
        )
    raise ModelInputError("either --lambda or --hazard-file is required")


def _hazard_for(args) -> float | list[float] | continuous.PiecewiseConstantIntensity:
    if args.model == "discrete":
        return _discrete_hazard(args)
    return _continuous_hazard(args)


def _coupon_amount(args) -> float:
    if args.coupon is not None and args.coupon_rate is not None:
        raise ModelInputError("--coupon and --coupon-rate are mutually exclusive")
    if args.coupon is not None:
        return args.coupon
    if args.coupon_rate is not None:
        return _FACE * args.coupon_rate
    raise ModelInputError("either --coupon or --coupon-rate is required")


def _single_maturity(args) -> float:
    return args.maturity


# ---------------------------------------------------------------------------
# output helpers


def _open_out(args) -> IO[str]:
    if args.out:
        return open(args.out, "w", newline="")
    return sys.stdout


def _emit_scalar(args, name: str, value: float) -> None:
    stream = _open_out(args)
    try:
        if args.format == "json":
            json.dump({name: value}, stream)
            stream.write("\n")
        elif args.format == "csv":
            stream.write(f"{name}\n{value:.12g}\n")
        else:
            stream.write(f"{value:.12g}\n")
    finally:
        if stream is not sys.stdout:
            stream.close()


def _emit_records(args, fields: list[str], records: list[dict]) -> None:
    stream = _open_out(args)
    try:
        if (args.format or "csv") == "json":
            json.dump(records, stream, indent=2)
            stream.write("\n")
        else:
            writer = csv.writer(stream, lineterminator="\n")
            writer.writerow(fields)
            for rec in records:
                writer.writerow(
                    [rec[f] if isinstance(rec[f], str) else f"{rec[f]:.12g}" for f in fields]
                )
    finally:
        if stream is not sys.stdout:
            stream.close()


# ---------------------------------------------------------------------------
# command handlers


def _priced_bond(args) -> tuple[object, float]:
    """Build the bond and price it under the command's credit assumptions."""
    coupon = _coupon_amount(args)
    if args.recovery is None or args.rate is None:
        raise ModelInputError("--recovery and --rate are required to price from assumptions")
    if args.model == "discrete":
        maturity = args.maturity
        if int(maturity) != maturity:
            raise ModelInputError("discrete maturities must be integers")
        bond = discrete.DiscreteBond(coupon=coupon, maturity=int(maturity))
        credit = discrete.CreditAssumptions(_discrete_hazard(args), args.recovery)
        return bond, discrete.price(bond, credit, args.rate)
    bond_c = continuous.ContinuousBond(coupon=coupon, maturity=args.maturity)
    credit_c = continuous.CreditAssumptions(_continuous_hazard(args), args.recovery)
    return bond_c, continuous.price(bond_c, credit_c, args.rate)


def cmd_price(args) -> int:
    _, value = _priced_bond(args)
    _emit_scalar(args, "price", value)
    return 0


def cmd_ytm(args) -> int:
    if args.price is not None:
        coupon = _coupon_amount(args)
        if args.model == "discrete":
            if int(args.maturity) != args.maturity:
                raise ModelInputError("discrete maturities must be integers")
            bond = discrete.DiscreteBond(coupon=coupon, maturity=int(args.maturity))
            value = discrete.ytm(args.price, bond)
        else:
            bond_c = continuous.ContinuousBond(coupon=coupon, maturity=args.maturity)
            value = continuous.ytm(args.price, bond_c)
    else:
        bond_like, price_value = _priced_bond(args)
        if args.model == "discrete":
            value = discrete.ytm(price_value, bond_like)
        else:
            value = continuous.ytm(price_value, bond_like)
    _emit_scalar(args, "ytm", value)
    return 0


def cmd_par_yield(args) -> int:
    if args.model == "discrete":
        value = discrete.par_yield(
            discrete.CreditAssumptions(args.hazard_level, args.recovery), args.rate
        )
    else:
        value = continuous.par_yield(
            continuous.CreditAssumptions(args.hazard_level, args.recovery), args.rate
        )
    _emit_scalar(args, "par_yield", value)
    return 0


def cmd_curve(args) -> int:
    spec = curves.ScenarioSpec(
        model=args.model,
        maturities=tuple(args.maturity),
        coupon_rates=tuple(args.coupon_rate),
        hazard=_hazard_for(args),
        recovery=args.recovery,
        risk_free=args.rate,
    )
    table = curves.generate(spec)
    if table.par_yield is not None:
        print(f"# par_yield = {table.par_yield:.12g}", file=sys.stderr)
    _emit_records(args, list(curves.CSV_FIELDS), table.to_records())
    return 0


def cmd_cds(args) -> int:
    maturities = args.maturity
    if args.hazard_level is not None:
        hazard: cds.CdsHazard = args.hazard_level
    elif args.hazard_file:
        points = _read_hazard_file(args.hazard_file)
        if args.model == "discrete":
            hazard = [lam for _, lam in points]
        elif args.hazard_interp == "linear":
            hazard = cds.PiecewiseLinearIntensity(knots=tuple(points))
        else:
            hazard = continuous.PiecewiseConstantIntensity(
                breaks=tuple(t for t, _ in points[:-1]),
                values=tuple(lam for _, lam in points),
            )
    else:
        raise ModelInputError("either --lambda or --hazard-file is required")

    spec = cds.CdsSpec(
        maturity=maturities[-1],
        recovery_fraction=args.recovery_fraction,
        risk_free=args.rate,
    )
    if len(maturities) == 1:
        if args.model == "discrete":
            value = cds.spread_discrete(hazard, spec)
        else:
            value = cds.spread_continuous(hazard, spec, kernel=args.kernel)
        _emit_scalar(args, "spread", value)
        return 0
    points_out = cds.spread_curve(hazard, spec, maturities, model=args.model, kernel=args.kernel)
    records = [
        {"model": args.model, "maturity": t, "spread": s} for t, s in points_out
    ]
    _emit_records(args, ["model", "maturity", "spread"], records)
    return 0


def cmd_bootstrap(args) -> int:
    if (args.rate is None) == (args.zero_curve_file is None):
        raise ModelInputError("exactly one of --rate or --zero-curve-file is required")
    quotes = [
        calibration.BondQuote(
            maturity=_float_field(r, "maturity_years", args.quotes_file),
            coupon_rate=_float_field(r, "coupon_rate", args.quotes_file),
            clean_price=_float_field(r, "clean_price", args.quotes_file),
        )
        for r in _read_csv(args.quotes_file, QUOTE_FIELDS)
    ]
    if args.zero_curve_file:
        rows = _read_csv(args.zero_curve_file, ZERO_CURVE_FIELDS)
        discount: calibration.DiscountSpec = calibration.ZeroCurve(
            maturities=tuple(_float_field(r, "maturity_years", args.zero_curve_file) for r in rows),
            zero_rates=tuple(_float_field(r, "zero_rate", args.zero_curve_file) for r in rows),
        )
    else:
        discount = args.rate
    result = calibration.bootstrap(quotes, args.recovery, discount, lambda_max=args.lambda_max)
    max_residual = max(abs(r) for r in result.residuals)
    print(f"# max |reprice residual| = {max_residual:.3g} per 100 face", file=sys.stderr)
    records = [
        {"year": float(year), "intensity": lam, "conditional_default_prob": prob}
        for (year, lam), (_, prob) in zip(result.intensities, result.conditional_probs)
    ]
    _emit_records(args, ["year", "intensity", "conditional_default_prob"], records)
    return 0


def cmd_verify(args) -> int:
    outcomes = verification.run_verification()
    failures = 0
    for out in outcomes:
        status = "PASS" if out.passed else "FAIL"
        if not out.passed:
            failures += 1
        print(
            f"{status}  {out.case.name}: got {out.value:.6g}, "
            f"expected {out.case.expected:.6g} (tol {out.case.tol:g})"
        )
    print(f"{len(outcomes) - failures}/{len(outcomes)} reference cases passed")
    return 0 if failures == 0 else 3


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ModelInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SolverFailure as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
