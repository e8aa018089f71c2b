"""Deterministic root-finding and quadrature kernels.

Everything here is pure and stateless: identical inputs return
bit-identical results, so concurrent use from multiple threads is safe.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from scipy.optimize import brentq

from .errors import MaxIterExceeded, NoSignChange, ToleranceNotReached

DEFAULT_TOL_X = 1e-12
DEFAULT_QUAD_TOL = 1e-10

# Yield solvers bracket the root in [-99%, 100%] and double the upper
# bound until the objective changes sign; rates that survive ten
# doublings without a sign change are treated as data errors.
YIELD_BRACKET_LO = -0.99
YIELD_BRACKET_HI = 1.0
MAX_BRACKET_EXPANSIONS = 10

_MAX_QUAD_DEPTH = 60


@dataclass(frozen=True)
class RootProblem:
    """A bracketed scalar root-finding problem.

    The objective must have opposite signs at ``lo`` and ``hi`` (or be
    exactly zero at one of them) when :func:`solve_root` is called.
    """

    objective: Callable[[float], float]
    lo: float
    hi: float
    tol_x: float = DEFAULT_TOL_X
    max_iter: int = 200

    def __post_init__(self) -> None:
        if not self.lo < self.hi:
            raise ValueError(f"bracket requires lo < hi, got [{self.lo}, {self.hi}]")
        if not self.tol_x > 0.0:
            raise ValueError("tol_x must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")


@dataclass(frozen=True)
class QuadProblem:
    """A definite integral over [a, b] with an absolute tolerance."""

    integrand: Callable[[float], float]
    a: float
    b: float
    tol: float = DEFAULT_QUAD_TOL

    def __post_init__(self) -> None:
        if not self.a <= self.b:
            raise ValueError(f"integration bounds require a <= b, got [{self.a}, {self.b}]")
        if not self.tol > 0.0:
            raise ValueError("tol must be positive")


def solve_root(problem: RootProblem) -> float:
    """Find the root of a bracketed sign change.

    Brent-style iteration (bisection with secant/inverse-quadratic
    acceleration): guaranteed to converge for any continuous objective
    with a bracketed sign change. Returns x with |x - x*| <= tol_x.

    Raises:
        NoSignChange: objective has the same sign at both endpoints.
        MaxIterExceeded: iteration budget exhausted before convergence.
    """
    f = problem.objective
    f_lo = f(problem.lo)
    if f_lo == 0.0:
        return problem.lo
    f_hi = f(problem.hi)
    if f_hi == 0.0:
        return problem.hi
    if (f_lo > 0.0) == (f_hi > 0.0):
        raise NoSignChange(
            f"objective({problem.lo}) = {f_lo} and objective({problem.hi}) = {f_hi} "
            "have the same sign"
        )
    root, info = brentq(
        f,
        problem.lo,
        problem.hi,
        xtol=problem.tol_x,
        maxiter=problem.max_iter,
        full_output=True,
        disp=False,
    )
    if not info.converged:
        raise MaxIterExceeded(
            f"no convergence to tol_x={problem.tol_x} within {problem.max_iter} iterations"
        )
    return float(root)


def expand_upper_bracket(
    objective: Callable[[float], float],
    lo: float = YIELD_BRACKET_LO,
    hi: float = YIELD_BRACKET_HI,
    max_expansions: int = MAX_BRACKET_EXPANSIONS,
) -> tuple[float, float]:
    """Grow ``hi`` by doubling until [lo, hi] brackets a sign change.

    Raises NoSignChange if the budget of doublings is exhausted.
    """
    f_lo = objective(lo)
    if f_lo == 0.0:
        return lo, hi  # solve_root short-circuits on an exact endpoint root
    f_hi = objective(hi)
    expansions = 0
    while f_hi != 0.0 and (f_lo > 0.0) == (f_hi > 0.0):
        if expansions >= max_expansions:
            raise NoSignChange(
                f"no sign change in [{lo}, {hi}] after {max_expansions} expansions"
            )
        hi *= 2.0
        f_hi = objective(hi)
        expansions += 1
    return lo, hi


def integrate(problem: QuadProblem) -> float:
    """Adaptive Simpson integration with interval halving.

    Accepts an interval when the Richardson error estimate
    |S(left)+S(right)-S(whole)|/15 is within the local tolerance, and
    adds the correction term. Empty intervals integrate to exactly 0.

    Raises:
        ToleranceNotReached: refinement depth exhausted on some subinterval.
    """
    if problem.a == problem.b:
        return 0.0
    f = problem.integrand
    a, b = problem.a, problem.b
    fa, fb = f(a), f(b)
    m, fm, whole = _simpson(f, a, fa, b, fb)
    return _adaptive(f, a, fa, b, fb, problem.tol, whole, m, fm, _MAX_QUAD_DEPTH)


def _simpson(f, a, fa, b, fb):
    m = 0.5 * (a + b)
    fm = f(m)
    return m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb)


def _adaptive(f, a, fa, b, fb, tol, whole, m, fm, depth):
    lm, flm, left = _simpson(f, a, fa, m, fm)
    rm, frm, right = _simpson(f, m, fm, b, fb)
    delta = left + right - whole
    if abs(delta) <= 15.0 * tol:
        return left + right + delta / 15.0
    if depth <= 0:
        raise ToleranceNotReached(
            f"adaptive refinement exhausted on [{a}, {b}] with error estimate {abs(delta) / 15.0}"
        )
    return _adaptive(f, a, fa, m, fm, tol / 2.0, left, lm, flm, depth - 1) + _adaptive(
        f, m, fm, b, fb, tol / 2.0, right, rm, frm, depth - 1
    )
