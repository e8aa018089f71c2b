import math

import pytest

from credityield.errors import MaxIterExceeded, NoSignChange, ToleranceNotReached
from credityield.numerics import (
    QuadProblem,
    RootProblem,
    expand_upper_bracket,
    integrate,
    solve_root,
)


class TestSolveRoot:
    def test_linear_root(self):
        assert solve_root(RootProblem(lambda x: x - 1.0, 0.0, 2.0)) == pytest.approx(
            1.0, abs=1e-12
        )

    def test_sqrt_two(self):
        root = solve_root(RootProblem(lambda x: x * x - 2.0, 0.0, 2.0))
        assert root == pytest.approx(math.sqrt(2.0), abs=1e-12)

    def test_no_sign_change(self):
        with pytest.raises(NoSignChange):
            solve_root(RootProblem(lambda x: x * x + 1.0, 0.0, 2.0))

    def test_zero_at_endpoint(self):
        assert solve_root(RootProblem(lambda x: x, 0.0, 2.0)) == 0.0
        assert solve_root(RootProblem(lambda x: x - 2.0, 0.0, 2.0)) == 2.0

    def test_max_iter_exceeded(self):
        with pytest.raises(MaxIterExceeded):
            solve_root(RootProblem(lambda x: x * x - 2.0, 0.0, 2.0, tol_x=1e-15, max_iter=3))

    def test_invalid_bracket_rejected(self):
        with pytest.raises(ValueError):
            RootProblem(lambda x: x, 2.0, 0.0)

    def test_deterministic(self):
        problem = RootProblem(lambda x: math.cos(x) - x, 0.0, 1.0)
        assert solve_root(problem) == solve_root(problem)


class TestExpandUpperBracket:
    def test_expands_until_sign_change(self):
        lo, hi = expand_upper_bracket(lambda x: 10.0 - x, lo=-0.99, hi=1.0)
        assert lo == -0.99 and hi == 16.0

    def test_gives_up_after_budget(self):
        with pytest.raises(NoSignChange):
            expand_upper_bracket(lambda x: 1.0, lo=-0.99, hi=1.0)


class TestIntegrate:
    def test_constant(self):
        assert integrate(QuadProblem(lambda s: 1.0, 0.0, 1.0)) == pytest.approx(1.0, abs=1e-10)

    def test_exponential(self):
        value = integrate(QuadProblem(lambda s: math.exp(-s), 0.0, 1.0))
        assert value == pytest.approx(0.6321205588285577, abs=1e-10)

    def test_empty_interval_is_exactly_zero(self):
        assert integrate(QuadProblem(lambda s: math.sin(s), 3.0, 3.0)) == 0.0

    def test_linearity(self):
        f = lambda s: math.exp(-s)
        g = lambda s: s * s
        a, b = 2.5, -1.25
        combined = integrate(QuadProblem(lambda s: a * f(s) + b * g(s), 0.0, 2.0))
        separate = a * integrate(QuadProblem(f, 0.0, 2.0)) + b * integrate(
            QuadProblem(g, 0.0, 2.0)
        )
        assert combined == pytest.approx(separate, abs=2e-10)

    def test_singularity_exhausts_refinement(self):
        # error near the endpoint shrinks like sqrt(h), slower than the
        # halving tolerance budget, so refinement can never settle
        singular = lambda s: 0.0 if s == 0.0 else 1.0 / math.sqrt(s)
        with pytest.raises(ToleranceNotReached):
            integrate(QuadProblem(singular, 0.0, 1.0))

    def test_invalid_bounds_rejected(self):
        with pytest.raises(ValueError):
            QuadProblem(lambda s: 1.0, 1.0, 0.0)

    def test_deterministic(self):
        problem = QuadProblem(lambda s: math.exp(-s * s), 0.0, 3.0)
        assert integrate(problem) == integrate(problem)
