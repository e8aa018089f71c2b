import numpy as np
import pytest

from credityield import discrete
from credityield.errors import (
    DegenerateHazard,
    HazardTooShort,
    ModelInputError,
    NoSolution,
)
from oracles import discrete_nominal_pv, discrete_price_sum

R80 = 80.0
RATE = 0.03


def make(coupon, maturity):
    return discrete.DiscreteBond(coupon=coupon, maturity=maturity)


class TestPrice:
    def test_risk_free_par_bond(self):
        # coupon equals 100 * r and no default risk: prices at face
        credit = discrete.CreditAssumptions(0.0, R80)
        assert discrete.price(make(3.0, 7), credit, RATE) == pytest.approx(100.0, abs=1e-10)

    def test_zero_coupon_with_hazard(self):
        # frozen from the exact-rational summation of the pricing equation
        credit = discrete.CreditAssumptions(0.10, R80)
        value = discrete.price(make(0.0, 10), credit, RATE)
        assert value == pytest.approx(71.51728867438817, abs=1e-10)

    def test_certain_default_pays_recovery_only(self):
        credit = discrete.CreditAssumptions(1.0, R80)
        assert discrete.price(make(5.0, 1), credit, RATE) == pytest.approx(
            80.0 / 1.03, abs=1e-12
        )

    def test_matches_summation_oracle(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            coupon = rng.uniform(0.0, 20.0)
            maturity = int(rng.integers(1, 40))
            lam = rng.uniform(0.0, 0.95)
            recovery = rng.uniform(0.0, 100.0)
            rate = rng.uniform(0.0, 0.15)
            got = discrete.price(
                make(coupon, maturity), discrete.CreditAssumptions(lam, recovery), rate
            )
            want = discrete_price_sum(coupon, maturity, lam, recovery, rate)
            assert got == pytest.approx(want, rel=1e-10)

    def test_sequence_matches_oracle(self):
        path = [0.05, 0.10, 0.02, 0.30, 0.0]
        credit = discrete.CreditAssumptions(path, 40.0)
        got = discrete.price(make(6.0, 5), credit, RATE)
        assert got == pytest.approx(discrete_price_sum(6.0, 5, path, 40.0, RATE), rel=1e-12)

    def test_sequence_all_equal_is_exactly_constant(self):
        bond = make(4.0, 12)
        const = discrete.price(bond, discrete.CreditAssumptions(0.07, R80), RATE)
        seq = discrete.price(bond, discrete.CreditAssumptions([0.07] * 12, R80), RATE)
        assert seq == const

    def test_hazard_too_short(self):
        credit = discrete.CreditAssumptions([0.1, 0.1], R80)
        with pytest.raises(HazardTooShort):
            discrete.price(make(5.0, 3), credit, RATE)

    def test_bad_inputs_rejected(self):
        with pytest.raises(ModelInputError):
            discrete.price(make(5.0, 3), discrete.CreditAssumptions(1.2, R80), RATE)
        with pytest.raises(ModelInputError):
            discrete.price(make(5.0, 3), discrete.CreditAssumptions(0.1, 120.0), RATE)
        with pytest.raises(ModelInputError):
            discrete.price(make(5.0, 3), discrete.CreditAssumptions(0.1, R80), -0.01)
        with pytest.raises(ModelInputError):
            discrete.DiscreteBond(coupon=5.0, maturity=0)


class TestYtm:
    def test_par_identity(self):
        assert discrete.ytm(100.0, make(5.0, 20)) == pytest.approx(0.05, abs=1e-12)

    def test_published_zero_coupon_yield(self):
        credit = discrete.CreditAssumptions(0.10, R80)
        value = discrete.price(make(0.0, 10), credit, RATE)
        assert discrete.ytm(value, make(0.0, 10)) == pytest.approx(0.0341, abs=1e-4)

    def test_published_high_coupon_yield(self):
        credit = discrete.CreditAssumptions(0.10, R80)
        bond = make(10.0, 10)
        value = discrete.price(bond, credit, RATE)
        assert discrete.ytm(value, bond) == pytest.approx(0.0679, abs=1e-4)

    def test_residual_within_tolerance(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            bond = make(rng.uniform(0.0, 15.0), int(rng.integers(1, 50)))
            credit = discrete.CreditAssumptions(rng.uniform(0.0, 0.9), rng.uniform(0.0, 100.0))
            value = discrete.price(bond, credit, rng.uniform(0.0, 0.12))
            y = discrete.ytm(value, bond)
            assert abs(discrete_nominal_pv(y, bond.coupon, bond.maturity) - value) <= 1e-12 * 100.0

    def test_no_solution_for_absurd_price(self):
        with pytest.raises(NoSolution):
            discrete.ytm(1e9, make(1.0, 1))
        with pytest.raises(NoSolution):
            discrete.ytm(1e-9, make(1.0, 1))

    def test_nonpositive_price_rejected(self):
        with pytest.raises(ModelInputError):
            discrete.ytm(0.0, make(1.0, 1))


class TestParYield:
    def test_published_values(self):
        assert discrete.par_yield(
            discrete.CreditAssumptions(0.01, R80), RATE
        ) == pytest.approx(0.0323, abs=5e-5)
        assert discrete.par_yield(
            discrete.CreditAssumptions(0.10, R80), RATE
        ) == pytest.approx(0.0556, abs=5e-5)

    def test_no_hazard_reduces_to_rate(self):
        assert discrete.par_yield(discrete.CreditAssumptions(0.0, 37.0), RATE) == RATE

    def test_pricing_at_par_coupon_returns_face(self):
        credit = discrete.CreditAssumptions(0.10, R80)
        c_par = discrete.par_yield(credit, RATE)
        for maturity in (1, 5, 17, 40):
            value = discrete.price(make(100.0 * c_par, maturity), credit, RATE)
            assert value == pytest.approx(100.0, abs=1e-10)

    def test_certain_default_degenerate(self):
        with pytest.raises(DegenerateHazard):
            discrete.par_yield(discrete.CreditAssumptions(1.0, R80), RATE)

    def test_sequence_rejected(self):
        with pytest.raises(ModelInputError):
            discrete.par_yield(discrete.CreditAssumptions([0.1, 0.2], R80), RATE)


class TestUpperBound:
    def test_no_hazard_equals_rate(self):
        assert discrete.ytm_upper_bound(discrete.CreditAssumptions(0.0, R80), RATE) == RATE

    def test_zero_recovery_equals_par_yield(self):
        credit = discrete.CreditAssumptions(0.10, 0.0)
        bound = discrete.ytm_upper_bound(credit, RATE)
        assert bound == discrete.par_yield(credit, RATE)
        assert bound == pytest.approx(0.13 / 0.9, abs=1e-12)

    def test_gap_above_par_yield(self):
        # c_par + recovery gap = 5.556% + 8.889% = 14.444%
        credit = discrete.CreditAssumptions(0.10, R80)
        assert discrete.ytm_upper_bound(credit, RATE) == pytest.approx(
            0.14444444444444446, abs=1e-12
        )

    def test_yields_stay_below_bound_on_coupon_sweep(self):
        credit = discrete.CreditAssumptions(0.10, R80)
        bound = discrete.ytm_upper_bound(credit, RATE)
        for coupon in (0.0, 1.0, 10.0, 100.0, 1e3, 1e5):
            bond = make(coupon, 20)
            y = discrete.ytm(discrete.price(bond, credit, RATE), bond)
            assert y < bound


class TestSpreadAndRecursion:
    def test_bond_spread(self):
        assert discrete.bond_spread(0.0341, RATE) == pytest.approx(0.0041, abs=1e-12)
        assert discrete.bond_spread(RATE, RATE) == 0.0
        assert discrete.bond_spread(0.0679, RATE) == pytest.approx(0.0379, abs=1e-12)

    def test_price_increment_matches_direct_difference(self):
        credit = discrete.CreditAssumptions(0.08, 60.0)
        for coupon in (0.0, 4.0, 9.0):
            for maturity in (1, 3, 10):
                step = discrete.price_increment(make(coupon, maturity), credit, RATE)
                direct = discrete.price(make(coupon, maturity + 1), credit, RATE) - discrete.price(
                    make(coupon, maturity), credit, RATE
                )
                assert step == pytest.approx(direct, abs=1e-10)

    def test_price_increment_sign_follows_coupon_vs_par(self):
        credit = discrete.CreditAssumptions(0.10, R80)
        c_par = discrete.par_yield(credit, RATE)
        above = discrete.price_increment(make(100.0 * c_par + 1.0, 5), credit, RATE)
        below = discrete.price_increment(make(100.0 * c_par - 1.0, 5), credit, RATE)
        at_par = discrete.price_increment(make(100.0 * c_par, 5), credit, RATE)
        assert above > 0.0 > below
        assert at_par == pytest.approx(0.0, abs=1e-12)
