from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st
from mpmath import mpf

from podles.scalars import ScalarContext, gen_binomial, q_int, q_int_half, real_power, to_mp


def test_default_context(ctx):
    assert ctx.q == mpf("0.5")
    assert mpmath.mp.dps == 50
    assert ctx.prune == mpf(10) ** -42


@pytest.mark.parametrize("q", [0, 1, -0.5, 1.5])
def test_q_outside_unit_interval_rejected(q):
    with pytest.raises(ValueError):
        ScalarContext(q=q)


def test_low_precision_rejected():
    with pytest.raises(ValueError):
        ScalarContext(precision=5)


def test_contexts_are_hashable_and_equal(ctx):
    assert ScalarContext() == ctx
    assert hash(ScalarContext()) == hash(ctx)
    ctx.activate()


def test_q_integers(ctx):
    assert q_int(0, ctx) == 0
    assert abs(q_int(1, ctx) - 1) < mpf(10) ** -45
    # [2]_q = q + 1/q
    assert abs(q_int(2, ctx) - (ctx.q + 1 / ctx.q)) < mpf(10) ** -45
    assert abs(q_int_half(Fraction(3, 2), ctx) - q_int(mpf(3) / 2, ctx)) < mpf(10) ** -45


def test_q_int_half_rejects_other_fractions(ctx):
    with pytest.raises(ValueError):
        q_int_half(Fraction(1, 3), ctx)


@given(st.integers(min_value=-20, max_value=20))
def test_q_int_is_odd(n):
    ctx = ScalarContext()
    assert abs(q_int(n, ctx) + q_int(-n, ctx)) < mpf(10) ** -40


@given(st.integers(min_value=1, max_value=15), st.integers(min_value=1, max_value=15))
def test_q_int_addition_rule(m, n):
    # [m+n] = q^-n [m] + q^m [n]
    ctx = ScalarContext()
    q = ctx.q
    lhs = q_int(m + n, ctx)
    rhs = q**-n * q_int(m, ctx) + q**m * q_int(n, ctx)
    assert abs(lhs - rhs) < mpf(10) ** -40 * abs(lhs)


def test_gen_binomial_matches_binomial_for_integers():
    for z in range(1, 6):
        for j in range(6):
            assert gen_binomial(z, j) == mpmath.binomial(z + j - 1, j)
    assert gen_binomial(mpf("2.5"), 0) == 1
    with pytest.raises(ValueError):
        gen_binomial(1, -1)


def test_real_power_complex_exponent():
    z = mpmath.mpc(2, 3)
    assert abs(real_power(mpf("0.5"), z) - mpmath.power(mpf("0.5"), z)) < mpf(10) ** -45
    with pytest.raises(ValueError):
        real_power(-1, 2)


def test_to_mp_conversions():
    assert to_mp(Fraction(1, 4)) == mpf("0.25")
    assert to_mp("0.5") == mpf("0.5")
    assert to_mp(1 + 2j) == mpmath.mpc(1, 2)
