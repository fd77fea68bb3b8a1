import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st
from mpmath import mpf

from podles.errors import AlgebraMismatch, CalibrationError, UncalibratedPairing
from podles.hopf import (
    PairingTable,
    calibrate_pairing,
    calibration_identities,
    coproduct,
    functional_value,
    left_act,
    left_act_via_coproduct,
    pair,
    right_act,
    sphere_x,
)
from podles.ncalg import GENERATORS, AlgebraId, counit, embed_sphere, generator, normal_form, unit

EXACT = mpf(10) ** -40


def uq_words(max_size=3):
    return st.lists(st.sampled_from(GENERATORS[AlgebraId.UQ]), max_size=max_size).map(tuple)


def suq2_words(max_size=3):
    return st.lists(st.sampled_from(GENERATORS[AlgebraId.SUQ2]), max_size=max_size).map(tuple)


def test_calibration_finds_the_standard_pairing(ctx):
    table = calibrate_pairing(ctx)
    q = ctx.q
    assert table.calibrated
    assert abs(table.value("K", "a") - q**-0.5) < EXACT
    assert abs(table.value("K", "d") - q**0.5) < EXACT
    assert abs(table.value("E", "c") - 1) < EXACT
    assert abs(table.value("F", "b") - 1) < EXACT
    assert max(calibration_identities(table).values()) < EXACT


def test_literal_ladder_constant_is_infeasible(ctx):
    # E |> x_i = (q + 1/q) x_(i+1) is incompatible with EF - FE = (K^2 - K^-2)/(q - 1/q)
    with pytest.raises(CalibrationError, match="infeasible"):
        calibrate_pairing(ctx, ctx.q + 1 / ctx.q)


def test_uncalibrated_table_is_refused(ctx):
    table = calibrate_pairing(ctx)
    raw = PairingTable(table.rho, ctx, calibrated=False)
    with pytest.raises(UncalibratedPairing):
        pair(generator("E"), generator("c"), raw)


def test_functional_values_on_generators(ctx):
    q = ctx.q
    E, F, K = generator("E"), generator("F"), generator("K")
    B, Bs, A = generator("B"), generator("Bs"), generator("A")
    assert abs(functional_value(E, B) - mpmath.sqrt(q)) < EXACT
    assert abs(functional_value(F, Bs) + 1 / mpmath.sqrt(q)) < EXACT
    assert functional_value(E, Bs) == 0
    assert functional_value(F, B) == 0
    assert functional_value(E, A) == 0
    assert functional_value(K, A) == 0
    assert functional_value(K, unit(AlgebraId.SPHERE)) == 1


def test_action_on_spin_one_triple(ctx):
    xs = {i: embed_sphere(v) for i, v in sphere_x(ctx).items()}
    c = mpmath.sqrt(ctx.q + 1 / ctx.q)
    E, F, K = generator("E"), generator("F"), generator("K")
    assert left_act(E, xs[0]).max_deviation(xs[1] * c) < EXACT
    assert left_act(F, xs[0]).max_deviation(xs[-1] * c) < EXACT
    assert left_act(E, xs[1]).is_zero()
    assert left_act(K, xs[-1]).max_deviation(xs[-1] / ctx.q) < EXACT


@given(suq2_words(), suq2_words())
def test_coproduct_is_multiplicative(w1, w2):
    x = normal_form(w1, algebra=AlgebraId.SUQ2)
    y = normal_form(w2, algebra=AlgebraId.SUQ2)
    assert coproduct(x * y).max_deviation(coproduct(x) * coproduct(y)) < EXACT


@given(uq_words(), uq_words())
def test_uq_coproduct_is_multiplicative(w1, w2):
    x = normal_form(w1, algebra=AlgebraId.UQ)
    y = normal_form(w2, algebra=AlgebraId.UQ)
    assert coproduct(x * y).max_deviation(coproduct(x) * coproduct(y)) < EXACT


def test_sphere_has_no_coproduct(ctx):
    with pytest.raises(AlgebraMismatch):
        coproduct(generator("A"))


@given(suq2_words(4))
def test_counit_axiom(w):
    x = normal_form(w, algebra=AlgebraId.SUQ2)
    assert coproduct(x).leg(1, lambda m: counit(_mono(m))).max_deviation(x) < EXACT


def _mono(m):
    from podles.ncalg import AlgebraElement

    return AlgebraElement(AlgebraId.SUQ2, {m: mpf(1)})


@given(uq_words(), uq_words(), suq2_words(3))
def test_pairing_respects_products_in_uq(w1, w2, ws):
    # <fg, x> = <f, x_(1)> <g, x_(2)>
    f = normal_form(w1, algebra=AlgebraId.UQ)
    g = normal_form(w2, algebra=AlgebraId.UQ)
    x = normal_form(ws, algebra=AlgebraId.SUQ2)
    lhs = pair(f * g, x)
    rhs = mpf(0)
    for (m1, m2), c in coproduct(x).terms.items():
        rhs += c * pair(f, _mono(m1)) * pair(g, _mono(m2))
    assert abs(lhs - rhs) < mpf(10) ** -35


@given(uq_words(2), suq2_words(3))
def test_left_action_agrees_with_coproduct_formula(w, ws):
    f = normal_form(w, algebra=AlgebraId.UQ)
    x = normal_form(ws, algebra=AlgebraId.SUQ2)
    assert left_act(f, x).max_deviation(left_act_via_coproduct(f, x)) < mpf(10) ** -35


@given(suq2_words(2), suq2_words(2))
def test_left_action_is_a_module_algebra_action(w1, w2):
    # E |> (xy) = (E |> x)(K |> y) + (K^-1 |> x)(E |> y)
    x = normal_form(w1, algebra=AlgebraId.SUQ2)
    y = normal_form(w2, algebra=AlgebraId.SUQ2)
    E, K, Ki = generator("E"), generator("K"), generator("Ki")
    lhs = left_act(E, x * y)
    rhs = left_act(E, x) * left_act(K, y) + left_act(Ki, x) * left_act(E, y)
    assert lhs.max_deviation(rhs) < mpf(10) ** -35


@given(uq_words(2), uq_words(2), suq2_words(3))
def test_right_action_composes(w1, w2, ws):
    f = normal_form(w1, algebra=AlgebraId.UQ)
    g = normal_form(w2, algebra=AlgebraId.UQ)
    x = normal_form(ws, algebra=AlgebraId.SUQ2)
    assert right_act(x, f * g).max_deviation(right_act(right_act(x, f), g)) < mpf(10) ** -35


def test_right_action_examples(ctx):
    q = ctx.q
    B, Bs = embed_sphere(generator("B")), embed_sphere(generator("Bs"))
    assert right_act(B, generator("E")).isclose(generator("a") ** 2 * mpmath.sqrt(q))
    assert right_act(Bs, generator("F")).isclose(generator("d") ** 2 * (-1 / mpmath.sqrt(q)))


def test_left_action_preserves_the_sphere(ctx):
    from podles.ncalg import recognize_in_sphere

    for name in ("E", "F", "K"):
        for g in ("A", "B", "Bs"):
            y = left_act(generator(name), embed_sphere(generator(g) ** 2))
            recognize_in_sphere(y)
