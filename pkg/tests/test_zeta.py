from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mpf

from podles.errors import DivergentRegion, FitFailed, PoleProximityError
from podles.ncalg import AlgebraId, counit, generator, normal_form, unit
from podles.spectral import ShellOperator, TruncatedSpace, diagonal_op, represent, represent_uq
from podles.zeta import (
    ZetaValue,
    contour_residue,
    pole_lattice,
    residue_aK,
    residue_LK,
    residue_numeric_probe,
    tau,
    zeta_direct,
    zeta_LK,
)


@pytest.fixture(scope="module")
def space(ctx):
    return TruncatedSpace(Fraction(61, 2), ctx)


def lk(space, beta, delta, parity=1):
    q = space.ctx.q
    return diagonal_op(
        space, lambda l2, k2, p: q ** (mpf(beta) * l2 / 2) * q ** (mpf(delta) * k2 / 2), parities=(parity,)
    )


def test_identity_direct_matches_closed_form(space):
    direct = zeta_direct(ShellOperator.identity(space), 1, 4)
    closed = zeta_LK(0, 0, 4, ctx=space.ctx)
    assert direct.method == "direct" and closed.method == "closed_form"
    assert abs(direct.value - closed.value) < 1e-10
    assert direct.abs_error < 1e-10
    assert direct.window == Fraction(61, 2)


def test_K2_direct_matches_closed_form(space):
    K = represent_uq(space).K
    direct = zeta_direct(K * K, -1, 3, abscissa=2)
    assert abs(direct.value - zeta_LK(0, 2, 3, ctx=space.ctx).value) < 1e-8


def test_shift_operators_have_zero_zeta(space):
    B = represent(generator("B"), space)
    assert zeta_direct(B, 1, 1).value == 0
    assert zeta_direct(B, -1, mpmath.mpc(2, 1)).value == 0


@settings(max_examples=20)
@given(
    st.floats(-2, 2, allow_nan=False),
    st.floats(-3, 3, allow_nan=False),
    st.floats(-5, 5, allow_nan=False),
)
def test_overlap_agreement(beta, delta, im):
    space = TruncatedSpace(Fraction(61, 2))
    z = mpmath.mpc(-beta + abs(delta) + 1.5, im)
    direct = zeta_direct(lk(space, beta, delta), 1, z, abscissa=-beta + abs(delta))
    closed = zeta_LK(beta, delta, z)
    assert abs(direct.value - closed.value) < 1e-8


def test_divergent_region_is_refused(space):
    with pytest.raises(DivergentRegion, match="divergent region"):
        zeta_direct(ShellOperator.identity(space), 1, 0)
    K = represent_uq(space).K
    with pytest.raises(DivergentRegion):
        zeta_direct(K * K, 1, 2, abscissa=2)


def test_continuation_is_finite_left_of_abscissa(ctx):
    v = zeta_LK(2, 2, 1, ctx=ctx)
    assert mpmath.isfinite(v.value)
    assert v.abs_error < 1e-40


@given(st.floats(-3, 3), st.floats(0.1, 4), st.floats(-2, 6))
def test_symmetric_in_delta(beta, delta, re):
    z = mpmath.mpc(re, 0.3)
    assert abs(zeta_LK(beta, delta, z).value - zeta_LK(beta, -delta, z).value) < mpf(10) ** -30


def test_series_converges_far_left_of_abscissa(ctx):
    a = zeta_LK(0, 2, mpmath.mpc(-3.3, 0.7), j_max=200, ctx=ctx).value
    b = zeta_LK(0, 2, mpmath.mpc(-3.3, 0.7), j_max=150, ctx=ctx).value
    assert abs(a - b) < mpf(10) ** -30


@pytest.mark.parametrize("beta,delta", [(0, 2), (1, -1), (0, 0), (-0.5, 1.5)])
def test_pole_lattice_is_detected(ctx, beta, delta):
    for pole in pole_lattice(beta, delta, j_count=3):
        with pytest.raises(PoleProximityError) as info:
            zeta_LK(beta, delta, pole.location, ctx=ctx)
        assert info.value.pole.order == pole.order
    # imaginary translates are poles too
    period = 2 * mpmath.pi / mpmath.log(ctx.q)
    with pytest.raises(PoleProximityError):
        zeta_LK(beta, delta, -beta + abs(delta) + 1j * period, ctx=ctx)
    zeta_LK(beta, delta, -beta + abs(delta) - 1, ctx=ctx)


def test_pole_orders():
    assert [p.order for p in pole_lattice(0, 0, 2)] == [2, 2]
    assert [p.order for p in pole_lattice(0, 2, 2)] == [1, 1, 1, 1]
    assert pole_lattice(0, 2, 2)[0].location == 2


def test_residue_LK_values(ctx):
    simple = residue_LK(0, 2, ctx)
    assert simple.order == 1 and simple.location == 2
    assert abs(simple.residue - mpf("2.16404256")) < 1e-8
    double = residue_LK(0, 0, ctx)
    assert double.order == 2
    expected = 2 * mpmath.log(1.5) / mpmath.log(0.5) ** 2
    assert abs(double.residue - expected) < mpf(10) ** -40
    assert abs(double.residue - mpf("1.6878450")) < 1e-7


@pytest.mark.parametrize("beta,delta", [(0, 2), (0, -2), (1, 1), (0, 0), (2, 0), (-1, 3)])
def test_residue_matches_contour_integral(ctx, beta, delta):
    pole = residue_LK(beta, delta, ctx)
    got = contour_residue(lambda z: zeta_LK(beta, delta, z, ctx=ctx).value, pole.location)
    assert abs(got - pole.residue) < 1e-8


def test_residue_aK_examples(ctx):
    A, B = generator("A"), generator("B")
    assert residue_aK(A**3 * B, 1) == 0
    assert residue_aK(A**3 * B, -1) == 0
    assert abs(residue_aK(A, 1) - mpf("1.73123405")) < 1e-8
    assert residue_aK(A, -1) == 0
    one = unit(AlgebraId.SPHERE, ctx)
    assert abs(residue_aK(one, -1) - (ctx.q - 1 / ctx.q) / mpmath.log(ctx.q)) < mpf(10) ** -40
    assert abs(residue_aK(one, -1) - mpf("2.16404256")) < 1e-8


@pytest.mark.parametrize("mu", [1, -1, 0.5, -0.5, 0])
def test_residue_aK_agrees_with_residue_LK(ctx, mu):
    assert abs(residue_aK(unit(AlgebraId.SPHERE, ctx), mu) - residue_LK(0, 2 * mu, ctx).residue) < mpf(10) ** -40


def test_residue_aK_rejects_other_algebras():
    with pytest.raises(ValueError):
        residue_aK(generator("a"), 1)


def test_tau_examples(ctx):
    q = ctx.q
    A, B, Bs = generator("A"), generator("B"), generator("Bs")
    assert tau(1, unit(AlgebraId.SPHERE, ctx)) == 1
    assert abs(tau(1, A) - mpf("0.8")) < mpf(10) ** -40
    lhs = tau(1, B * Bs)
    rhs = tau(1, Bs * B) / q**2
    assert abs(lhs - rhs) < mpf(10) ** -40
    assert abs(lhs - mpf("0.15238095")) < 1e-8


sphere_words = st.lists(st.sampled_from(["A", "B", "Bs"]), max_size=4)


@given(sphere_words, st.sampled_from([-1, -0.5, -2.5]))
def test_tau_is_counit_for_negative_mu(w, mu):
    a = normal_form(w)
    assert abs(tau(mu, a) - counit(a)) < mpf(10) ** -40


@given(sphere_words, sphere_words)
def test_tau_is_a_twisted_trace(w1, w2):
    from podles.hochschild import sigma_twist

    ctx = unit(AlgebraId.SPHERE).ctx
    a, b = normal_form(w1), normal_form(w2)
    for mu in (1, 0.5, 2):
        twisted = sigma_twist(ctx.q ** (2 * mpf(mu)), b)
        assert abs(tau(mu, a * b) - tau(mu, twisted * a)) < mpf(10) ** -35


def test_numeric_probe_examples(ctx):
    space = TruncatedSpace(Fraction(41, 2), ctx)
    ops = represent_uq(space)
    Kinv2 = ops.Kinv * ops.Kinv
    assert abs(residue_numeric_probe(Kinv2, 2, space) - residue_LK(0, -2, ctx).residue) < 1e-6
    K2 = ops.K * ops.K
    AK2 = represent(generator("A"), space) * K2
    assert abs(residue_numeric_probe(AK2, 2, space) - residue_aK(generator("A"), 1)) < 1e-6
    BK2 = represent(generator("B"), space) * K2
    assert residue_numeric_probe(BK2, 2, space) == 0


def test_numeric_probe_reports_bad_fit(ctx):
    space = TruncatedSpace(Fraction(41, 2), ctx)
    noisy = diagonal_op(space, lambda l2, k2, p: mpf((l2 * 7919) % 13) / 13)
    with pytest.raises(FitFailed):
        residue_numeric_probe(noisy, 2, space)


def test_zeta_value_validates():
    with pytest.raises(ValueError):
        ZetaValue(mpf(1), mpf(-1), 0, "direct")
