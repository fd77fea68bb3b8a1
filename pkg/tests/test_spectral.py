from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mpf

from podles.errors import WindowExhausted
from podles.ncalg import AlgebraElement, AlgebraId, generator
from podles.spectral import (
    ShellOperator,
    TruncatedSpace,
    alpha0,
    bound_probe,
    bound_probe_A0,
    commutator_with_D,
    diagonal_op,
    represent,
    represent_uq,
    represent_x,
    sphere_generator_ops,
)

TOL = mpf(10) ** -20


def test_space_dimensions():
    sp = TruncatedSpace(Fraction(7, 2))
    # shells 1/2, 3/2, 5/2, 7/2 have 2, 4, 6, 8 vectors
    assert sp.N == 20
    assert len(sp.basis) == 20
    assert sp.basis[0] == (1, -1)


@pytest.mark.parametrize("l_max", [Fraction(3), Fraction(3, 2), Fraction(-1, 2)])
def test_space_rejects_bad_cutoff(l_max):
    with pytest.raises(ValueError):
        TruncatedSpace(l_max)


def test_alpha0_index_checks(ctx):
    with pytest.raises(ValueError, match="index out of range"):
        alpha0(0, Fraction(1, 2), Fraction(3, 2), 1, ctx)
    with pytest.raises(ValueError, match="index out of range"):
        alpha0(0, 1, 0, 1, ctx)
    with pytest.raises(ValueError, match="index out of range"):
        alpha0(-1, Fraction(1, 2), Fraction(1, 2), 1, ctx)
    with pytest.raises(ValueError):
        alpha0(2, Fraction(3, 2), Fraction(1, 2), 1, ctx)


def test_alpha0_is_symmetric_between_neighbouring_shells(ctx):
    # x_0 is self-adjoint: alpha^+ at l equals alpha^- at l + 1
    for parity in (1, -1):
        for l in (Fraction(1, 2), Fraction(5, 2)):
            for k in (-l, l - 1, l):
                up = alpha0(1, l, k, parity, ctx)
                down = alpha0(-1, l + 1, k, parity, ctx)
                assert abs(up - down) < TOL


def test_x0_matches_alpha0(small_space):
    x0 = represent_x(0, small_space)
    ctx = small_space.ctx
    l, k = Fraction(5, 2), Fraction(1, 2)
    for parity, fam in ((1, -1), (-1, 1)):
        for nu in (-1, 0, 1):
            got = x0.entry((l + nu, k, parity), (l, k, parity))
            assert abs(got - alpha0(nu, l, k, fam, ctx)) < TOL


def test_sphere_relations_on_small_space(small_space):
    g = sphere_generator_ops(small_space)
    A, B, Bs = g["A"], g["B"], g["Bs"]
    q = small_space.ctx.q
    assert (B * A).max_deviation(A * B * q**2) < TOL
    assert (Bs * B).max_deviation(A - A * A) < TOL
    assert (B * Bs).max_deviation(A * q**2 - A * A * q**4) < TOL
    assert B.adjoint().max_deviation(Bs) < TOL
    assert A.adjoint().max_deviation(A) < TOL


def test_uq_relations(small_space):
    ops = represent_uq(small_space)
    q = small_space.ctx.q
    lhs = ops.E * ops.F - ops.F * ops.E
    rhs = (ops.K * ops.K - ops.Kinv * ops.Kinv) * (1 / (q - 1 / q))
    assert lhs.max_deviation(rhs) < TOL
    assert (ops.K * ops.E).max_deviation(ops.E * ops.K * q) < TOL
    assert (ops.K * ops.Kinv).max_deviation(ShellOperator.identity(small_space)) < TOL
    assert ops.E.adjoint().max_deviation(ops.F) < TOL
    assert (ops.D * ops.D).max_deviation(ops.absD * ops.absD) < TOL


def test_dirac_is_odd_and_selfadjoint(small_space):
    ops = represent_uq(small_space)
    assert ops.D.adjoint().max_deviation(ops.D) < TOL
    assert ops.D.parity_blocks() == [(-1, 1), (1, -1)]
    assert (ops.gamma * ops.D + ops.D * ops.gamma).max_deviation(ShellOperator.zero(small_space)) < TOL


sphere_words = st.lists(st.sampled_from(["A", "B", "Bs"]), min_size=1, max_size=3)


@settings(max_examples=15)
@given(sphere_words, sphere_words)
def test_representation_is_multiplicative(w1, w2):
    from podles.ncalg import normal_form

    space = TruncatedSpace(Fraction(21, 2))
    x = normal_form(w1, algebra=AlgebraId.SPHERE)
    y = normal_form(w2, algebra=AlgebraId.SPHERE)
    lhs = represent(x * y, space)
    rhs = represent(x, space) * represent(y, space)
    assert lhs.max_deviation(rhs) < TOL


def test_window_shrinks_and_exhausts():
    sp = TruncatedSpace(Fraction(5, 2))
    x0 = represent_x(0, sp)
    assert x0.valid_l2 == sp.L2 - 2
    prod = x0 * x0
    assert prod.valid_l2 == sp.L2 - 4
    with pytest.raises(WindowExhausted):
        (prod * x0 * x0).shell_traces(1)
    with pytest.raises(WindowExhausted):
        represent(generator("A") ** 4, sp)


def test_entries_outside_the_space_are_dropped():
    sp = TruncatedSpace(Fraction(5, 2))
    x0 = represent_x(0, sp)
    top = sp.index[(5, 1)]
    assert x0.bands[(1, 1, 2, 0)][top] == 0


def test_dense_block_matches_entries(small_space):
    sp = TruncatedSpace(Fraction(5, 2), small_space.ctx)
    B = sphere_generator_ops(sp)["B"]
    mat = B.to_dense(1, 1)
    i = sp.index[(3, 1)]
    j = sp.index[(3, -1)]
    assert abs(mat[j, i] - B.entry((Fraction(3, 2), Fraction(-1, 2), 1), (Fraction(3, 2), Fraction(1, 2), 1))) < TOL


def test_shell_traces_of_identity(small_space):
    tr = ShellOperator.identity(small_space).shell_traces(1)
    assert tr[1] == 2 and tr[21] == 22


def test_commutators_are_bounded_and_A0_probe(ctx):
    space = TruncatedSpace(Fraction(41, 2), ctx)
    comm = commutator_with_D(generator("B"), space)
    probe = bound_probe(comm, l_from=5, l_to=19)
    assert probe.bounded
    good = bound_probe_A0(space, 1, l_from=5, l_to=19)
    assert good.bounded
    assert abs(good.reference - mpmath.sqrt(mpf(3) / 2)) < mpf(10) ** -3
    assert not bound_probe_A0(space, 2, l_from=5, l_to=19).bounded


def test_D_itself_is_unbounded(small_space):
    probe = bound_probe(represent_uq(small_space).D, l_from=1, l_to=10)
    assert not probe.bounded


def test_diagonal_op_single_parity(small_space):
    op = diagonal_op(small_space, lambda l2, k2, p: mpf(k2), parities=(-1,))
    assert op.parity_blocks() == [(-1, -1)]
    assert op.shell_traces(-1)[5] == 0
