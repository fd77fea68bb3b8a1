import random

import pytest
from hypothesis import given
from hypothesis import strategies as st
from mpmath import mpf

from podles.errors import AlgebraMismatch, DegreeBoundTooSmall, NotInSubalgebra
from podles.ncalg import (
    GENERATORS,
    AlgebraElement,
    AlgebraId,
    counit,
    embed_sphere,
    generator,
    normal_form,
    normal_form_random,
    recognize_in_sphere,
    sigma_twist,
    sphere_basis,
    star,
    unit,
)
from podles.scalars import ScalarContext

EXACT = mpf(10) ** -40


def words(alg, max_size=6):
    return st.lists(st.sampled_from(GENERATORS[alg]), min_size=0, max_size=max_size).map(tuple)


def sphere_elements(degree=2):
    monos = sphere_basis(degree)
    return st.dictionaries(
        st.sampled_from(monos), st.floats(min_value=-1, max_value=1, allow_nan=False), min_size=1, max_size=6
    ).map(lambda d: AlgebraElement(AlgebraId.SPHERE, {m: mpf(v) for m, v in d.items()}))


def test_sphere_relations(ctx):
    q = ctx.q
    A, B, Bs = (generator(g) for g in ("A", "B", "Bs"))
    assert normal_form(("B", "A")).isclose(q**2 * A * B)
    assert normal_form(("Bs", "A")).isclose(q**-2 * A * Bs)
    assert normal_form(("Bs", "B")).isclose(A - A * A)
    assert normal_form(("B", "Bs")).isclose(q**2 * A - q**4 * A * A)


def test_normal_form_of_spec_example(ctx):
    x = normal_form(("B", "A"))
    assert list(x.terms) == [(1, 1, 0)]
    assert abs(x.coefficient((1, 1, 0)) - mpf("0.25")) < EXACT


def test_pbw_monomials_are_fixed_points(ctx):
    for mono in sphere_basis(4):
        x = AlgebraElement(AlgebraId.SPHERE, {mono: mpf(1)})
        assert x * unit(AlgebraId.SPHERE) == x


@pytest.mark.parametrize("alg", list(AlgebraId))
@given(data=st.data())
def test_confluence(alg, data):
    word = data.draw(words(alg))
    seed = data.draw(st.integers(0, 2**32 - 1))
    left = normal_form(word, algebra=alg)
    other = normal_form_random(word, rng=random.Random(seed), algebra=alg)
    assert left.max_deviation(other) < EXACT


@pytest.mark.parametrize("alg", list(AlgebraId))
@given(data=st.data())
def test_associativity(alg, data):
    x, y, z = (normal_form(data.draw(words(alg, 3)), algebra=alg) for _ in range(3))
    assert ((x * y) * z).max_deviation(x * (y * z)) < EXACT


@given(sphere_elements(), sphere_elements())
def test_embedding_is_multiplicative(x, y):
    assert embed_sphere(x * y).max_deviation(embed_sphere(x) * embed_sphere(y)) < EXACT


@given(sphere_elements(3))
def test_recognize_inverts_embedding(x):
    assert recognize_in_sphere(embed_sphere(x)).max_deviation(x) < mpf(10) ** -30


def test_recognize_rejects_elements_outside_the_sphere(ctx):
    with pytest.raises(NotInSubalgebra):
        recognize_in_sphere(generator("a"))


def test_recognize_degree_bound_too_small(ctx):
    y = embed_sphere(generator("A") ** 4)
    with pytest.raises(DegreeBoundTooSmall):
        recognize_in_sphere(y, degree_bound=2)


@given(sphere_elements(), sphere_elements())
def test_counit_is_a_character(x, y):
    assert abs(counit(x * y) - counit(x) * counit(y)) < EXACT


def test_counit_values(ctx):
    assert counit(generator("A")) == 0
    assert counit(generator("a")) == 1
    assert counit(generator("K")) == 1
    assert counit(generator("E")) == 0
    assert counit(normal_form(("d", "a"))) == 1


@pytest.mark.parametrize("alg", list(AlgebraId))
@given(data=st.data())
def test_star_is_an_involutive_antihomomorphism(alg, data):
    x = normal_form(data.draw(words(alg, 3)), algebra=alg)
    y = normal_form(data.draw(words(alg, 3)), algebra=alg)
    assert star(x * y).max_deviation(star(y) * star(x)) < EXACT
    assert star(star(x)).max_deviation(x) < EXACT


def test_star_on_generators(ctx):
    q = ctx.q
    assert star(generator("B")) == generator("Bs")
    assert star(generator("a")) == generator("d")
    assert star(generator("b")).isclose(-q * generator("c"))
    assert star(generator("E")) == generator("F")


@given(sphere_elements(), sphere_elements(), st.floats(min_value=0.1, max_value=4))
def test_sigma_is_an_automorphism(x, y, lam):
    assert sigma_twist(lam, x * y).max_deviation(sigma_twist(lam, x) * sigma_twist(lam, y)) < mpf(10) ** -35


def test_sigma_rejects_zero(ctx):
    with pytest.raises(ValueError):
        sigma_twist(0, generator("B"))


def test_mixing_algebras_is_an_error(ctx):
    with pytest.raises(AlgebraMismatch):
        generator("A") + generator("a")
    with pytest.raises(AlgebraMismatch):
        normal_form(("A", "E"))


def test_elements_are_immutable_values(ctx):
    x = generator("A")
    y = x * 2
    assert x.coefficient((1, 0, 0)) == 1
    assert y.coefficient((1, 0, 0)) == 2
    with pytest.raises(TypeError):
        hash(x)


def test_powers(ctx):
    A = generator("A")
    assert A**0 == unit(AlgebraId.SPHERE)
    assert (A**3).degree() == 3
    with pytest.raises(ValueError):
        A ** -1


def test_other_precision_context():
    ctx = ScalarContext(q=mpf("0.3"), precision=30)
    try:
        B, A = generator("B", ctx), generator("A", ctx)
        assert (B * A).isclose(ctx.q**2 * A * B)
    finally:
        ScalarContext().activate()
