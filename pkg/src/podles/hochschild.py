"""Twisted Hochschild 2-cochains on the Podleś sphere.

The fundamental cocycle is ``φ̃(a0, a1, a2) = ε(a0) E(a1) F(a2)``.  The
residue cocycle ``φ(a0, a1, a2) = Res_{z=2} tr(γ a0 [D,a1][D,a2] K^-2 |D|^-z)``
is computed algebraically: on ``H_+`` the operator ``γ a0 [D,a1][D,a2]`` is
multiplication by ``m_+ = a0 (a1 ◁ E)(a2 ◁ F)`` and on ``H_-`` by
``m_- = -a0 (a1 ◁ F)(a2 ◁ E)``, both of which lie in the sphere.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import mpmath
from mpmath import mpf

from .errors import NotInSubalgebra
from .hopf import PairingTable, calibrate_pairing, functional_value, right_act
from .ncalg import (
    AlgebraElement,
    AlgebraId,
    counit,
    embed_sphere,
    generator,
    recognize_in_sphere,
    sigma_twist,
    sphere_basis,
    unit,
)
from .scalars import ScalarContext, default_context, real_power, to_mp
from .spectral import (
    ShellOperator,
    TruncatedSpace,
    _qint2,
    commutator_with_D,
    represent,
    represent_uq,
)
from .zeta import PoleData, _pole_order_at, residue_aK, zeta_LK

__all__ = [
    "Cochain2",
    "CocycleReport",
    "fundamental_cocycle",
    "closed_form_cocycle",
    "multiplication_elements",
    "residue_cocycle",
    "cocycle_check",
    "check_trilinearity",
    "normalization_ratio",
    "pole_order_check",
    "cocycle_operator",
    "trace_class_proxy",
    "random_sphere_element",
    "random_triples",
    "random_quadruples",
]


def _table(table, ctx):
    table = table or calibrate_pairing(ctx)
    table.require_calibrated()
    return table


def _uq(name, ctx):
    return generator(name, ctx)


def fundamental_cocycle(a0, a1, a2, table: PairingTable | None = None):
    """``ε(a0) E(a1) F(a2)``."""
    ctx = a0.ctx
    table = _table(table, ctx)
    e0 = counit(a0)
    if e0 == 0:
        return mpf(0)
    return e0 * functional_value(_uq("E", ctx), a1, table) * functional_value(_uq("F", ctx), a2, table)


def closed_form_cocycle(a0, a1, a2, table: PairingTable | None = None):
    """``(q - q^-1)/ln q · ε(a0) (E(a1) F(a2) - F(a1) E(a2))``."""
    ctx = a0.ctx
    table = _table(table, ctx)
    e0 = counit(a0)
    if e0 == 0:
        return mpf(0)
    E, F = _uq("E", ctx), _uq("F", ctx)
    fv = lambda f, a: functional_value(f, a, table)  # noqa: E731
    q = ctx.q
    return (q - 1 / q) / mpmath.log(q) * e0 * (fv(E, a1) * fv(F, a2) - fv(F, a1) * fv(E, a2))


@lru_cache(maxsize=None)
def _mono_product(m1, m2, first, second, table: PairingTable):
    """``recognize((m1 ◁ first)(m2 ◁ second))`` for sphere monomials."""
    ctx = table.ctx
    x1 = embed_sphere(AlgebraElement(AlgebraId.SPHERE, {m1: mpf(1)}, ctx))
    x2 = embed_sphere(AlgebraElement(AlgebraId.SPHERE, {m2: mpf(1)}, ctx))
    y = right_act(x1, _uq(first, ctx), table) * right_act(x2, _uq(second, ctx), table)
    try:
        return recognize_in_sphere(y)
    except NotInSubalgebra as exc:
        raise NotInSubalgebra(
            f"(a1 ◁ {first})(a2 ◁ {second}) left the sphere for monomials {m1}, {m2}: {exc}"
        ) from exc


def _bilinear(a1, a2, first, second, table):
    ctx = a1.ctx
    out = AlgebraElement(AlgebraId.SPHERE, {}, ctx)
    for m1, c1 in a1.terms.items():
        for m2, c2 in a2.terms.items():
            out = out + _mono_product(m1, m2, first, second, table) * (c1 * c2)
    return out


def multiplication_elements(a0, a1, a2, table: PairingTable | None = None):
    """``(m_+, m_-) = (a0 (a1 ◁ E)(a2 ◁ F), -a0 (a1 ◁ F)(a2 ◁ E))`` as sphere elements.

    Since the embedding is an algebra map, ``m_+`` is ``a0`` times the preimage
    of ``(a1 ◁ E)(a2 ◁ F)``.
    """
    table = _table(table, a0.ctx)
    m_plus = a0 * _bilinear(a1, a2, "E", "F", table)
    m_minus = -(a0 * _bilinear(a1, a2, "F", "E", table))
    return m_plus, m_minus


def residue_cocycle(a0, a1, a2, table: PairingTable | None = None):
    """``Res_{z=2} tr_H(γ a0 [D,a1][D,a2] K^-2 |D|^-z) = Res ζ^+_{m_+ K^-2} + Res ζ^-_{m_- K^-2}``."""
    m_plus, m_minus = multiplication_elements(a0, a1, a2, table)
    return residue_aK(m_plus + m_minus, -1)


def normalization_ratio(ctx: ScalarContext | None = None):
    """The constant ``(q - q^-3)/ln q`` relating the classes of φ and φ̃ (reported, not verified)."""
    q = (ctx or default_context()).q
    return (q - q**-3) / mpmath.log(q)


# ---------------------------------------------------------------------------
# cochains and the cocycle condition


@dataclass
class Cochain2:
    """A trilinear functional on the sphere together with the twist of its cocycle condition."""

    evaluator: Callable
    twist: Callable = field(default=lambda a: a)
    label: str = "custom"

    def __call__(self, a0, a1, a2):
        return self.evaluator(a0, a1, a2)


@dataclass(frozen=True)
class CocycleReport:
    max_deviation: mpf
    samples: int
    passed: bool
    tol: float

    def __post_init__(self):
        if self.max_deviation < 0:
            raise ValueError("max_deviation must be nonnegative")


def fundamental_cochain(table=None, lam=1):
    return Cochain2(lambda a0, a1, a2: fundamental_cocycle(a0, a1, a2, table), lambda a: sigma_twist(lam, a), "fundamental")


def residue_cochain(table=None, lam=1):
    return Cochain2(lambda a0, a1, a2: residue_cocycle(a0, a1, a2, table), lambda a: sigma_twist(lam, a), "residue")


def cocycle_check(phi, sigma=None, samples=(), tol=1e-10) -> CocycleReport:
    """Max over quadruples of ``|φ(a0a1,a2,a3) - φ(a0,a1a2,a3) + φ(a0,a1,a2a3) - φ(σ(a3)a0,a1,a2)|``."""
    if sigma is None:
        sigma = phi.twist if isinstance(phi, Cochain2) else (lambda a: a)
    worst = mpf(0)
    n = 0
    for a0, a1, a2, a3 in samples:
        s = phi(a0 * a1, a2, a3) - phi(a0, a1 * a2, a3) + phi(a0, a1, a2 * a3) - phi(sigma(a3) * a0, a1, a2)
        worst = max(worst, abs(s))
        n += 1
    return CocycleReport(worst, n, bool(worst < tol), tol)


def check_trilinearity(phi, rng: random.Random, ctx=None, trials=10, degree=2):
    """Max deviation of ``φ`` from linearity in each slot on random combinations."""
    ctx = ctx or default_context()
    worst = mpf(0)
    for _ in range(trials):
        args = [random_sphere_element(rng, degree, ctx) for _ in range(3)]
        extra = random_sphere_element(rng, degree, ctx)
        s, t = mpf(rng.uniform(-1, 1)), mpf(rng.uniform(-1, 1))
        for slot in range(3):
            mixed = list(args)
            mixed[slot] = args[slot] * s + extra * t
            other = list(args)
            other[slot] = extra
            dev = phi(*mixed) - (s * phi(*args) + t * phi(*other))
            worst = max(worst, abs(dev))
    return worst


# ---------------------------------------------------------------------------
# analytic structure at z = 2


@dataclass(frozen=True)
class PoleOrderReport:
    kernels: tuple
    max_order: int
    residue: object
    laurent_probe: mpf

    @property
    def simple(self):
        return self.max_order <= 1


def pole_order_check(a0, a1, a2, table=None, h=mpf("1e-12")) -> PoleOrderReport:
    """Order of the pole at ``z = 2`` of the continued ``tr(γ a0 [D,a1][D,a2] K^-2 |D|^-z)``.

    Each diagonal monomial ``A^n`` of ``m_± K^-2`` contributes the kernel
    ``ζ_{L^{2n} K^{2n-2}}``, whose poles sit at ``-2n ± (2n-2) - 2j``.  The
    report lists the order of each kernel at ``z = 2`` and ``|h^2 Z(2 + h)|``,
    which tends to zero exactly when the pole is at most simple.
    """
    ctx = a0.ctx
    m_plus, m_minus = multiplication_elements(a0, a1, a2, table)
    m = m_plus + m_minus
    kernels = []
    max_order = 0
    for (n, b, bs), c in sorted(m.terms.items()):
        if b or bs:
            continue
        beta, delta = 2 * n, 2 * n - 2
        order = _pole_order_at(beta, delta, mpf(2), ctx, ctx.tol)
        kernels.append((n, beta, delta, order))
        if c != 0:
            max_order = max(max_order, order)
    z = 2 + to_mp(h)
    total = mpf(0)
    for n, beta, delta, _ in kernels:
        total += m.terms[(n, 0, 0)] * zeta_LK(beta, delta, z, ctx=ctx, tol=to_mp(h) / 100).value
    return PoleOrderReport(tuple(kernels), max_order, residue_aK(m, -1), abs(to_mp(h) ** 2 * total))


def cocycle_operator(a0, a1, a2, space: TruncatedSpace) -> ShellOperator:
    """``γ a0 [D,a1][D,a2]`` on the truncated space."""
    ops = represent_uq(space)
    return ops.gamma * represent(a0, space) * commutator_with_D(a1, space) * commutator_with_D(a2, space)


@dataclass(frozen=True)
class TraceClassReport:
    terms: dict
    partial_sum: object
    tail_ratio: mpf
    threshold: mpf
    passed: bool


def trace_class_proxy(a0, a1, a2, space: TruncatedSpace, z=mpf("2.5"), tail_shells=10, rel_floor=mpf("1e-30")):
    """Absolute summability of shell traces of ``γ a0 [D,a1][D,a2] K^-2 |D|^-z``.

    ``tail_ratio`` is the largest ratio ``|t_{l+1}| / |t_l|`` over the last
    ``tail_shells`` shells of the valid window (terms below ``rel_floor`` times
    the largest one are treated as zero).  The test passes when it is below
    ``q^{Re z - 2.1}``.
    """
    ctx = space.ctx
    q = ctx.q
    z = to_mp(z)
    ops = represent_uq(space)
    T = cocycle_operator(a0, a1, a2, space) * ops.Kinv * ops.Kinv
    traces = {}
    for p in (1, -1):
        for l2, c in T.shell_traces(p).items():
            traces[l2] = traces.get(l2, mpf(0)) + c
    terms = {l2: c * real_power(_qint2(l2 + 1, ctx), -z) for l2, c in traces.items()}
    biggest = max((abs(t) for t in terms.values()), default=mpf(0))
    l2s = sorted(terms)[-(tail_shells + 1):]
    ratio = mpf(0)
    for lo, hi in zip(l2s, l2s[1:]):
        if abs(terms[lo]) <= rel_floor * biggest:
            continue
        ratio = max(ratio, abs(terms[hi]) / abs(terms[lo]))
    threshold = q ** (mpmath.re(z) - mpf("2.1"))
    return TraceClassReport(terms, mpmath.fsum(terms.values()), ratio, threshold, bool(ratio < threshold))


# ---------------------------------------------------------------------------
# random samples


def random_sphere_element(rng: random.Random, degree=2, ctx: ScalarContext | None = None, density=0.7):
    """Random coefficients in [-1, 1] on a random subset of the PBW monomials of degree <= ``degree``."""
    ctx = ctx or default_context()
    terms = {}
    for mono in sphere_basis(degree):
        if rng.random() < density:
            terms[mono] = mpf(rng.uniform(-1, 1))
    if not terms:
        terms[(0, 0, 0)] = mpf(rng.uniform(-1, 1))
    return AlgebraElement(AlgebraId.SPHERE, terms, ctx)


def random_triples(rng, count, degree=2, ctx=None):
    return [tuple(random_sphere_element(rng, degree, ctx) for _ in range(3)) for _ in range(count)]


def random_quadruples(rng, count, degree=2, ctx=None):
    return [tuple(random_sphere_element(rng, degree, ctx) for _ in range(4)) for _ in range(count)]


def generator_triples(ctx=None):
    gens = [generator(g, ctx or default_context()) for g in ("A", "B", "Bs")]
    return [(x, y, w) for x in gens for y in gens for w in gens]
