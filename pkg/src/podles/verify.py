"""Named invariant suites, shared by ``podles verify`` and the acceptance tests.

Each suite returns a :class:`SuiteResult` holding one :class:`Check` per
property with its observed deviation and tolerance.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
from mpmath import mpf

from . import hochschild as hs
from .hopf import calibrate_pairing, coproduct, functional_value
from .ncalg import (
    GENERATORS,
    AlgebraElement,
    AlgebraId,
    counit,
    embed_sphere,
    generator,
    normal_form,
    normal_form_random,
    sigma_twist,
    sphere_basis,
    star,
    unit,
)
from .scalars import ScalarContext, default_context
from .spectral import (
    ShellOperator,
    TruncatedSpace,
    bound_probe_A0,
    diagonal_op,
    represent,
    represent_uq,
    represent_x,
    sphere_generator_ops,
)
from .zeta import contour_residue, residue_aK, residue_LK, tau, zeta_direct, zeta_LK

__all__ = ["Check", "SuiteResult", "VerifyConfig", "SUITES", "run_suite", "run_all"]


@dataclass
class Check:
    label: str
    deviation: float
    tol: float
    passed: bool = field(init=False)
    # a check may require "greater than" (growth) instead of "below tol"
    expect_large: bool = False

    def __post_init__(self):
        self.deviation = float(self.deviation)
        if self.expect_large:
            self.passed = self.deviation > self.tol
        else:
            self.passed = self.deviation < self.tol


@dataclass
class SuiteResult:
    name: str
    criterion: int
    title: str
    checks: list
    duration: float = 0.0
    notes: list = field(default_factory=list)

    @property
    def passed(self):
        return bool(self.checks) and all(c.passed for c in self.checks)

    @property
    def failures(self):
        return [c for c in self.checks if not c.passed]

    @property
    def max_deviation(self):
        return max((c.deviation for c in self.checks if not c.expect_large), default=0.0)

    @property
    def worst_margin(self):
        """Largest ``deviation / tol`` over the "below tol" checks (pass means < 1)."""
        return max((c.deviation / c.tol for c in self.checks if not c.expect_large), default=0.0)

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        return (
            f"criterion {self.criterion:2d} [{self.name}] {status}: {self.title}; "
            f"{len(self.checks) - len(self.failures)}/{len(self.checks)} checks, "
            f"max deviation {self.max_deviation:.2e}, worst deviation/tol {self.worst_margin:.2e} "
            f"({self.duration:.1f}s)"
        )

    def to_dict(self):
        return {
            "suite": self.name,
            "criterion": self.criterion,
            "title": self.title,
            "passed": self.passed,
            "checks": len(self.checks),
            "failed": [
                {"label": c.label, "deviation": c.deviation, "tol": c.tol} for c in self.failures
            ],
            "max_deviation": self.max_deviation,
            "worst_margin": self.worst_margin,
            "duration_s": round(self.duration, 3),
            "notes": self.notes,
        }


@dataclass
class VerifyConfig:
    ctx: ScalarContext = field(default_factory=default_context)
    l_max: Fraction = Fraction(81, 2)
    l_max_continuation: Fraction = Fraction(121, 2)
    j_max: int = 200
    seed: int = 20240601

    def space(self, l_max=None):
        key = (self.ctx, l_max or self.l_max)
        hit = _SPACES.get(key)
        if hit is None:
            hit = TruncatedSpace(key[1], self.ctx)
            _SPACES[key] = hit
        return hit


_SPACES = {}


def _dev(x, y=0):
    return abs(x - y) if not isinstance(x, AlgebraElement) else x.max_deviation(y)


# ---------------------------------------------------------------------------
# 1. rewriting


def _random_word(rng, alg, length):
    return tuple(rng.choice(GENERATORS[alg]) for _ in range(length))


def suite_relations(cfg: VerifyConfig) -> SuiteResult:
    ctx = cfg.ctx
    q = ctx.q
    tol = 1e-40
    nf = lambda *w: normal_form(w, ctx)  # noqa: E731
    A, B, Bs = nf("A"), nf("B"), nf("Bs")
    one = unit(AlgebraId.SPHERE, ctx)
    checks = [
        Check("sphere BA = q^2 AB", _dev(nf("B", "A"), q**2 * nf("A", "B")), tol),
        Check("sphere B*A = q^-2 AB*", _dev(nf("Bs", "A"), q**-2 * nf("A", "Bs")), tol),
        Check("sphere B*B = A - A^2", _dev(nf("Bs", "B"), A - A * A), tol),
        Check("sphere BB* = q^2 A - q^4 A^2", _dev(nf("B", "Bs"), q**2 * A - q**4 * A * A), tol),
    ]
    eA, eB, eBs = (embed_sphere(x) for x in (A, B, Bs))
    checks += [
        Check("embedded BA = q^2 AB", _dev(eB * eA, q**2 * eA * eB), tol),
        Check("embedded B*A = q^-2 AB*", _dev(eBs * eA, q**-2 * eA * eBs), tol),
        Check("embedded B*B = A - A^2", _dev(eBs * eB, eA - eA * eA), tol),
        Check("embedded BB* = q^2 A - q^4 A^2", _dev(eB * eBs, q**2 * eA - q**4 * eA * eA), tol),
        Check("embedded B* = B^*", _dev(star(eB), eBs), tol),
        Check("embedded A = A^*", _dev(star(eA), eA), tol),
    ]
    s = lambda *w: normal_form(w, ctx, algebra=AlgebraId.SUQ2)  # noqa: E731
    u1 = unit(AlgebraId.SUQ2, ctx)
    checks += [
        Check("SUq2 ab = q ba", _dev(s("a", "b"), q * s("b", "a")), tol),
        Check("SUq2 ac = q ca", _dev(s("a", "c"), q * s("c", "a")), tol),
        Check("SUq2 bd = q db", _dev(s("b", "d"), q * s("d", "b")), tol),
        Check("SUq2 cd = q dc", _dev(s("c", "d"), q * s("d", "c")), tol),
        Check("SUq2 bc = cb", _dev(s("b", "c"), s("c", "b")), tol),
        Check("SUq2 ad - q bc = 1", _dev(s("a", "d") - q * s("b", "c"), u1), tol),
        Check("SUq2 da - q^-1 bc = 1", _dev(s("d", "a") - s("b", "c") / q, u1), tol),
    ]
    u = lambda *w: normal_form(w, ctx, algebra=AlgebraId.UQ)  # noqa: E731
    uu = unit(AlgebraId.UQ, ctx)
    K, Ki = u("K"), u("Ki")
    checks += [
        Check("Uq KE = q EK", _dev(u("K", "E"), q * u("E", "K")), tol),
        Check("Uq KF = q^-1 FK", _dev(u("K", "F"), u("F", "K") / q), tol),
        Check("Uq EF - FE = [2]-bracket", _dev(u("E", "F") - u("F", "E"), (K * K - Ki * Ki) / (q - 1 / q)), tol),
        Check("Uq KK^-1 = 1", _dev(u("K", "Ki"), uu), tol),
        Check("Uq K^-1K = 1", _dev(u("Ki", "K"), uu), tol),
    ]
    rng = random.Random(cfg.seed)
    for alg in AlgebraId:
        worst = mpf(0)
        for _ in range(200):
            word = _random_word(rng, alg, rng.randint(2, 6))
            lhs = normal_form(word, ctx, algebra=alg)
            rhs = normal_form_random(word, ctx, rng, algebra=alg)
            worst = max(worst, lhs.max_deviation(rhs))
        checks.append(Check(f"confluence on 200 random {alg.value} words", worst, tol))
    worst = mpf(0)
    for _ in range(30):
        x = normal_form(_random_word(rng, AlgebraId.SUQ2, 3), ctx, algebra=AlgebraId.SUQ2)
        y = normal_form(_random_word(rng, AlgebraId.SUQ2, 2), ctx, algebra=AlgebraId.SUQ2)
        worst = max(worst, coproduct(x * y).max_deviation(coproduct(x) * coproduct(y)))
    checks.append(Check("SUq2 coproduct is multiplicative", worst, tol))
    return SuiteResult("relations", 1, "rewrite soundness and confluence", checks)


# ---------------------------------------------------------------------------
# 2. representation


def suite_representation(cfg: VerifyConfig) -> SuiteResult:
    space = cfg.space()
    ctx = space.ctx
    q = ctx.q
    tol = 1e-10
    g = sphere_generator_ops(space)
    A, B, Bs = g["A"], g["B"], g["Bs"]
    ops = represent_uq(space)
    xs = {i: represent_x(i, space) for i in (-1, 0, 1)}
    zero = ShellOperator.zero(space)
    checks = [
        Check("BA = q^2 AB", (B * A).max_deviation(A * B * q**2), tol),
        Check("B*A = q^-2 AB*", (Bs * A).max_deviation(A * Bs * q**-2), tol),
        Check("B*B = A - A^2", (Bs * B).max_deviation(A - A * A), tol),
        Check("BB* = q^2 A - q^4 A^2", (B * Bs).max_deviation(A * q**2 - A * A * q**4), tol),
        Check("x_-1^* = -q^-1 x_1", xs[-1].adjoint().max_deviation(xs[1] * (-1 / q)), tol),
        Check("x_0^* = x_0", xs[0].adjoint().max_deviation(xs[0]), tol),
        Check("B^* = B*", B.adjoint().max_deviation(Bs), tol),
    ]
    for i in (-1, 0, 1):
        checks.append(
            Check(f"K x_{i} K^-1 = q^{i} x_{i}", (ops.K * xs[i] * ops.Kinv).max_deviation(xs[i] * q**i), tol)
        )
    # f x_i = (f |> x_i) K + (K^-1 |> x_i) f for f = E, F (the coproduct form of
    # equivariance; multiplying through by K^-1 would amplify rounding by q^-l)
    c = mpmath.sqrt(q + 1 / q)
    for i in (-1, 0, 1):
        for name, step in (("E", 1), ("F", -1)):
            f = ops[name]
            target = xs.get(i + step)
            rhs = xs[i] * f * q ** (-i)
            if target is not None:
                rhs = rhs + target * ops.K * c
            expect = f"c x_{i + step} K + " if target is not None else ""
            checks.append(
                Check(f"{name} x_{i} = {expect}q^{-i} x_{i} {name}", (f * xs[i]).max_deviation(rhs), tol)
            )
    D = ops.D
    for name in ("E", "F", "K"):
        X = ops[name]
        checks.append(Check(f"[D, {name}] = 0", (D * X).max_deviation(X * D), tol))
    checks.append(Check("gamma D = -D gamma", (ops.gamma * D).max_deviation(-(D * ops.gamma)), tol))
    res = SuiteResult("representation", 2, "relations, adjointness and equivariance as matrices", checks)
    res.notes.append(f"l_max = {space.l_max}, window of x_+-1: l <= {xs[1].valid_l_max}")
    return res


# ---------------------------------------------------------------------------
# 3. continuation


def _lk_operator(space, beta, delta, parity):
    """``L^beta K^delta`` on one parity, built from integer powers of ``q^(beta/2)`` and ``q^(delta/2)``."""
    q = space.ctx.q
    qb, qd = q ** (beta / 2), q ** (delta / 2)
    lp = {l2: qb**l2 for l2 in range(1, space.L2 + 1, 2)}
    kp = {k2: qd**k2 for k2 in range(-space.L2, space.L2 + 1)}
    return diagonal_op(space, lambda l2, k2, p: lp[l2] * kp[k2], parities=(parity,))


def suite_continuation(cfg: VerifyConfig) -> SuiteResult:
    space = cfg.space(cfg.l_max_continuation)
    ctx = space.ctx
    q = ctx.q
    tol = 1e-8
    rng = random.Random(cfg.seed + 3)
    checks = []
    for k in range(20):
        beta = mpf(rng.uniform(-2, 2))
        delta = mpf(rng.uniform(-3, 3))
        absc = -beta + abs(delta)
        z = mpmath.mpc(absc + mpf("1.5"), rng.uniform(-1, 1))
        parity = 1 if k % 2 == 0 else -1
        T = _lk_operator(space, beta, delta, parity)
        direct = zeta_direct(T, parity, z, space, abscissa=absc)
        closed = zeta_LK(beta, delta, z, cfg.j_max, ctx)
        checks.append(
            Check(
                f"overlap beta={mpmath.nstr(beta, 4)} delta={mpmath.nstr(delta, 4)} z={mpmath.nstr(z, 4)}",
                abs(direct.value - closed.value),
                tol,
            )
        )
    for beta, delta in [(0, 2), (0, -2), (0, 0), (2, 2), (-1, 0)]:
        pole = residue_LK(beta, delta, ctx)
        num = contour_residue(lambda z: zeta_LK(beta, delta, z, cfg.j_max, ctx).value, pole.location)
        checks.append(Check(f"contour residue at (beta, delta) = ({beta}, {delta})", abs(num - pole.residue), tol))
    res = SuiteResult("continuation", 3, "closed-form continuation against direct sums and contour residues", checks)
    res.notes.append(f"direct sums over l <= {space.l_max}, j_max = {cfg.j_max}")
    return res


# ---------------------------------------------------------------------------
# 4. residue table


def _table_power_row(n, mu, q):
    # -q^mu (q^-1 - q)^(2 mu) / ((1 - q^(2(n+mu))) ln q)
    return -mpmath.power(q, mu) * mpmath.power(1 / q - q, 2 * mu) / ((1 - mpmath.power(q, 2 * (n + mu))) * mpmath.ln(q))


def _table_unit_row(mu, q):
    if mu == 0:
        return 2 * mpmath.ln(1 / q - q) / mpmath.ln(q) ** 2
    m = abs(mu)
    return -mpmath.power(q, m) * mpmath.power(1 / q - q, 2 * m) / ((1 - mpmath.power(q, 2 * m)) * mpmath.ln(q))


def suite_residues(cfg: VerifyConfig) -> SuiteResult:
    ctx = cfg.ctx
    q = ctx.q
    tol = 1e-10
    mus = [mpf(x) for x in ("-2", "-1", "-0.5", "0", "0.5", "1", "2")]
    checks = []
    worst = mpf(0)
    for mono in sphere_basis(5):
        if mono[1] or mono[2]:
            a = AlgebraElement(AlgebraId.SPHERE, {mono: mpf(1)}, ctx)
            worst = max(worst, max(abs(residue_aK(a, mu)) for mu in mus))
    checks.append(Check("A^n B^m, A^n B*^m (m > 0) give 0", worst, tol))
    A = generator("A", ctx)
    checks.append(
        Check("A^n with mu < 0 gives 0", max(abs(residue_aK(A**n, mu)) for n in range(1, 5) for mu in mus if mu < 0), tol)
    )
    worst = mpf(0)
    for n in range(1, 5):
        for mu in mus:
            if mu >= 0:
                worst = max(worst, abs(residue_aK(A**n, mu) - _table_power_row(n, mu, q)))
    checks.append(Check("A^n with mu >= 0 matches the table formula", worst, tol))
    one = unit(AlgebraId.SPHERE, ctx)
    checks.append(
        Check("a = 1 matches the table formula", max(abs(residue_aK(one, mu) - _table_unit_row(mu, q)) for mu in mus), tol)
    )
    for mu in (-1, -0.5, 0, 0.5, 1):
        mu = mpf(mu)
        checks.append(
            Check(f"residue_aK(1, {mu}) = residue_LK(0, {2 * mu})", abs(residue_aK(one, mu) - residue_LK(0, 2 * mu, ctx).residue), tol)
        )
    rng = random.Random(cfg.seed + 4)
    worst = mpf(0)
    for _ in range(30):
        a, b = hs.random_sphere_element(rng, 3, ctx), hs.random_sphere_element(rng, 3, ctx)
        s, t = mpf(rng.uniform(-1, 1)), mpf(rng.uniform(-1, 1))
        worst = max(worst, abs(residue_aK(a * s + b * t, 1) - s * residue_aK(a, 1) - t * residue_aK(b, 1)))
    checks.append(Check("residue_aK is linear", worst, tol))
    if abs(q - mpf("0.5")) < mpf(10) ** -30:
        checks.append(Check("residue_aK(A, 1) = 1.73123405 at q = 1/2", abs(residue_aK(A, 1) - mpf("1.73123405")), 1e-8))
    return SuiteResult("residues", 4, "residue table for a K^(2 mu)", checks)


# ---------------------------------------------------------------------------
# 5. twisted traces


def suite_traces(cfg: VerifyConfig) -> SuiteResult:
    ctx = cfg.ctx
    q = ctx.q
    tol = 1e-8
    checks = []
    for mu in ("-0.5", "-1", "-2"):
        mu = mpf(mu)
        worst = max(
            abs(tau(mu, AlgebraElement(AlgebraId.SPHERE, {m: mpf(1)}, ctx)) - (1 if m == (0, 0, 0) else 0))
            for m in sphere_basis(4)
        )
        checks.append(Check(f"tau_{mu} = counit on monomials of degree <= 4", worst, tol))
    rng = random.Random(cfg.seed + 5)
    for mu in ("0.5", "1", "2"):
        mu = mpf(mu)
        lam = q ** (2 * mu)
        worst = mpf(0)
        for _ in range(100):
            a, b = hs.random_sphere_element(rng, 3, ctx), hs.random_sphere_element(rng, 3, ctx)
            worst = max(worst, abs(tau(mu, a * b) - tau(mu, sigma_twist(lam, b) * a)))
        checks.append(Check(f"tau_{mu}(ab) = tau_{mu}(sigma(b) a) on 100 random pairs", worst, tol))
    A = generator("A", ctx)
    checks.append(Check("tau_1(A) = 1/(1+q^2)", abs(tau(1, A) - 1 / (1 + q**2)), tol))
    B, Bs = generator("B", ctx), generator("Bs", ctx)
    checks.append(Check("tau_1(BB*) = q^-2 tau_1(B*B)", abs(tau(1, B * Bs) - q**-2 * tau(1, Bs * B)), tol))
    return SuiteResult("traces", 5, "twisted traces tau_mu", checks)


# ---------------------------------------------------------------------------
# 6. boundedness


def suite_boundedness(cfg: VerifyConfig) -> SuiteResult:
    space = cfg.space()
    good = bound_probe_A0(space, 1)
    bad = bound_probe_A0(space, 2)
    checks = [
        Check("(A - L^2 K^2) L^-1 plateaus (relative spread)", good.relative_spread, 0.01),
        Check("(A - L^2 K^2) L^-2 grows (relative spread)", bad.relative_spread, 0.01, expect_large=True),
    ]
    res = SuiteResult("boundedness", 6, "shell-supremum plateau for A_0", checks)
    res.notes.append(
        f"plateau over l in [{good.plateau_from}, {good.plateau_to}]: s = {mpmath.nstr(good.reference, 10)}"
    )
    return res


# ---------------------------------------------------------------------------
# 7. operator identity


def suite_operator_identity(cfg: VerifyConfig) -> SuiteResult:
    space = cfg.space()
    ctx = space.ctx
    tol = 1e-10
    names = {"A": "A", "B": "B", "Bs": "B*"}
    gens = {k: generator(k, ctx) for k in names}
    checks = []
    for n0, n1, n2 in itertools.product(names, repeat=3):
        a0, a1, a2 = gens[n0], gens[n1], gens[n2]
        m_plus, m_minus = hs.multiplication_elements(a0, a1, a2)
        op = hs.cocycle_operator(a0, a1, a2, space)
        dev_plus = op.restrict(1, 1).max_deviation(represent(m_plus, space).restrict(1, 1))
        dev_minus = op.restrict(-1, -1).max_deviation(represent(m_minus, space).restrict(-1, -1))
        cross = max(op.restrict(1, -1).max_deviation(ShellOperator.zero(space)),
                    op.restrict(-1, 1).max_deviation(ShellOperator.zero(space)))
        label = f"({names[n0]}, {names[n1]}, {names[n2]})"
        checks.append(Check(f"{label} on H+", dev_plus, tol))
        checks.append(Check(f"{label} on H-", dev_minus, tol))
        checks.append(Check(f"{label} preserves parity", cross, tol))
    return SuiteResult("operator-identity", 7, "gamma a0 [D,a1][D,a2] acts by m_+ on H+ and m_- on H-", checks)


# ---------------------------------------------------------------------------
# 8. cocycle formula


def suite_cocycle_formula(cfg: VerifyConfig) -> SuiteResult:
    ctx = cfg.ctx
    q = ctx.q
    tol = 1e-8
    rng = random.Random(cfg.seed + 8)
    triples = hs.random_triples(rng, 50, 2, ctx)
    worst = worst_eps = worst_cons = mpf(0)
    table = calibrate_pairing(ctx)
    E, F = generator("E", ctx), generator("F", ctx)
    for a0, a1, a2 in triples:
        m_plus, m_minus = hs.multiplication_elements(a0, a1, a2, table)
        phi = residue_aK(m_plus + m_minus, -1)
        worst = max(worst, abs(phi - hs.closed_form_cocycle(a0, a1, a2, table)))
        eps = counit(a0) * (
            functional_value(E, a1, table) * functional_value(F, a2, table)
            - functional_value(F, a1, table) * functional_value(E, a2, table)
        )
        worst_eps = max(worst_eps, abs(counit(m_plus + m_minus) - eps))
        worst_cons = max(worst_cons, abs(phi - (q - 1 / q) / mpmath.log(q) * counit(m_plus + m_minus)))
    checks = [
        Check("residue cocycle = closed form on 50 random triples", worst, tol),
        Check("counit(m_+ + m_-) = counit(a0)(E(a1)F(a2) - F(a1)E(a2))", worst_eps, tol),
        Check("zeta route = counit route", worst_cons, tol),
    ]
    max_order = 0
    probe = mpf(0)
    for a0, a1, a2 in triples[:10] + hs.generator_triples(ctx) + [
        (unit(AlgebraId.SPHERE, ctx), generator("B", ctx), generator("Bs", ctx))
    ]:
        rep = hs.pole_order_check(a0, a1, a2, table)
        max_order = max(max_order, rep.max_order)
        probe = max(probe, rep.laurent_probe)
    checks.append(Check("pole order at z = 2 in excess of 1", max(0, max_order - 1), 0.5))
    checks.append(Check("|h^2 Z(2+h)| at h = 1e-12", probe, 1e-6))
    return SuiteResult("cocycle-formula", 8, "residue cocycle equals the closed form; simple pole at z = 2", checks)


# ---------------------------------------------------------------------------
# 9. cocycle condition


def suite_cocycle(cfg: VerifyConfig) -> SuiteResult:
    ctx = cfg.ctx
    q = ctx.q
    tol = 1e-10
    rng = random.Random(cfg.seed + 9)
    quads = hs.random_quadruples(rng, 200, 2, ctx)
    checks = []
    for lam, lname in ((q**2, "q^2"), (q**-2, "q^-2"), (mpf(1), "1")):
        for label, phi in (("fundamental", hs.fundamental_cochain(lam=lam)), ("residue", hs.residue_cochain(lam=lam))):
            rep = hs.cocycle_check(phi, samples=quads, tol=tol)
            checks.append(Check(f"{label} cocycle, sigma = sigma_{lname}, {rep.samples} quadruples", rep.max_deviation, tol))
    return SuiteResult("cocycle", 9, "twisted Hochschild cocycle condition", checks)


# ---------------------------------------------------------------------------
# 10. trace class


def suite_trace_class(cfg: VerifyConfig) -> SuiteResult:
    space = cfg.space()
    ctx = space.ctx
    names = {"A": "A", "B": "B", "Bs": "B*"}
    gens = {k: generator(k, ctx) for k in names}
    triples = [((n0, n1, n2), (gens[n0], gens[n1], gens[n2])) for n0, n1, n2 in itertools.product(names, repeat=3)]
    triples.append((("1", "B", "Bs"), (unit(AlgebraId.SPHERE, ctx), gens["B"], gens["Bs"])))
    triples.append((("1", "Bs", "B"), (unit(AlgebraId.SPHERE, ctx), gens["Bs"], gens["B"])))
    checks = []
    threshold = float(ctx.q ** mpf("0.4"))
    for labels, (a0, a1, a2) in triples:
        rep = hs.trace_class_proxy(a0, a1, a2, space, z=mpf("2.5"))
        checks.append(Check(f"tail ratio for ({', '.join(labels)})", rep.tail_ratio, threshold))
    res = SuiteResult("trace-class", 10, "geometric decay of shell traces at z = 2.5", checks)
    res.notes.append(f"threshold q^0.4 = {threshold:.6f}")
    return res


SUITES = {
    "relations": suite_relations,
    "representation": suite_representation,
    "continuation": suite_continuation,
    "residues": suite_residues,
    "traces": suite_traces,
    "boundedness": suite_boundedness,
    "operator-identity": suite_operator_identity,
    "cocycle-formula": suite_cocycle_formula,
    "cocycle": suite_cocycle,
    "trace-class": suite_trace_class,
}


def run_suite(name: str, cfg: VerifyConfig | None = None) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
    cfg = cfg or VerifyConfig()
    cfg.ctx.activate()
    t0 = time.perf_counter()
    res = SUITES[name](cfg)
    res.duration = time.perf_counter() - t0
    return res


def run_all(cfg: VerifyConfig | None = None):
    cfg = cfg or VerifyConfig()
    return [run_suite(name, cfg) for name in SUITES]
