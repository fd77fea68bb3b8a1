"""Coproducts, the dual pairing U_q(su(2)) x O(SU_q(2)) and the induced actions.

The pairing is fixed on generators by a :class:`PairingTable`; the value of
``<f, u_ij>`` for a U_q generator ``f`` is the ``(i, j)`` entry of a 2x2
matrix ``rho(f)`` where ``u = [[a, b], [c, d]]``.  Everything else follows
from the Hopf pairing axioms.

Left action ``f |> x = x_(1) <f, x_(2)>``, right action
``x <| f = <f, x_(1)> x_(2)``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache

import mpmath
from mpmath import mpf

from .errors import AlgebraMismatch, CalibrationError, UncalibratedPairing
from .ncalg import (
    AlgebraElement,
    AlgebraId,
    _rewriter,
    counit,
    embed_sphere,
    generator,
    monomial_word,
    unit,
)
from .scalars import ScalarContext, default_context

__all__ = [
    "TensorElement",
    "PairingTable",
    "coproduct",
    "calibrate_pairing",
    "calibration_identities",
    "pair",
    "left_act",
    "right_act",
    "left_act_via_coproduct",
    "functional_value",
    "sphere_x",
]

_UIDX = {"a": (0, 0), "b": (0, 1), "c": (1, 0), "d": (1, 1)}
_UNAME = {v: k for k, v in _UIDX.items()}


# ---------------------------------------------------------------------------
# tensors


class TensorElement:
    """Finite sum of elementary tensors ``m_1 (x) ... (x) m_n`` over one algebra."""

    __slots__ = ("algebra", "terms", "ctx", "arity")

    def __init__(self, algebra, terms, ctx, arity=2):
        cut = ctx.prune
        self.algebra = algebra
        self.terms = {k: v for k, v in terms.items() if abs(v) >= cut}
        self.ctx = ctx
        self.arity = arity

    @classmethod
    def from_factors(cls, factors):
        """Elementary tensor of a list of AlgebraElements."""
        first = factors[0]
        acc = {(): mpf(1)}
        for f in factors:
            nxt = defaultdict(mpf)
            for key, c in acc.items():
                for m, v in f.terms.items():
                    nxt[key + (m,)] += c * v
            acc = nxt
        return cls(first.algebra, acc, first.ctx, len(factors))

    def __add__(self, other):
        acc = defaultdict(mpf, self.terms)
        for k, v in other.terms.items():
            acc[k] += v
        return TensorElement(self.algebra, acc, self.ctx, self.arity)

    def __sub__(self, other):
        return self + other * -1

    def __mul__(self, other):
        if not isinstance(other, TensorElement):
            return TensorElement(
                self.algebra, {k: v * other for k, v in self.terms.items()}, self.ctx, self.arity
            )
        if other.arity != self.arity:
            raise ValueError("tensor arity mismatch")
        rw = _rewriter(self.algebra, self.ctx)
        acc = defaultdict(mpf)
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                partial = {(): c1 * c2}
                for m1, m2 in zip(k1, k2):
                    prod = rw.mono_product(m1, m2)
                    partial = {
                        key + (m,): c * v for key, c in partial.items() for m, v in prod.items()
                    }
                for key, c in partial.items():
                    acc[key] += c
        return TensorElement(self.algebra, acc, self.ctx, self.arity)

    def leg(self, i, mono_map):
        """Apply a linear map (monomial -> AlgebraElement or TensorElement) on leg ``i``."""
        acc = defaultdict(mpf)
        arity = None
        for key, c in self.terms.items():
            img = mono_map(key[i])
            if isinstance(img, TensorElement):
                parts = img.terms.items()
                arity = self.arity - 1 + img.arity
            elif isinstance(img, AlgebraElement):
                parts = (((m,), v) for m, v in img.terms.items())
                arity = self.arity
            else:  # scalar: contract the leg away
                parts = (((), img),)
                arity = self.arity - 1
            for sub, v in parts:
                acc[key[:i] + sub + key[i + 1 :]] += c * v
        if arity is None:
            arity = self.arity
        if arity == 1:
            return AlgebraElement(self.algebra, {k[0]: v for k, v in acc.items()}, self.ctx)
        return TensorElement(self.algebra, acc, self.ctx, arity)

    def max_deviation(self, other):
        keys = set(self.terms) | set(other.terms)
        return max((abs(self.terms.get(k, 0) - other.terms.get(k, 0)) for k in keys), default=mpf(0))

    def __repr__(self):
        return f"TensorElement({self.algebra.value}, {len(self.terms)} terms)"


def _gen_coproduct(alg, g, ctx):
    el = lambda h: generator(h, ctx)  # noqa: E731
    if alg is AlgebraId.UQ:
        if g in ("K", "Ki"):
            return [(el(g), el(g))]
        return [(el(g), el("K")), (el("Ki"), el(g))]
    i, j = _UIDX[g]
    return [(el(_UNAME[(i, k)]), el(_UNAME[(k, j)])) for k in range(2)]


@lru_cache(maxsize=None)
def _mono_coproduct(alg, mono, ctx):
    out = TensorElement.from_factors([unit(alg, ctx), unit(alg, ctx)])
    for g in monomial_word(alg, mono):
        d = None
        for left, right in _gen_coproduct(alg, g, ctx):
            t = TensorElement.from_factors([left, right])
            d = t if d is None else d + t
        out = out * d
    return out


def coproduct(x: AlgebraElement) -> TensorElement:
    """Multiplicative coproduct: ``D(K)=K(x)K``, ``D(E)=E(x)K+K^-1(x)E``, matrix coproduct on SUQ2."""
    if x.algebra is AlgebraId.SPHERE:
        raise AlgebraMismatch("the sphere is not a coalgebra")
    out = TensorElement(x.algebra, {}, x.ctx, 2)
    for mono, c in x.terms.items():
        out = out + _mono_coproduct(x.algebra, mono, x.ctx) * c
    return out


# ---------------------------------------------------------------------------
# pairing


@dataclass(frozen=True)
class PairingTable:
    """Generator pairings ``rho[f][i][j] = <f, u_ij>`` for ``f`` in K, Ki, E, F."""

    rho: dict = field(hash=False)
    ctx: ScalarContext
    calibrated: bool = False

    def __hash__(self):
        items = tuple(
            (g, tuple(tuple(row) for row in m)) for g, m in sorted(self.rho.items())
        )
        return hash((items, self.ctx, self.calibrated))

    def value(self, ugen, sgen):
        i, j = _UIDX[sgen]
        return self.rho[ugen][i][j]

    def require_calibrated(self):
        if not self.calibrated:
            raise UncalibratedPairing("pairing table has not been calibrated")


def _iterated_coproduct(g, n):
    """Terms of the n-fold coproduct of a U_q generator as tuples of generator names ('1' = unit)."""
    if g in ("K", "Ki"):
        return [(g,) * n]
    return [("Ki",) * p + (g,) + ("K",) * (n - p - 1) for p in range(n)]


def _uq_word(mono):
    return monomial_word(AlgebraId.UQ, mono)


def _table_or_default(table, ctx):
    if table is None:
        return calibrate_pairing(ctx)
    table.require_calibrated()
    return table


def _pair_mono(table: PairingTable, umono, smono):
    """<F^f K^k E^e, a^i b^j c^k d^l> via the tensor-power representation of rho."""
    sword = monomial_word(AlgebraId.SUQ2, smono)
    n = len(sword)
    rows = tuple(_UIDX[g][0] for g in sword)
    cols = tuple(_UIDX[g][1] for g in sword)
    uword = _uq_word(umono)
    if n == 0:
        return mpf(1) if not any(g in ("E", "F") for g in uword) else mpf(0)
    vec = {cols: mpf(1)}
    for g in reversed(uword):
        nxt = defaultdict(mpf)
        for term in _iterated_coproduct(g, n):
            for idx, c in vec.items():
                # apply rho(term[0]) (x) ... (x) rho(term[n-1]) to basis vector idx
                partial = [((), c)]
                for slot, h in enumerate(term):
                    m = table.rho[h]
                    j = idx[slot]
                    partial = [
                        (key + (i,), v * m[i][j]) for key, v in partial for i in (0, 1) if m[i][j] != 0
                    ]
                    if not partial:
                        break
                for key, v in partial:
                    nxt[key] += v
        vec = nxt
    return vec.get(rows, mpf(0))


def pair(f: AlgebraElement, x: AlgebraElement, table: PairingTable | None = None):
    """The Hopf pairing ``<f, x>`` for ``f`` in U_q(su(2)) and ``x`` in O(SU_q(2))."""
    if f.algebra is not AlgebraId.UQ or x.algebra is not AlgebraId.SUQ2:
        raise AlgebraMismatch("pair expects (UQ element, SUQ2 element)")
    table = _table_or_default(table, x.ctx)
    total = mpf(0)
    for um, cu in f.terms.items():
        for sm, cs in x.terms.items():
            total += cu * cs * _pair_mono(table, um, sm)
    return total


# ---------------------------------------------------------------------------
# actions


@lru_cache(maxsize=None)
def _gen_left(table: PairingTable, h, g):
    """h |> u_ij = sum_k u_ik <h, u_kj>."""
    ctx = table.ctx
    if h == "1":
        return generator(g, ctx)
    i, j = _UIDX[g]
    out = AlgebraElement(AlgebraId.SUQ2, {}, ctx)
    for k in range(2):
        v = table.rho[h][k][j]
        if v != 0:
            out = out + generator(_UNAME[(i, k)], ctx) * v
    return out


@lru_cache(maxsize=None)
def _gen_right(table: PairingTable, h, g):
    """u_ij <| h = sum_k <h, u_ik> u_kj."""
    ctx = table.ctx
    if h == "1":
        return generator(g, ctx)
    i, j = _UIDX[g]
    out = AlgebraElement(AlgebraId.SUQ2, {}, ctx)
    for k in range(2):
        v = table.rho[h][i][k]
        if v != 0:
            out = out + generator(_UNAME[(k, j)], ctx) * v
    return out


@lru_cache(maxsize=None)
def _act_gen_mono(table: PairingTable, h, smono, side):
    """Action of one U_q generator on one SUQ2 monomial via the module-algebra rule."""
    ctx = table.ctx
    word = monomial_word(AlgebraId.SUQ2, smono)
    n = len(word)
    if n == 0:
        v = mpf(1) if h in ("K", "Ki") else mpf(0)
        return unit(AlgebraId.SUQ2, ctx) * v
    gen_act = _gen_left if side == "left" else _gen_right
    out = AlgebraElement(AlgebraId.SUQ2, {}, ctx)
    for term in _iterated_coproduct(h, n):
        prod = unit(AlgebraId.SUQ2, ctx)
        for hp, g in zip(term, word):
            prod = prod * gen_act(table, hp, g)
            if prod.is_zero():
                break
        out = out + prod
    return out


def _act_gen(table, h, x, side):
    out = AlgebraElement(AlgebraId.SUQ2, {}, x.ctx)
    for mono, c in x.terms.items():
        out = out + _act_gen_mono(table, h, mono, side) * c
    return out


def _check_act_args(f, x):
    if f.algebra is not AlgebraId.UQ:
        raise AlgebraMismatch("acting element must lie in U_q(su(2))")
    if x.algebra is not AlgebraId.SUQ2:
        raise AlgebraMismatch("acted-on element must lie in O(SU_q(2)); embed sphere elements first")


def left_act(f: AlgebraElement, x: AlgebraElement, table: PairingTable | None = None):
    """``f |> x``; a left module-algebra action, ``(gh) |> x = g |> (h |> x)``."""
    _check_act_args(f, x)
    table = _table_or_default(table, x.ctx)
    out = AlgebraElement(AlgebraId.SUQ2, {}, x.ctx)
    for umono, c in f.terms.items():
        y = x
        for h in reversed(_uq_word(umono)):
            y = _act_gen(table, h, y, "left")
        out = out + y * c
    return out


def right_act(x: AlgebraElement, f: AlgebraElement, table: PairingTable | None = None):
    """``x <| f = <f, x_(1)> x_(2)``; ``x <| (gh) = (x <| g) <| h``."""
    _check_act_args(f, x)
    table = _table_or_default(table, x.ctx)
    out = AlgebraElement(AlgebraId.SUQ2, {}, x.ctx)
    for umono, c in f.terms.items():
        y = x
        for h in _uq_word(umono):
            y = _act_gen(table, h, y, "right")
        out = out + y * c
    return out


def left_act_via_coproduct(f, x, table=None):
    """``x_(1) <f, x_(2)>`` computed literally from the SUQ2 coproduct (slow; a cross-check)."""
    _check_act_args(f, x)
    table = _table_or_default(table, x.ctx)
    delta = coproduct(x)
    return delta.leg(1, lambda m: pair(f, AlgebraElement(AlgebraId.SUQ2, {m: mpf(1)}, x.ctx), table))


def functional_value(f: AlgebraElement, x: AlgebraElement, table: PairingTable | None = None):
    """Evaluate a U_q element as a functional on the sphere: ``<f, embed(x)>``."""
    if x.algebra is not AlgebraId.SPHERE:
        raise AlgebraMismatch("functional_value expects a sphere element")
    return pair(f, embed_sphere(x), table)


# ---------------------------------------------------------------------------
# calibration


@lru_cache(maxsize=None)
def sphere_x(ctx: ScalarContext):
    """The spin-one generators ``x_-1, x_0, x_1`` of the sphere, as sphere elements."""
    q = ctx.q
    A, B, Bs = (generator(g, ctx) for g in ("A", "B", "Bs"))
    return {
        -1: B * mpmath.sqrt(1 + q**-2),
        0: unit(AlgebraId.SPHERE, ctx) - A * (1 + q**2),
        1: Bs * -mpmath.sqrt(1 + q**2),
    }


def default_action_constant(ctx):
    """``(q + q^-1)^(1/2)``: the unique ladder constant compatible with EF - FE and the *-structure."""
    return mpmath.sqrt(ctx.q + 1 / ctx.q)


def calibration_identities(table: PairingTable, action_constant=None):
    """Deviation of each of the nine identities ``f |> x_i = expected``.

    Returns ``{(f, i): deviation}`` for ``f`` in K, E, F and ``i`` in -1, 0, 1.
    """
    ctx = table.ctx
    c = default_action_constant(ctx) if action_constant is None else action_constant
    xs = {i: embed_sphere(v) for i, v in sphere_x(ctx).items()}
    zero = AlgebraElement(AlgebraId.SUQ2, {}, ctx)
    out = {}
    for h in ("K", "E", "F"):
        f = generator(h, ctx)
        for i in (-1, 0, 1):
            got = _act_gen(table, h, xs[i], "left")
            if h == "K":
                want = xs[i] * ctx.q**i
            else:
                t = i + 1 if h == "E" else i - 1
                want = xs[t] * c if t in xs else zero
            out[(h, i)] = got.max_deviation(want)
    return out


def _uq_relation_defects(rho, ctx):
    q = ctx.q
    M = lambda g: mpmath.matrix(rho[g])  # noqa: E731
    K, Ki, E, F = M("K"), M("Ki"), M("E"), M("F")
    eye = mpmath.eye(2)
    checks = [
        K * Ki - eye,
        K * E - E * K * q,
        K * F - F * K / q,
        E * F - F * E - (K * K - Ki * Ki) / (q - 1 / q),
    ]
    return max(mpmath.mnorm(m, 1) for m in checks)


@lru_cache(maxsize=None)
def calibrate_pairing(ctx: ScalarContext | None = None, action_constant=None) -> PairingTable:
    """Fix the generator pairings from the action on ``x_-1, x_0, x_1``.

    Candidates have diagonal ``rho(K)`` and a single nonzero entry for each of
    ``rho(E)``, ``rho(F)`` whose scale is solved for.  A candidate is accepted
    when all nine action identities hold and ``rho`` respects the defining
    relations of U_q(su(2)) (otherwise ``pair`` would not be well defined).
    """
    ctx = ctx or default_context()
    c = default_action_constant(ctx) if action_constant is None else mpmath.mpf(action_constant)
    q = ctx.q
    tol = ctx.tol
    zero2 = [[mpf(0), mpf(0)], [mpf(0), mpf(0)]]

    def single(pos, scale):
        m = [row[:] for row in zero2]
        i, j = _UIDX[pos]
        m[i][j] = scale
        return m

    xs = {i: embed_sphere(v) for i, v in sphere_x(ctx).items()}
    best_defect = None
    for s in (mpf(-1) / 2, mpf(1) / 2):
        kdiag = [[q**s, 0], [0, q**-s]]
        kinv = [[q**-s, 0], [0, q**s]]
        base = {"K": kdiag, "Ki": kinv}
        probe = PairingTable({**base, "E": zero2, "F": zero2}, ctx, True)
        if max(v for (h, _), v in calibration_identities(probe, c).items() if h == "K") > tol:
            continue
        chosen = {}
        for h, step in (("E", 1), ("F", -1)):
            for pos in _UIDX:
                trial = PairingTable({**base, "E": zero2, "F": zero2, h: single(pos, mpf(1))}, ctx, True)
                # least-squares scale from f |> x_i = c x_(i+step)
                num = den = mpf(0)
                for i in (-1, 0, 1):
                    got = _act_gen(trial, h, xs[i], "left")
                    t = i + step
                    want = xs[t] * c if t in xs else AlgebraElement(AlgebraId.SUQ2, {}, ctx)
                    for mono in set(got.terms) | set(want.terms):
                        g_, w_ = got.coefficient(mono), want.coefficient(mono)
                        num += g_ * w_
                        den += g_ * g_
                if den == 0:
                    continue
                scaled = single(pos, num / den)
                table = PairingTable({**base, "E": zero2, "F": zero2, h: scaled}, ctx, True)
                devs = calibration_identities(table, c)
                if max(v for (hh, _), v in devs.items() if hh == h) <= tol:
                    chosen[h] = scaled
                    break
        if len(chosen) != 2:
            continue
        rho = {**base, **chosen}
        defect = _uq_relation_defects(rho, ctx)
        best_defect = defect if best_defect is None else min(best_defect, defect)
        if defect <= tol:
            return PairingTable(rho, ctx, True)
    detail = "" if best_defect is None else f"; U_q relation defect {mpmath.nstr(best_defect, 6)}"
    raise CalibrationError("calibration infeasible" + detail)
