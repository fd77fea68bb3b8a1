"""Zeta functions ``ζ^±_T(z) = tr_{H_±}(T |D|^{-z})`` and their residues.

Three routes are provided:

* :func:`zeta_direct` sums shell traces of a truncated operator, valid to the
  right of the abscissa of convergence;
* :func:`zeta_LK` evaluates the meromorphic continuation for ``T = L^β K^δ``
  as a rapidly convergent series valid on the whole plane minus the poles;
* :func:`residue_aK` gives the residues of ``ζ_{a K^{2μ}}`` at ``z = 2|μ|``
  for sphere elements ``a`` from the table of closed forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mpf

from .errors import DivergentRegion, FitFailed, PoleProximityError, WindowExhausted
from .ncalg import AlgebraElement, AlgebraId
from .scalars import ScalarContext, default_context, real_power, to_mp
from .spectral import ShellOperator, TruncatedSpace, _qint2

__all__ = [
    "ZetaValue",
    "PoleData",
    "zeta_direct",
    "zeta_LK",
    "pole_lattice",
    "residue_LK",
    "residue_aK",
    "tau",
    "residue_numeric_probe",
    "contour_residue",
]


@dataclass(frozen=True)
class ZetaValue:
    value: object
    abs_error: mpf
    window: Fraction | int
    method: str

    def __post_init__(self):
        if self.abs_error < 0:
            raise ValueError("abs_error must be nonnegative")


@dataclass(frozen=True)
class PoleData:
    location: object
    order: int
    residue: object = None


def _ctx(ctx):
    return ctx or default_context()


# ---------------------------------------------------------------------------
# direct evaluation


def zeta_direct(
    T: ShellOperator, parity: int, z, space: TruncatedSpace | None = None, abscissa=0
) -> ZetaValue:
    """Truncated trace ``sum_l tr_l(T |D|^-z)`` over the shells of ``T``'s valid window.

    ``abscissa`` is the convergence abscissa implied by ``T`` (``2|μ|`` for a
    bounded operator times ``K^{2μ}``, ``-β + |δ|`` for ``L^β K^δ``).  The error
    estimate is a geometric tail bound fitted to the last three shells.
    """
    space = space or T.space
    ctx = space.ctx
    z = to_mp(z)
    abscissa = to_mp(abscissa)
    gap = mpmath.re(z) - abscissa
    if gap <= 0:
        raise DivergentRegion(f"divergent region: Re z = {mpmath.nstr(mpmath.re(z), 8)} <= abscissa {abscissa}")
    traces = T.shell_traces(parity)
    if not traces:
        raise WindowExhausted("empty window")
    q = ctx.q
    terms = {}
    for l2, c in traces.items():
        terms[l2] = c * real_power(_qint2(l2 + 1, ctx), -z) if c != 0 else mpf(0)
    value = mpmath.fsum(terms.values())
    tail_shells = sorted(terms)[-3:]
    rate = q**gap
    n_last = mpf(tail_shells[-1] + 1) / 2
    C = max(abs(terms[l2]) / rate ** (mpf(l2 + 1) / 2) for l2 in tail_shells)
    abs_error = C * rate ** (n_last + 1) / (1 - rate)
    return ZetaValue(value, abs_error, Fraction(max(terms), 2), "direct")


# ---------------------------------------------------------------------------
# closed form for L^β K^δ


def _pole_order_at(beta, delta, z, ctx, tol):
    """Order of the pole of the series at ``z`` (0 when ``z`` is regular).

    The ``j``-th summand has the factors ``1 - q^{β ∓ δ + 2j + z}`` in its
    denominator; a double pole needs both to vanish in the same summand.
    """
    L = mpmath.log(ctx.q)
    hits = set()
    for s in (-1, 1):
        w = beta + s * delta + z
        # 1 - q^w = 0  <=>  w = 2 pi i n / ln q; the real part must be -2j
        j = -mpmath.re(w) / 2
        if j < -tol or abs(j - mpmath.nint(j)) > tol:
            continue
        n = mpmath.im(w) * L / (2 * mpmath.pi)
        if abs(n - mpmath.nint(n)) * 2 * mpmath.pi / abs(L) > tol:
            continue
        hits.add((int(mpmath.nint(j)), int(mpmath.nint(n))))
    if not hits:
        return 0
    return 2 if len(hits) == 1 and abs(delta) <= tol else 1


def pole_lattice(beta, delta, j_count=5):
    """Real poles ``-β ± δ - 2j`` for ``j < j_count``, sorted downwards, with their orders."""
    beta, delta = to_mp(beta), to_mp(delta)
    locs = {}
    for j in range(j_count):
        for s in (-1, 1):
            p = -beta + s * delta - 2 * j
            locs.setdefault(mpmath.nstr(p, 20), p)
    order = 2 if delta == 0 else 1
    return sorted((PoleData(p, order) for p in locs.values()), key=lambda d: -d.location)


def zeta_LK(beta, delta, z, j_max: int = 200, ctx: ScalarContext | None = None, tol=None) -> ZetaValue:
    """Meromorphic continuation of ``ζ^±_{L^β K^δ}(z)`` (the same for both parities).

    ``q^{β/2}(q^{-δ/2} + q^{δ/2})(1-q^2)^z sum_j C(z+j-1, j) q^{2j} /
    ((1 - q^{β-δ+2j+z})(1 - q^{β+δ+2j+z}))``, truncated at ``j_max``.
    """
    ctx = _ctx(ctx)
    tol = ctx.tol if tol is None else tol
    beta, delta, z = to_mp(beta), to_mp(delta), to_mp(z)
    q = ctx.q
    order = _pole_order_at(beta, delta, z, ctx, tol)
    if order:
        raise PoleProximityError(
            f"pole proximity: z = {mpmath.nstr(z, 10)} is within {tol} of a pole",
            PoleData(z, order),
        )
    pref = real_power(q, beta / 2) * (real_power(q, -delta / 2) + real_power(q, delta / 2)) * real_power(1 - q**2, z)
    total = mpf(0)
    last = mpf(0)
    binom = mpf(1)
    q2 = q**2
    q2j = mpf(1)
    lo = real_power(q, beta - delta + z)
    hi = real_power(q, beta + delta + z)
    for j in range(j_max + 1):
        last = binom * q2j / ((1 - lo) * (1 - hi))
        total += last
        binom = binom * (z + j) / (j + 1)
        q2j *= q2
        lo *= q2
        hi *= q2
    abs_error = abs(pref * last) * 2 * q**2 / (1 - q**2)
    return ZetaValue(pref * total, abs_error, j_max, "closed_form")


def residue_LK(beta, delta, ctx: ScalarContext | None = None) -> PoleData:
    """``(z - z_0)^-1`` coefficient of ``ζ_{L^β K^δ}`` at ``z_0 = -β + |δ|``."""
    ctx = _ctx(ctx)
    beta, delta = to_mp(beta), abs(to_mp(delta))
    q = ctx.q
    L = mpmath.log(q)
    z0 = -beta + delta
    if delta != 0:
        res = real_power(q, (beta - delta) / 2) * real_power(1 - q**2, delta - beta) / ((q**delta - 1) * L)
        return PoleData(z0, 1, res)
    res = 2 * real_power(q, beta / 2) * mpmath.log(1 / q - q) / (real_power(1 - q**2, beta) * L**2)
    return PoleData(z0, 2, res)


def contour_residue(f, z0, radius=0.05, points=64):
    """``(1/2πi) ∮ f`` over a circle about ``z0`` by the trapezoid rule."""
    z0 = to_mp(z0)
    total = mpmath.mpc(0)
    for m in range(points):
        w = radius * mpmath.expjpi(mpf(2 * m) / points)
        total += f(z0 + w) * w
    return total / points


# ---------------------------------------------------------------------------
# residues of a K^{2μ}


def _unit_residue(mu, ctx):
    q = ctx.q
    L = mpmath.log(q)
    if mu == 0:
        return 2 * mpmath.log(1 / q - q) / L**2
    m = abs(mu)
    return -real_power(q, m) * real_power(1 / q - q, 2 * m) / ((1 - real_power(q, 2 * m)) * L)


def _power_residue(n, mu, ctx):
    if mu < 0:
        return mpf(0)
    q = ctx.q
    L = mpmath.log(q)
    return -real_power(q, mu) * real_power(1 / q - q, 2 * mu) / ((1 - real_power(q, 2 * (n + mu))) * L)


def residue_aK(a: AlgebraElement, mu) -> object:
    """Residue of ``ζ^±_{a K^{2μ}}`` at ``z = 2|μ|`` (the same for both parities)."""
    if a.algebra is not AlgebraId.SPHERE:
        raise ValueError("residue_aK expects a sphere element")
    ctx = a.ctx
    mu = to_mp(mu)
    total = mpf(0)
    for (n, m, ms), c in a.terms.items():
        if m or ms:
            continue
        total += c * (_unit_residue(mu, ctx) if n == 0 else _power_residue(n, mu, ctx))
    return total


def tau(mu, a: AlgebraElement):
    """Twisted trace ``τ_μ(a) = Res ζ_{a K^{2μ}} / Res ζ_{K^{2μ}}``."""
    mu = to_mp(mu)
    return residue_aK(a, mu) / _unit_residue(mu, a.ctx)


# ---------------------------------------------------------------------------
# numeric residue probe


def residue_numeric_probe(
    T: ShellOperator, z0, space: TruncatedSpace | None = None, parity=1, shells=None, fit_tol=1e-12
):
    """Heuristic residue of ``ζ_T`` at a simple-or-double pole ``z0`` from shell traces.

    With ``n = l + 1/2`` the shell traces are fitted as
    ``c_l q^{z0 n} = a n + b + (terms in q^n, q^{2n})``; the expansion
    ``[n]^-z = (q^-1 - q)^z q^{nz} (1 - q^{2n})^-z`` then gives the residue
    ``(q^-1 - q)^{z0} (a ln(q^-1 - q) / ln(q)^2 - b / ln q)``.  By default the
    fit uses the upper half of the valid window, where the neglected
    ``q^{3n}`` terms are small.
    """
    space = space or T.space
    ctx = space.ctx
    q = ctx.q
    z0 = to_mp(z0)
    traces = T.shell_traces(parity)
    if shells is None:
        shells = len(traces) // 2
    l2s = sorted(traces)[-shells:]
    if len(l2s) < 8:
        raise WindowExhausted("too few shells for the residue fit")
    ns = [mpf(l2 + 1) / 2 for l2 in l2s]
    ys = [traces[l2] * real_power(q, z0 * n) for l2, n in zip(l2s, ns)]
    scale = max(abs(y) for y in ys)
    if scale == 0:
        return mpf(0)
    basis = [
        lambda n: n,
        lambda n: mpf(1),
        lambda n: q**n,
        lambda n: n * q**n,
        lambda n: q ** (2 * n),
        lambda n: n * q ** (2 * n),
    ]
    mat = mpmath.matrix([[f(n) for f in basis] for n in ns])
    rhs_re = mpmath.matrix([mpmath.re(y) for y in ys])
    rhs_im = mpmath.matrix([mpmath.im(y) for y in ys])
    sol_re, res_re = mpmath.qr_solve(mat, rhs_re)
    sol_im, res_im = mpmath.qr_solve(mat, rhs_im)
    if max(res_re, res_im) > fit_tol * scale:
        raise FitFailed(f"fit failed: residual {mpmath.nstr(max(res_re, res_im), 5)}")
    a = sol_re[0] + 1j * sol_im[0] if sol_im[0] else sol_re[0]
    b = sol_re[1] + 1j * sol_im[1] if sol_im[1] else sol_re[1]
    L = mpmath.log(q)
    g = 1 / q - q
    return real_power(g, z0) * (a * mpmath.log(g) / L**2 - b / L)
