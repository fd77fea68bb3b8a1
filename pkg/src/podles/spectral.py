"""Truncated model of the U_q(su(2))-equivariant spectral triple over the Podleś sphere.

The Hilbert space has orthonormal basis ``v^l_{k,±}`` with ``l = 1/2, 3/2, ...``
and ``|k| <= l``; we keep ``l <= l_max``.  Half-integers are stored doubled
(``l2 = 2l``, ``k2 = 2k``).

Every operator that occurs here maps ``v^l_{k,p}`` into a combination of
``v^{l+dl}_{k+dk,p'}`` for a few fixed shifts, so a :class:`ShellOperator`
stores one coefficient vector per shift ("band"), indexed by the source basis
vector.  Products of truncated operators are only exact on low shells; each
operator records ``valid_l2``, the largest source shell whose column is
complete.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache

import mpmath
import numpy as np
from mpmath import mpf

from .errors import WindowExhausted
from .ncalg import AlgebraElement, AlgebraId, monomial_word
from .scalars import ScalarContext, default_context, to_mp

__all__ = [
    "PARITIES",
    "COEFFICIENT_FAMILY",
    "TruncatedSpace",
    "ShellOperator",
    "BoundProbe",
    "alpha0",
    "beta",
    "represent_x0",
    "represent_uq",
    "represent_x",
    "represent",
    "commutator_with_D",
    "diagonal_op",
    "bound_probe_A0",
]

PARITIES = (1, -1)

# The grading-even summand H_+ carries the coefficient family written with the
# lower sign in alpha0/beta (q^{k-1/2}, -q^{+1}), and H_- the upper one.  With
# the opposite assignment gamma a0 [D,a1][D,a2] acts on H_+ by the element that
# belongs on H_-.
COEFFICIENT_FAMILY = {1: -1, -1: 1}


@lru_cache(maxsize=None)
def _qint2(n2: int, ctx: ScalarContext):
    """[n2/2]_q."""
    q = ctx.q
    x = mpf(n2) / 2
    return (q**x - q ** (-x)) / (q - 1 / q)


def beta(l, family: int, ctx: ScalarContext):
    """``(±q^{∓1} + (q - q^-1)([1/2][3/2] - [l][l+1])) / (q [2l+2])`` for ``family = ±1``."""
    q = ctx.q
    l2 = int(2 * Fraction(l))
    sign = 1 if family > 0 else -1
    num = sign * q ** (-sign) + (q - 1 / q) * (_qint2(1, ctx) * _qint2(3, ctx) - _qint2(l2, ctx) * _qint2(l2 + 2, ctx))
    return num / (q * _qint2(2 * l2 + 4, ctx))


def _alpha_minus(l2, k2, family, ctx):
    q = ctx.q
    if l2 < 3:
        return mpf(0)
    num = (
        q ** (mpf(k2) / 2 + mpf(family) / 2)
        * _qint2(4, ctx)
        * mpmath.sqrt(_qint2(l2 - k2, ctx) * _qint2(l2 + k2, ctx) * _qint2(l2 - 1, ctx) * _qint2(l2 + 1, ctx))
    )
    den = mpmath.sqrt(_qint2(2 * l2 - 2, ctx) * _qint2(2 * l2 + 2, ctx)) * _qint2(2 * l2, ctx)
    return num / den


def _alpha_zero(l2, k2, family, ctx):
    q = ctx.q
    diff = (
        _qint2(l2 - k2 + 2, ctx) * _qint2(l2 + k2, ctx)
        - q**2 * _qint2(l2 - k2, ctx) * _qint2(l2 + k2 + 2, ctx)
    )
    return diff / _qint2(2 * l2, ctx) * beta(Fraction(l2, 2), family, ctx)


def _check_index(l, k):
    l, k = Fraction(l), Fraction(k)
    if l <= 0 or (2 * l) % 2 != 1 or abs(k) > l or (l - k).denominator != 1:
        raise ValueError(f"index out of range: l={l}, k={k}")
    return int(2 * l), int(2 * k)


def alpha0(nu, l, k, parity, ctx: ScalarContext | None = None):
    """Matrix coefficients of ``x_0``: ``nu`` in {-1, 0, +1} picks the shell shift.

    ``parity`` selects the coefficient family written ``±`` in the formulas
    (``q^{k±1/2}`` and ``±q^{∓1}``).
    """
    ctx = ctx or default_context()
    nu = {"-": -1, "0": 0, "+": 1}.get(nu, nu)
    l2, k2 = _check_index(l, k)
    fam = 1 if parity in (1, "+") else -1
    if nu == -1:
        if l2 < 3:
            raise ValueError("index out of range: alpha^-_0 needs l >= 3/2")
        return _alpha_minus(l2, k2, fam, ctx)
    if nu == 0:
        return _alpha_zero(l2, k2, fam, ctx)
    if nu == 1:
        return _alpha_minus(l2 + 2, k2, fam, ctx)
    raise ValueError(f"nu must be -1, 0 or 1, got {nu}")


# ---------------------------------------------------------------------------


class TruncatedSpace:
    """Basis ``v^l_{k,±}`` for ``l <= l_max``; both parities share one index set."""

    def __init__(self, l_max=Fraction(81, 2), ctx: ScalarContext | None = None):
        self.ctx = ctx or default_context()
        l2 = Fraction(l_max) * 2
        if l2.denominator != 1 or l2 % 2 != 1:
            raise ValueError("l_max must be a half-odd-integer")
        if l2 < 5:
            raise ValueError("l_max must be at least 5/2")
        self.L2 = int(l2)
        self.basis = [(a, b) for a in range(1, self.L2 + 1, 2) for b in range(-a, a + 1, 2)]
        self.index = {bk: i for i, bk in enumerate(self.basis)}
        self.N = len(self.basis)
        self.l2 = np.array([b[0] for b in self.basis])
        self.k2 = np.array([b[1] for b in self.basis])
        self._shift = {}
        self._cache = {}

    @property
    def l_max(self):
        return Fraction(self.L2, 2)

    def dimension(self):
        """Dimension of one parity summand."""
        return self.N

    def shift_index(self, dl2, dk2):
        key = (dl2, dk2)
        hit = self._shift.get(key)
        if hit is None:
            hit = np.array(
                [self.index.get((a + dl2, b + dk2), -1) for a, b in self.basis], dtype=np.int64
            )
            self._shift[key] = hit
            self._shift[key + ("mask",)] = hit >= 0
        return hit

    def shift_mask(self, dl2, dk2):
        self.shift_index(dl2, dk2)
        return self._shift[(dl2, dk2, "mask")]

    def shell_slice(self, l2):
        start = sum(a + 1 for a in range(1, l2, 2))
        return slice(start, start + l2 + 1)

    def zeros(self):
        return np.full(self.N, mpf(0), dtype=object)

    def cached(self, key, build):
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    def __repr__(self):
        return f"TruncatedSpace(l_max={self.l_max}, dim per parity={self.N})"


class ShellOperator:
    """Banded operator on a :class:`TruncatedSpace`.

    ``bands[(p_to, p_from, dl2, dk2)][i]`` is the coefficient of
    ``v^{l+dl}_{k+dk, p_to}`` in the image of basis vector ``i`` (with parity
    ``p_from``).  Entries whose target falls outside the space are zero.
    """

    __slots__ = ("space", "bands", "valid_l2")

    def __init__(self, space: TruncatedSpace, bands, valid_l2=None):
        self.space = space
        self.bands = {}
        for key, arr in bands.items():
            mask = space.shift_mask(key[2], key[3])
            if not mask.all():
                arr = arr.copy()
                arr[~mask] = mpf(0)
            self.bands[key] = arr
        self.valid_l2 = space.L2 if valid_l2 is None else valid_l2

    # construction helpers ---------------------------------------------------
    @classmethod
    def zero(cls, space):
        return cls(space, {})

    @classmethod
    def identity(cls, space):
        ones = np.full(space.N, mpf(1), dtype=object)
        return cls(space, {(p, p, 0, 0): ones.copy() for p in PARITIES})

    @property
    def bandwidth2(self):
        return max((abs(k[2]) for k in self.bands), default=0)

    @property
    def valid_l_max(self):
        return Fraction(self.valid_l2, 2)

    def _require_window(self):
        if self.valid_l2 < 1:
            raise WindowExhausted("valid window exhausted; increase l_max")

    # algebra ----------------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, ShellOperator):
            other = ShellOperator.identity(self.space) * to_mp(other)
        bands = dict(self.bands)
        for k, v in other.bands.items():
            bands[k] = bands[k] + v if k in bands else v
        return ShellOperator(self.space, bands, min(self.valid_l2, other.valid_l2))

    __radd__ = __add__

    def __neg__(self):
        return ShellOperator(self.space, {k: -v for k, v in self.bands.items()}, self.valid_l2)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, ShellOperator):
            return self.compose(other)
        s = to_mp(other)
        return ShellOperator(self.space, {k: v * s for k, v in self.bands.items()}, self.valid_l2)

    def __rmul__(self, other):
        s = to_mp(other)
        return ShellOperator(self.space, {k: v * s for k, v in self.bands.items()}, self.valid_l2)

    __matmul__ = __mul__

    def compose(self, other: "ShellOperator") -> "ShellOperator":
        """``self ∘ other``."""
        sp = self.space
        out = {}
        for (pm, pf, dl2b, dk2b), vb in other.bands.items():
            idx = sp.shift_index(dl2b, dk2b)
            mask = sp.shift_mask(dl2b, dk2b)
            safe = np.where(mask, idx, 0)
            for (pt, pm2, dl2a, dk2a), va in self.bands.items():
                if pm2 != pm:
                    continue
                prod = va[safe] * vb
                if not mask.all():
                    prod[~mask] = mpf(0)
                key = (pt, pf, dl2a + dl2b, dk2a + dk2b)
                out[key] = out[key] + prod if key in out else prod
        valid = min(other.valid_l2, self.valid_l2 - other.bandwidth2)
        return ShellOperator(sp, out, valid)

    def adjoint(self):
        sp = self.space
        out = {}
        for (pt, pf, dl2, dk2), v in self.bands.items():
            idx = sp.shift_index(dl2, dk2)
            mask = sp.shift_mask(dl2, dk2)
            arr = sp.zeros()
            arr[idx[mask]] = np.array([mpmath.conj(x) for x in v[mask]], dtype=object)
            key = (pf, pt, -dl2, -dk2)
            out[key] = out[key] + arr if key in out else arr
        valid = self.valid_l2 - self.bandwidth2
        return ShellOperator(sp, out, valid)

    def restrict(self, p_to, p_from):
        return ShellOperator(
            self.space,
            {k: v for k, v in self.bands.items() if k[0] == p_to and k[1] == p_from},
            self.valid_l2,
        )

    # inspection -------------------------------------------------------------
    def entry(self, target, source):
        """Matrix element ``<v_target, T v_source>``; indices are ``(l, k, parity)``."""
        (lt, kt, pt), (ls, ks, ps) = target, source
        lt2, kt2 = int(2 * Fraction(lt)), int(2 * Fraction(kt))
        ls2, ks2 = int(2 * Fraction(ls)), int(2 * Fraction(ks))
        band = self.bands.get((pt, ps, lt2 - ls2, kt2 - ks2))
        if band is None:
            return mpf(0)
        return band[self.space.index[(ls2, ks2)]]

    def column_mask(self, window_l2=None):
        w = self.valid_l2 if window_l2 is None else window_l2
        return self.space.l2 <= w

    def max_deviation(self, other, window_l2=None, parities=None):
        """Largest entry difference over columns inside the common valid window."""
        w = min(self.valid_l2, other.valid_l2) if window_l2 is None else window_l2
        if w < 1:
            raise WindowExhausted("no shell inside the common valid window")
        cols = self.space.l2 <= w
        worst = mpf(0)
        for key in set(self.bands) | set(other.bands):
            if parities is not None and (key[0], key[1]) not in parities:
                continue
            a = self.bands.get(key)
            b = other.bands.get(key)
            if a is None:
                diff = b[cols]
            elif b is None:
                diff = a[cols]
            else:
                diff = (a - b)[cols]
            if len(diff):
                worst = max(worst, max(abs(x) for x in diff))
        return worst

    def shell_traces(self, parity):
        """``{l2: sum_k <v^l_{k,p}, T v^l_{k,p}>}`` for shells in the valid window."""
        self._require_window()
        diag = self.bands.get((parity, parity, 0, 0))
        out = {}
        for l2 in range(1, self.valid_l2 + 1, 2):
            if diag is None:
                out[l2] = mpf(0)
            else:
                s = self.space.shell_slice(l2)
                out[l2] = mpmath.fsum(diag[s])
        return out

    def column_suprema(self):
        """``{l2: max |entry|}`` over all columns of shell ``l`` (both parities)."""
        self._require_window()
        out = {}
        for l2 in range(1, self.valid_l2 + 1, 2):
            s = self.space.shell_slice(l2)
            vals = [abs(x) for v in self.bands.values() for x in v[s]]
            out[l2] = max(vals, default=mpf(0))
        return out

    def parity_blocks(self):
        return sorted({(k[0], k[1]) for k in self.bands})

    def to_dense(self, parity_to=1, parity_from=1):
        """Dense ``mpmath.matrix`` of one parity block (for small spaces only)."""
        sp = self.space
        mat = mpmath.matrix(sp.N, sp.N)
        for (pt, pf, dl2, dk2), v in self.bands.items():
            if (pt, pf) != (parity_to, parity_from):
                continue
            idx = sp.shift_index(dl2, dk2)
            for i in range(sp.N):
                if idx[i] >= 0:
                    mat[int(idx[i]), i] += v[i]
        return mat

    def __repr__(self):
        return (
            f"ShellOperator({len(self.bands)} bands, valid l <= {self.valid_l_max}, "
            f"space l_max={self.space.l_max})"
        )


# ---------------------------------------------------------------------------
# operators


def diagonal_op(space: TruncatedSpace, fn, parities=PARITIES):
    """Diagonal operator with eigenvalue ``fn(l2, k2, parity)`` on ``v^l_{k,p}``."""
    bands = {}
    for p in parities:
        bands[(p, p, 0, 0)] = np.array(
            [fn(l2, k2, p) for l2, k2 in space.basis], dtype=object
        )
    return ShellOperator(space, bands)


def represent_x0(space: TruncatedSpace) -> ShellOperator:
    """``x_0`` on both parities; tridiagonal in ``l``, no ``k`` shift."""

    def build():
        ctx = space.ctx
        bands = {}
        for p in PARITIES:
            fam = COEFFICIENT_FAMILY[p]
            lo, mid, hi = space.zeros(), space.zeros(), space.zeros()
            for i, (l2, k2) in enumerate(space.basis):
                lo[i] = _alpha_minus(l2, k2, fam, ctx)
                mid[i] = _alpha_zero(l2, k2, fam, ctx)
                hi[i] = _alpha_minus(l2 + 2, k2, fam, ctx)
            bands[(p, p, -2, 0)] = lo
            bands[(p, p, 0, 0)] = mid
            bands[(p, p, 2, 0)] = hi
        return ShellOperator(space, bands, space.L2 - 2)

    return space.cached("x0", build)


@dataclass
class UqOperators:
    K: ShellOperator
    Kinv: ShellOperator
    E: ShellOperator
    F: ShellOperator
    L: ShellOperator
    D: ShellOperator
    absD: ShellOperator
    gamma: ShellOperator
    Linv: ShellOperator = field(repr=False, default=None)

    def __getitem__(self, name):
        return getattr(self, name)


def represent_uq(space: TruncatedSpace) -> UqOperators:
    """K, K^-1, E, F, L, D, |D| and the grading on the truncated space."""

    def build():
        ctx = space.ctx
        q = ctx.q
        qk = lambda l2, k2, p: q ** (mpf(k2) / 2)  # noqa: E731
        sp = space
        K = diagonal_op(sp, qk)
        Kinv = diagonal_op(sp, lambda l2, k2, p: q ** (-mpf(k2) / 2))
        L = diagonal_op(sp, lambda l2, k2, p: q ** (mpf(l2) / 2))
        Linv = diagonal_op(sp, lambda l2, k2, p: q ** (-mpf(l2) / 2))
        absD = diagonal_op(sp, lambda l2, k2, p: _qint2(l2 + 1, ctx))
        gamma = diagonal_op(sp, lambda l2, k2, p: mpf(p))
        eig = np.array([_qint2(l2 + 1, ctx) for l2, _ in sp.basis], dtype=object)
        D = ShellOperator(sp, {(-p, p, 0, 0): eig.copy() for p in PARITIES})
        # E v^l_k = ([l-k][l+k+1])^(1/2) v^l_{k+1};  F v^l_k = ([l-k+1][l+k])^(1/2) v^l_{k-1}
        e = np.array([mpmath.sqrt(_qint2(l2 - k2, ctx) * _qint2(l2 + k2 + 2, ctx)) for l2, k2 in sp.basis], dtype=object)
        f = np.array([mpmath.sqrt(_qint2(l2 - k2 + 2, ctx) * _qint2(l2 + k2, ctx)) for l2, k2 in sp.basis], dtype=object)
        E = ShellOperator(sp, {(p, p, 0, 2): e.copy() for p in PARITIES})
        F = ShellOperator(sp, {(p, p, 0, -2): f.copy() for p in PARITIES})
        return UqOperators(K=K, Kinv=Kinv, E=E, F=F, L=L, D=D, absD=absD, gamma=gamma, Linv=Linv)

    return space.cached("uq", build)


def ladder_constant(ctx):
    """``E |> x_i = c x_(i+1)`` and ``F |> x_i = c x_(i-1)`` with ``c = (q + q^-1)^(1/2)``."""
    return mpmath.sqrt(ctx.q + 1 / ctx.q)


def raise_x(x_i: ShellOperator, i: int, space: TruncatedSpace) -> ShellOperator:
    """``x_(i+1) = c^-1 (E x_i - (K^-1 |> x_i) E) K^-1`` from ``fa = (f_(1) |> a) f_(2)``."""
    ops = represent_uq(space)
    q = space.ctx.q
    c = ladder_constant(space.ctx)
    return (ops.E * x_i - x_i * ops.E * q ** (-i)) * ops.Kinv * (1 / c)


def lower_x(x_i: ShellOperator, i: int, space: TruncatedSpace) -> ShellOperator:
    """``x_(i-1) = c^-1 (F x_i - (K^-1 |> x_i) F) K^-1``."""
    ops = represent_uq(space)
    q = space.ctx.q
    c = ladder_constant(space.ctx)
    return (ops.F * x_i - x_i * ops.F * q ** (-i)) * ops.Kinv * (1 / c)


def represent_x(i: int, space: TruncatedSpace) -> ShellOperator:
    """``x_i`` for ``i`` in {-1, 0, 1}; ``x_±1`` are built from ``x_0`` by equivariance."""
    if i == 0:
        return represent_x0(space)
    if i not in (-1, 1):
        raise ValueError("i must be -1, 0 or 1")

    def build():
        x0 = represent_x0(space)
        out = raise_x(x0, 0, space) if i == 1 else lower_x(x0, 0, space)
        if out.valid_l2 < 1:
            raise WindowExhausted("valid window exhausted building x_±1")
        return out

    return space.cached(("x", i), build)


def sphere_generator_ops(space: TruncatedSpace):
    """Operators for A, B, B* recovered from the ``x_i``."""

    def build():
        q = space.ctx.q
        x0 = represent_x0(space)
        A = (ShellOperator.identity(space) - x0) * (1 / (1 + q**2))
        A.valid_l2 = x0.valid_l2
        B = represent_x(-1, space) * (1 / mpmath.sqrt(1 + q**-2))
        Bs = represent_x(1, space) * (-1 / mpmath.sqrt(1 + q**2))
        return {"A": A, "B": B, "Bs": Bs}

    return space.cached("sphere", build)


def _power(space, name, n):
    def build():
        gens = sphere_generator_ops(space)
        if n == 0:
            return ShellOperator.identity(space)
        return _power(space, name, n - 1) * gens[name]

    return space.cached(("pow", name, n), build)


def represent(a: AlgebraElement, space: TruncatedSpace) -> ShellOperator:
    """The bounded operator of a sphere element (multiplicative extension)."""
    if a.algebra is not AlgebraId.SPHERE:
        raise ValueError("represent expects a sphere element")
    return space.cached(("rep", str(a)), lambda: _represent(a, space))


def _represent(a, space):
    out = ShellOperator.zero(space)
    for (n, m, ms), c in sorted(a.terms.items()):
        op = _power(space, "A", n)
        if m:
            op = op * _power(space, "B", m)
        if ms:
            op = op * _power(space, "Bs", ms)
        out = out + op * c
    if out.valid_l2 < 1:
        raise WindowExhausted(f"degree {a.degree()} needs a larger l_max")
    return out


def commutator_with_D(a, space: TruncatedSpace) -> ShellOperator:
    """``[D, a]``; accepts a sphere element or an already represented operator."""
    if isinstance(a, ShellOperator):
        D = represent_uq(space).D
        out = D * a - a * D
    else:
        out = space.cached(("comm", str(a)), lambda: commutator_with_D(represent(a, space), space))
    if out.valid_l2 < 1:
        raise WindowExhausted("valid window exhausted")
    return out


# ---------------------------------------------------------------------------
# boundedness probe


@dataclass
class BoundProbe:
    """Per-shell suprema ``s_l`` of an operator's matrix entries and a bounded/unbounded verdict."""

    suprema: dict
    verdict: str
    plateau_from: Fraction
    plateau_to: Fraction
    reference: mpf
    window_max: mpf
    relative_spread: mpf

    @property
    def bounded(self):
        return self.verdict == "bounded"


def bound_probe(op: ShellOperator, l_from=20, l_to=40, rel_tol=0.01) -> BoundProbe:
    """Plateau test: ``max_{l in [l_from, l_to]} s_l`` within ``rel_tol`` of ``s_{l_from}``."""
    sup = op.column_suprema()
    shells = [l2 for l2 in sup if 2 * l_from <= l2 <= 2 * l_to]
    if not shells:
        raise WindowExhausted("plateau window lies outside the valid window")
    ref = sup[shells[0]]
    top = max(sup[l2] for l2 in shells)
    spread = (top - ref) / ref if ref else mpf("inf")
    verdict = "bounded" if spread <= rel_tol else "unbounded"
    return BoundProbe(
        suprema={Fraction(l2, 2): v for l2, v in sup.items()},
        verdict=verdict,
        plateau_from=Fraction(shells[0], 2),
        plateau_to=Fraction(shells[-1], 2),
        reference=ref,
        window_max=top,
        relative_spread=spread,
    )


def bound_probe_A0(space: TruncatedSpace, l_power=1, l_from=20, l_to=40, rel_tol=0.01) -> BoundProbe:
    """Probe ``A_0 = (A - L^2 K^2) L^-l_power``; bounded for ``l_power = 1``."""
    ops = represent_uq(space)
    A = sphere_generator_ops(space)["A"]
    M = ops.L * ops.L * ops.K * ops.K
    op = A - M
    for _ in range(l_power):
        op = op * ops.Linv
    return bound_probe(op, l_from, l_to, rel_tol)
