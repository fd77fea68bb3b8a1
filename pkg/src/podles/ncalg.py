"""PBW normal forms for the Podleś sphere, quantum SU(2) and U_q(su(2)).

Elements are finite linear combinations of normal-ordered monomials.  A
monomial is stored as its exponent vector:

=========  ==================  ============================================
algebra    exponents           word
=========  ==================  ============================================
SPHERE     ``(n, m, m')``      ``A^n B^m Bs^m'``, with ``m * m' == 0``
SUQ2       ``(i, j, k, i')``   ``a^i b^j c^k d^i'``, with ``i * i' == 0``
UQ         ``(f, kappa, e)``   ``F^f K^kappa E^e`` (``Ki`` for kappa < 0)
=========  ==================  ============================================

``Bs`` is ``B*`` and ``Ki`` is ``K^-1``.  Reduction is done by a small
rewriting system, one per algebra and scalar context.
"""

from __future__ import annotations

import enum
import random
from collections import defaultdict
from functools import lru_cache

import mpmath
from mpmath import mpf

from .errors import AlgebraMismatch, DegreeBoundTooSmall, NotInSubalgebra
from .scalars import ScalarContext, default_context, to_mp

__all__ = [
    "AlgebraId",
    "AlgebraElement",
    "GENERATORS",
    "generator",
    "unit",
    "normal_form",
    "normal_form_random",
    "multiply",
    "star",
    "counit",
    "sigma_twist",
    "embed_sphere",
    "recognize_in_sphere",
    "monomial_word",
    "sphere_basis",
    "degree",
]


class AlgebraId(enum.Enum):
    SPHERE = "sphere"
    SUQ2 = "suq2"
    UQ = "uq"


GENERATORS = {
    AlgebraId.SPHERE: ("A", "B", "Bs"),
    AlgebraId.SUQ2: ("a", "b", "c", "d"),
    AlgebraId.UQ: ("F", "K", "Ki", "E"),
}
_OWNER = {g: alg for alg, gens in GENERATORS.items() for g in gens}
_UNIT_MONO = {AlgebraId.SPHERE: (0, 0, 0), AlgebraId.SUQ2: (0, 0, 0, 0), AlgebraId.UQ: (0, 0, 0)}


def algebra_of(word):
    """The algebra a generator word lives in; raises on mixed words."""
    algs = {_OWNER.get(g) for g in word}
    if None in algs:
        bad = [g for g in word if g not in _OWNER]
        raise ValueError(f"unknown generator {bad[0]!r}")
    if len(algs) > 1:
        raise AlgebraMismatch("algebra mismatch: " + " ".join(sorted(a.value for a in algs)))
    return algs.pop() if algs else None


def monomial_word(alg: AlgebraId, mono):
    if alg is AlgebraId.SPHERE:
        n, m, ms = mono
        return ("A",) * n + ("B",) * m + ("Bs",) * ms
    if alg is AlgebraId.SUQ2:
        i, j, k, i2 = mono
        return ("a",) * i + ("b",) * j + ("c",) * k + ("d",) * i2
    f, kappa, e = mono
    kword = ("K",) * kappa if kappa >= 0 else ("Ki",) * (-kappa)
    return ("F",) * f + kword + ("E",) * e


def degree(alg: AlgebraId, mono):
    if alg is AlgebraId.UQ:
        return mono[0] + abs(mono[1]) + mono[2]
    return sum(mono)


# ---------------------------------------------------------------------------
# rewriting systems


class _Rewriter:
    """Rewrite rules for one algebra at one value of q."""

    def __init__(self, alg: AlgebraId, ctx: ScalarContext):
        self.alg = alg
        self.ctx = ctx
        q = ctx.q
        qi = 1 / q
        one = mpf(1)
        if alg is AlgebraId.SPHERE:
            self.rules = {
                ("B", "A"): [(q**2, ("A", "B"))],
                ("Bs", "A"): [(qi**2, ("A", "Bs"))],
                ("Bs", "B"): [(one, ("A",)), (-one, ("A", "A"))],
                ("B", "Bs"): [(q**2, ("A",)), (-(q**4), ("A", "A"))],
            }
        elif alg is AlgebraId.SUQ2:
            self.rules = {
                ("b", "a"): [(qi, ("a", "b"))],
                ("c", "a"): [(qi, ("a", "c"))],
                ("c", "b"): [(one, ("b", "c"))],
                ("d", "a"): [(one, ()), (qi, ("b", "c"))],
                ("d", "b"): [(qi, ("b", "d"))],
                ("d", "c"): [(qi, ("c", "d"))],
            }
        else:
            w = 1 / (q - qi)
            self.rules = {
                ("K", "F"): [(qi, ("F", "K"))],
                ("Ki", "F"): [(q, ("F", "Ki"))],
                ("E", "F"): [(one, ("F", "E")), (w, ("K", "K")), (-w, ("Ki", "Ki"))],
                ("E", "K"): [(qi, ("K", "E"))],
                ("E", "Ki"): [(q, ("Ki", "E"))],
                ("K", "Ki"): [(one, ())],
                ("Ki", "K"): [(one, ())],
            }
        self._word_cache = {}
        self._mono_cache = {}

    def redexes(self, word):
        """All reducible positions as ``(start, stop, replacement)``, leftmost first."""
        out = []
        n = len(word)
        for p in range(n - 1):
            rep = self.rules.get((word[p], word[p + 1]))
            if rep is not None:
                out.append((p, p + 2, rep))
        if self.alg is AlgebraId.SUQ2:
            # a (b|c)* d  ->  q^len (run + q b c run), from run d = q^len d run, ad = 1 + q bc
            q = self.ctx.q
            for p in range(n):
                if word[p] != "a":
                    continue
                r = p + 1
                while r < n and word[r] in ("b", "c"):
                    r += 1
                if r < n and word[r] == "d":
                    run = word[p + 1 : r]
                    f = q ** len(run)
                    out.append((p, r + 1, [(f, run), (f * q, ("b", "c") + run)]))
            out.sort(key=lambda t: t[0])
        return out

    def to_monomial(self, word):
        alg = self.alg
        if alg is AlgebraId.SPHERE:
            n = m = ms = 0
            for g in word:
                if g == "A":
                    n += 1
                elif g == "B":
                    m += 1
                else:
                    ms += 1
            return (n, m, ms)
        if alg is AlgebraId.SUQ2:
            cnt = {"a": 0, "b": 0, "c": 0, "d": 0}
            for g in word:
                cnt[g] += 1
            return (cnt["a"], cnt["b"], cnt["c"], cnt["d"])
        f = e = kappa = 0
        for g in word:
            if g == "F":
                f += 1
            elif g == "E":
                e += 1
            elif g == "K":
                kappa += 1
            else:
                kappa -= 1
        return (f, kappa, e)

    def reduce_word(self, word):
        """Normal form of a word (leftmost-redex strategy, memoised)."""
        word = tuple(word)
        hit = self._word_cache.get(word)
        if hit is not None:
            return hit
        reds = self.redexes(word)
        if not reds:
            result = {self.to_monomial(word): mpf(1)}
        else:
            start, stop, rep = reds[0]
            acc = defaultdict(mpf)
            for coef, sub in rep:
                for mono, c in self.reduce_word(word[:start] + sub + word[stop:]).items():
                    acc[mono] += coef * c
            result = dict(acc)
        self._word_cache[word] = result
        return result

    def reduce_random(self, word, rng):
        """Normal form with a randomly chosen redex at every step (no caching)."""
        acc = defaultdict(mpf)
        stack = [(tuple(word), mpf(1))]
        while stack:
            w, c = stack.pop()
            reds = self.redexes(w)
            if not reds:
                acc[self.to_monomial(w)] += c
                continue
            start, stop, rep = rng.choice(reds)
            for coef, sub in rep:
                stack.append((w[:start] + sub + w[stop:], c * coef))
        return dict(acc)

    def mono_product(self, m1, m2):
        key = (m1, m2)
        hit = self._mono_cache.get(key)
        if hit is None:
            hit = self.reduce_word(monomial_word(self.alg, m1) + monomial_word(self.alg, m2))
            self._mono_cache[key] = hit
        return hit


@lru_cache(maxsize=None)
def _rewriter(alg: AlgebraId, ctx: ScalarContext) -> _Rewriter:
    return _Rewriter(alg, ctx)


# ---------------------------------------------------------------------------
# elements


def _fmt_coef(c):
    c = to_mp(c)
    if isinstance(c, mpmath.mpc):
        if c.imag == 0:
            c = c.real
        else:
            sign = "-" if c.imag < 0 else "+"
            return f"({mpmath.nstr(c.real, 40)} {sign} {mpmath.nstr(abs(c.imag), 40)}*i)"
    s = mpmath.nstr(c, 40)
    return f"({s})" if s.startswith("-") else s


class AlgebraElement:
    """An immutable linear combination of normal-ordered monomials."""

    __slots__ = ("algebra", "terms", "ctx")

    def __init__(self, algebra: AlgebraId, terms, ctx: ScalarContext | None = None):
        ctx = ctx or default_context()
        cut = ctx.prune
        clean = {}
        for mono, c in terms.items():
            if abs(c) >= cut:
                clean[tuple(mono)] = c
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "ctx", ctx)

    def __setattr__(self, name, value):
        raise AttributeError("AlgebraElement is immutable")

    # arithmetic -----------------------------------------------------------
    def _check(self, other):
        if other.algebra is not self.algebra:
            raise AlgebraMismatch(
                f"algebra mismatch: {self.algebra.value} vs {other.algebra.value}"
            )

    def _coerce(self, other):
        if isinstance(other, AlgebraElement):
            self._check(other)
            return other
        return unit(self.algebra, self.ctx) * other

    def __add__(self, other):
        other = self._coerce(other)
        acc = dict(self.terms)
        for m, c in other.terms.items():
            acc[m] = acc.get(m, 0) + c
        return AlgebraElement(self.algebra, acc, self.ctx)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement(self.algebra, {m: -c for m, c in self.terms.items()}, self.ctx)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        s = to_mp(other)
        return AlgebraElement(self.algebra, {m: c * s for m, c in self.terms.items()}, self.ctx)

    def __rmul__(self, other):
        s = to_mp(other)
        return AlgebraElement(self.algebra, {m: s * c for m, c in self.terms.items()}, self.ctx)

    def __truediv__(self, other):
        return self * (1 / to_mp(other))

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined")
        out = unit(self.algebra, self.ctx)
        for _ in range(n):
            out = out * self
        return out

    # comparison -----------------------------------------------------------
    def max_deviation(self, other):
        other = self._coerce(other)
        keys = set(self.terms) | set(other.terms)
        if not keys:
            return mpf(0)
        return max(abs(self.terms.get(k, 0) - other.terms.get(k, 0)) for k in keys)

    def isclose(self, other, tol=None):
        tol = self.ctx.tol if tol is None else tol
        return self.max_deviation(other) < tol

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            try:
                other = self._coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        if other.algebra is not self.algebra:
            return False
        return self.max_deviation(other) < mpf(10) ** (-(self.ctx.precision - 10))

    __hash__ = None

    def is_zero(self):
        return not self.terms

    def coefficient(self, mono):
        return self.terms.get(tuple(mono), mpf(0))

    def degree(self):
        return max((degree(self.algebra, m) for m in self.terms), default=0)

    def norm(self):
        return max((abs(c) for c in self.terms.values()), default=mpf(0))

    def __iter__(self):
        return iter(sorted(self.terms.items()))

    def __len__(self):
        return len(self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, c in sorted(self.terms.items()):
            word = monomial_word(self.algebra, mono)
            if not word:
                parts.append(_fmt_coef(c))
                continue
            factors = []
            prev, run = None, 0
            for g in word + (None,):
                if g == prev:
                    run += 1
                    continue
                if prev is not None:
                    name = "Kinv" if prev == "Ki" else prev
                    factors.append(name if run == 1 else f"{name}^{run}")
                prev, run = g, 1
            parts.append(_fmt_coef(c) + "*" + "*".join(factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"AlgebraElement({self.algebra.value}: {self})"


def unit(alg: AlgebraId, ctx: ScalarContext | None = None):
    return AlgebraElement(alg, {_UNIT_MONO[alg]: mpf(1)}, ctx)


def generator(name: str, ctx: ScalarContext | None = None):
    """The element for a single generator name, e.g. ``generator("Bs")``."""
    alg = algebra_of((name,))
    return normal_form((name,), ctx, algebra=alg)


def normal_form(word, ctx: ScalarContext | None = None, coeff=1, algebra=None):
    """Reduce a word of generator names (times ``coeff``) to PBW normal form.

    An empty word gives the unit of ``algebra`` (the sphere by default).
    """
    ctx = ctx or default_context()
    word = tuple(word)
    alg = algebra_of(word)
    if alg is None:
        alg = algebra or AlgebraId.SPHERE
    elif algebra is not None and algebra is not alg:
        raise AlgebraMismatch(f"algebra mismatch: word is in {alg.value}")
    c = to_mp(coeff)
    red = _rewriter(alg, ctx).reduce_word(word)
    return AlgebraElement(alg, {m: c * v for m, v in red.items()}, ctx)


def normal_form_random(word, ctx: ScalarContext | None = None, rng=None, algebra=None):
    """Like :func:`normal_form` but applies rewrite rules in random order."""
    ctx = ctx or default_context()
    rng = rng or random.Random()
    word = tuple(word)
    alg = algebra_of(word) or algebra or AlgebraId.SPHERE
    return AlgebraElement(alg, _rewriter(alg, ctx).reduce_random(word, rng), ctx)


def multiply(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    x._check(y)
    rw = _rewriter(x.algebra, x.ctx)
    acc = defaultdict(mpf)
    for m1, c1 in x.terms.items():
        for m2, c2 in y.terms.items():
            c = c1 * c2
            for m, v in rw.mono_product(m1, m2).items():
                acc[m] += c * v
    return AlgebraElement(x.algebra, acc, x.ctx)


def _star_gen(alg, ctx):
    q = ctx.q
    one = mpf(1)
    if alg is AlgebraId.SPHERE:
        return {"A": (one, "A"), "B": (one, "Bs"), "Bs": (one, "B")}
    if alg is AlgebraId.SUQ2:
        # d = a*, c = -q^-1 b*  =>  b* = -q c, c* = -q^-1 b
        return {"a": (one, "d"), "d": (one, "a"), "b": (-q, "c"), "c": (-1 / q, "b")}
    return {"K": (one, "K"), "Ki": (one, "Ki"), "E": (one, "F"), "F": (one, "E")}


def star(x: AlgebraElement) -> AlgebraElement:
    """The antilinear, antimultiplicative involution."""
    table = _star_gen(x.algebra, x.ctx)
    rw = _rewriter(x.algebra, x.ctx)
    acc = defaultdict(mpf)
    for mono, c in x.terms.items():
        coef = mpmath.conj(c)
        word = []
        for g in reversed(monomial_word(x.algebra, mono)):
            f, h = table[g]
            coef *= f
            word.append(h)
        for m, v in rw.reduce_word(tuple(word)).items():
            acc[m] += coef * v
    return AlgebraElement(x.algebra, acc, x.ctx)


def _counit_mono(alg, mono):
    if alg is AlgebraId.SPHERE:
        return 1 if mono == (0, 0, 0) else 0
    if alg is AlgebraId.SUQ2:
        return 1 if mono[1] == 0 and mono[2] == 0 else 0
    return 1 if mono[0] == 0 and mono[2] == 0 else 0


def counit(x: AlgebraElement):
    """The character sending A, B, B*, b, c, E, F to 0 and a, d, K to 1."""
    total = mpf(0)
    for mono, c in x.terms.items():
        if _counit_mono(x.algebra, mono):
            total += c
    return total


def sigma_twist(lam, x: AlgebraElement) -> AlgebraElement:
    """The automorphism ``A -> A, B -> lam B, B* -> lam^-1 B*`` of the sphere."""
    if x.algebra is not AlgebraId.SPHERE:
        raise AlgebraMismatch("sigma_twist acts on the sphere only")
    lam = to_mp(lam)
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    return AlgebraElement(
        x.algebra, {m: c * lam ** (m[1] - m[2]) for m, c in x.terms.items()}, x.ctx
    )


# ---------------------------------------------------------------------------
# sphere inside quantum SU(2)


@lru_cache(maxsize=None)
def _embedded_generators(ctx: ScalarContext):
    qi = 1 / ctx.q
    return {
        "A": normal_form(("b", "c"), ctx, -qi),
        "B": normal_form(("a", "c"), ctx),
        "Bs": normal_form(("b", "d"), ctx, -qi),
    }


@lru_cache(maxsize=None)
def _embed_mono(mono, ctx: ScalarContext):
    gens = _embedded_generators(ctx)
    out = unit(AlgebraId.SUQ2, ctx)
    for g in monomial_word(AlgebraId.SPHERE, mono):
        out = out * gens[g]
    return out


def embed_sphere(x: AlgebraElement) -> AlgebraElement:
    """Homomorphism ``B -> ac, A -> -q^-1 bc, B* -> -q^-1 bd`` into SUQ2."""
    if x.algebra is not AlgebraId.SPHERE:
        raise AlgebraMismatch("embed_sphere expects a sphere element")
    acc = defaultdict(mpf)
    for mono, c in x.terms.items():
        for m, v in _embed_mono(mono, x.ctx).terms.items():
            acc[m] += c * v
    return AlgebraElement(AlgebraId.SUQ2, acc, x.ctx)


def sphere_basis(degree_bound: int):
    """PBW monomials ``A^n B^m`` and ``A^n Bs^m`` with ``n + m <= degree_bound``."""
    out = []
    for total in range(degree_bound + 1):
        for m in range(total + 1):
            n = total - m
            out.append((n, m, 0))
            if m:
                out.append((n, 0, m))
    return out


def _left_weight(mono):
    i, j, k, i2 = mono
    return -i + j - k + i2


def _recognize(y: AlgebraElement, degree_bound: int):
    """Least-squares preimage sector by sector; returns (terms, residual)."""
    ctx = y.ctx
    sectors = defaultdict(list)
    for mono in sphere_basis(degree_bound):
        sectors[2 * (mono[2] - mono[1])].append(mono)
    ysec = defaultdict(dict)
    for mono, c in y.terms.items():
        ysec[_left_weight(mono)][mono] = c
    residual = mpf(0)
    found = {}
    for w in set(sectors) | set(ysec):
        cols = sectors.get(w, [])
        target = ysec.get(w, {})
        if not cols:
            residual = max(residual, max((abs(c) for c in target.values()), default=mpf(0)))
            continue
        images = [_embed_mono(m, ctx).terms for m in cols]
        rows = sorted(set(target).union(*[set(im) for im in images]))
        if not target:
            continue
        mat = mpmath.matrix(len(rows), len(cols))
        for jcol, im in enumerate(images):
            for irow, r in enumerate(rows):
                mat[irow, jcol] = im.get(r, 0)
        re = mpmath.matrix([mpmath.re(target.get(r, 0)) for r in rows])
        im_ = mpmath.matrix([mpmath.im(target.get(r, 0)) for r in rows])
        sol_re, res_re = mpmath.qr_solve(mat, re)
        sol_im, res_im = mpmath.qr_solve(mat, im_)
        residual = max(residual, res_re, res_im)
        for jcol, mono in enumerate(cols):
            v = sol_re[jcol] + 1j * sol_im[jcol] if sol_im[jcol] != 0 else sol_re[jcol]
            found[mono] = v
    return found, residual


def recognize_in_sphere(y: AlgebraElement, degree_bound: int | None = None) -> AlgebraElement:
    """Preimage of ``y`` under :func:`embed_sphere`, found by solving a linear system."""
    if y.algebra is not AlgebraId.SUQ2:
        raise AlgebraMismatch("recognize_in_sphere expects an SU_q(2) element")
    ctx = y.ctx
    if degree_bound is None:
        degree_bound = y.degree() // 2 + 1
    tol = ctx.tol * max(1, y.norm())
    found, residual = _recognize(y, degree_bound)
    if residual > tol:
        _, wider = _recognize(y, degree_bound + max(2, degree_bound))
        if wider <= tol:
            raise DegreeBoundTooSmall(f"degree bound too small: {degree_bound}")
        raise NotInSubalgebra(f"not in subalgebra (residual {mpmath.nstr(residual, 5)})")
    return AlgebraElement(AlgebraId.SPHERE, found, ctx)
