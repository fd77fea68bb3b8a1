"""Scalar arithmetic at configurable precision.

All numbers are :mod:`mpmath` values.  Precision is global to the process
(``mpmath.mp.dps``) and is set when a :class:`ScalarContext` is created.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
from mpmath import mpf, mpc

__all__ = [
    "ScalarContext",
    "default_context",
    "to_mp",
    "q_int",
    "q_int_half",
    "gen_binomial",
    "real_power",
    "is_small",
]


@dataclass(frozen=True)
class ScalarContext:
    """Deformation parameter, working precision and comparison tolerance.

    ``q`` is stored as an ``mpf`` at the requested precision.  Creating a
    context sets ``mpmath.mp.dps``.
    """

    q: mpf = field(default_factory=lambda: mpf("0.5"))
    precision: int = 50
    tol: float = 1e-8

    def __post_init__(self):
        if self.precision < 15:
            raise ValueError("precision must be at least 15 digits")
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        mpmath.mp.dps = self.precision
        q = to_mp(self.q)
        if not 0 < q < 1:
            raise ValueError(f"q must lie in (0, 1), got {self.q}")
        object.__setattr__(self, "q", mpf(q))

    def activate(self):
        """Restore this context's precision (another context may have changed it)."""
        mpmath.mp.dps = self.precision
        return self

    @property
    def prune(self):
        """Coefficients below this magnitude are dropped from algebra elements."""
        return mpf(10) ** (-(self.precision - 8))

    @property
    def qinv(self):
        return 1 / self.q


_DEFAULT = None


def default_context():
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = ScalarContext()
    return _DEFAULT


def to_mp(x):
    """Convert ints, floats, Fractions, strings and complex numbers to mpmath."""
    if isinstance(x, (mpf, mpc)):
        return x
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    if isinstance(x, complex):
        return mpc(x.real, x.imag)
    if isinstance(x, str):
        return mpmath.mpmathify(x)
    return mpf(x)


def real_power(base, z):
    """``base ** z`` for ``base > 0`` on the principal branch ``exp(z ln base)``."""
    base = to_mp(base)
    if base <= 0:
        raise ValueError("real_power needs a positive base")
    z = to_mp(z)
    if isinstance(z, mpf) or z.imag == 0:
        return mpmath.exp(mpmath.re(z) * mpmath.log(base))
    return mpmath.exp(z * mpmath.log(base))


def q_int(n, ctx: ScalarContext):
    """The q-integer ``(q^n - q^-n) / (q - q^-1)``; ``n`` may be any real."""
    q = ctx.q
    n = to_mp(n)
    return (q**n - q ** (-n)) / (q - 1 / q)


def q_int_half(x, ctx: ScalarContext):
    """q-integer at a half-integer argument.

    ``x`` may be a Fraction, an int, a float that is an exact multiple of 1/2,
    or an mpf.
    """
    xm = to_mp(x)
    if 2 * xm != mpmath.nint(2 * xm):
        raise ValueError(f"{x} is not a half-integer")
    return q_int(xm, ctx)


def gen_binomial(z, j: int):
    """Generalised binomial coefficient ``C(z + j - 1, j) = prod_{i<j} (z+i) / j!``."""
    if j < 0:
        raise ValueError("j must be nonnegative")
    z = to_mp(z)
    out = mpf(1)
    for i in range(j):
        out = out * (z + i) / (i + 1)
    return out


def is_small(x, ctx: ScalarContext):
    return abs(x) < ctx.prune
