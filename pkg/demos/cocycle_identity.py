"""The residue cocycle of the spectral triple and the fundamental cocycle.

On H+ the operator gamma a0 [D,a1][D,a2] is multiplication by
a0 (a1 <| E)(a2 <| F); this script checks that on a truncated space, then
evaluates both cocycles and the twisted cocycle condition on random samples.

Run with ``python demos/cocycle_identity.py``.
"""

import random
from fractions import Fraction

import mpmath

from podles.hochschild import (
    closed_form_cocycle,
    cocycle_check,
    cocycle_operator,
    fundamental_cochain,
    fundamental_cocycle,
    multiplication_elements,
    normalization_ratio,
    random_quadruples,
    residue_cochain,
    residue_cocycle,
)
from podles.ncalg import AlgebraId, generator, unit
from podles.scalars import default_context
from podles.spectral import TruncatedSpace, represent

ctx = default_context().activate()
q = ctx.q
one = unit(AlgebraId.SPHERE, ctx)
A, B, Bs = generator("A"), generator("B"), generator("Bs")

a0, a1, a2 = A, B, Bs
m_plus, m_minus = multiplication_elements(a0, a1, a2)
print("a0, a1, a2 = A, B, B*")
print("  m+ =", m_plus)
print("  m- =", m_minus)

space = TruncatedSpace(Fraction(21, 2), ctx)
op = cocycle_operator(a0, a1, a2, space)
dev = op.restrict(1, 1).max_deviation(represent(m_plus, space).restrict(1, 1))
print(f"  |gamma a0 [D,a1][D,a2] - m+| on H+ : {mpmath.nstr(dev, 3)}")

print("\nphi~(1, B, B*) =", mpmath.nstr(fundamental_cocycle(one, B, Bs), 15))
print("phi (1, B, B*) =", mpmath.nstr(residue_cocycle(one, B, Bs), 15))
print("closed form    =", mpmath.nstr(closed_form_cocycle(one, B, Bs), 15))

samples = random_quadruples(random.Random(1), 30, ctx=ctx)
for lam_name, lam in (("q^2", q**2), ("1", 1)):
    for make in (fundamental_cochain, residue_cochain):
        report = cocycle_check(make(lam=lam), samples=samples)
        print(f"cocycle condition, {make.__name__:<19} sigma = sigma_{lam_name:<3}: max {mpmath.nstr(report.max_deviation, 3)}")

print("\nreported class constant (q - q^-3)/ln q =", mpmath.nstr(normalization_ratio(ctx), 12))
