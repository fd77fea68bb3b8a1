"""Zeta functions of the Dirac operator: direct sums, continuation and residues.

Run with ``python demos/zeta_residues.py``.
"""

from fractions import Fraction

import mpmath

from podles.errors import PoleProximityError
from podles.ncalg import AlgebraId, generator, unit
from podles.scalars import default_context
from podles.spectral import ShellOperator, TruncatedSpace, represent, represent_uq
from podles.zeta import (
    contour_residue,
    residue_aK,
    residue_LK,
    residue_numeric_probe,
    tau,
    zeta_direct,
    zeta_LK,
)

ctx = default_context().activate()
space = TruncatedSpace(Fraction(61, 2), ctx)
print(f"truncated Hilbert space: l <= {space.l_max}, {space.N} vectors per parity\n")

# Where the trace converges the two routes agree.
direct = zeta_direct(ShellOperator.identity(space), 1, 4)
closed = zeta_LK(0, 0, 4, ctx=ctx)
print("zeta(4) by shell sums     :", mpmath.nstr(direct.value, 25), f"(tail bound {mpmath.nstr(direct.abs_error, 3)})")
print("zeta(4) by the continuation:", mpmath.nstr(closed.value, 25))

# The continuation reaches past the abscissa, up to the pole lattice.
print("\nzeta_{K^2}(z) for z approaching the pole at 2:")
for z in (3, 2.5, 2.1, 2.01):
    print(f"  z = {z:<5} {mpmath.nstr(zeta_LK(0, 2, z, ctx=ctx).value, 15)}")
try:
    zeta_LK(0, 2, 2, ctx=ctx)
except PoleProximityError as exc:
    print(" ", exc)

# Residues: closed form, contour integral and a fit to the shell traces.
pole = residue_LK(0, 2, ctx)
circle = contour_residue(lambda z: zeta_LK(0, 2, z, ctx=ctx).value, pole.location)
ops = represent_uq(space)
probe = residue_numeric_probe(ops.Kinv * ops.Kinv, 2, space)
print(f"\nresidue at z = {pole.location} (order {pole.order}):")
print("  closed form :", mpmath.nstr(pole.residue, 20))
print("  contour     :", mpmath.nstr(mpmath.re(circle), 20))
print("  shell fit   :", mpmath.nstr(probe, 20))

# The residue table turns the residue into a twisted trace on the sphere.
A, B, Bs = generator("A"), generator("B"), generator("Bs")
one = unit(AlgebraId.SPHERE, ctx)
print("\nRes zeta_{A K^2} =", mpmath.nstr(residue_aK(A, 1), 15))
for mu in (-1, 0, 1):
    print(f"tau_{mu}(1, A, A^2) =", [mpmath.nstr(tau(mu, a), 10) for a in (one, A, A * A)])
print("tau_1(B B*) =", mpmath.nstr(tau(1, B * Bs), 12), " q^-2 tau_1(B* B) =", mpmath.nstr(tau(1, Bs * B) / ctx.q**2, 12))
