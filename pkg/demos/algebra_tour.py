"""A short walk through the three algebras and the pairing between them.

Run with ``python demos/algebra_tour.py``.
"""

import mpmath

from podles.hopf import calibrate_pairing, functional_value, left_act, right_act, sphere_x
from podles.ncalg import embed_sphere, generator, recognize_in_sphere
from podles.parser import parse
from podles.scalars import default_context

ctx = default_context().activate()
q = ctx.q
print(f"q = {q}, working precision {ctx.precision} digits\n")

# Normal forms: the sphere relations reorder B*A into a multiple of A B*.
for src in ("B*A", "Bs*B", "B*Bs", "(A + B)^2"):
    _, x = parse(src, ctx)
    print(f"{src:>10} = {x}")

# The sphere sits inside SU_q(2); A = -q^-1 b c, B = c* a, ...
print("\nembedding:")
for g in ("A", "B", "Bs"):
    print(f"  {g:>2} -> {embed_sphere(generator(g))}")

# The pairing with U_q(su(2)) is pinned down by the relations; K pairs
# diagonally with (a, d) and E, F pair with c, b.
table = calibrate_pairing(ctx)
print("\ncalibrated pairing: <K, a> =", mpmath.nstr(table.value("K", "a"), 12),
      " <K, d> =", mpmath.nstr(table.value("K", "d"), 12))

# Spin-one triple x_-1, x_0, x_1 and the ladder action of E.
xs = {i: embed_sphere(v) for i, v in sphere_x(ctx).items()}
E, F = generator("E"), generator("F")
y = recognize_in_sphere(left_act(E, xs[0]))
print("\nE |> x0 =", y)
print("x1      =", sphere_x(ctx)[1])

# Functionals E(a) = eps(a <| E) and F(a) on the generators.
B, Bs = generator("B"), generator("Bs")
print("\nE(B)  =", mpmath.nstr(functional_value(E, B), 15), "  (q^(1/2) =", mpmath.nstr(mpmath.sqrt(q), 15), ")")
print("F(B*) =", mpmath.nstr(functional_value(F, Bs), 15))
print("B <| E =", right_act(embed_sphere(B), E))
