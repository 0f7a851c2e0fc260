"""Full flags: Hecke operators, the reduced two-site algebra and its idempotents.

tau(Y_i) reproduces the dynamical Hamiltonians on H_(1,1,1).  For n = 2,
with z1 + z2 = 0, quantum multiplication by x = x1 - x2 satisfies a quadratic
relation; its eigenvectors come from the Bethe equation, and the residue
series J1, J2 solve the quantum differential equation.
"""
from fractions import Fraction

from ybl.exact_algebra import Scalars
from ybl.special_case import (
    bethe_idempotents_2x2, hecke_tau, hecke_vs_bethe, qde_coefficients, qde_series_check, reduced_x_bullet,
)

act = hecke_tau("minus", 3, Scalars.specialized(3, 3, q="symbolic"))
print("Hecke relations hold:", act.check_relations())
print(hecke_vs_bethe("minus", 3, act.sc))
print("affine KZ connection flat:", act.akz_flatness().ok)

red = reduced_x_bullet()
print("x. in the basis 1, x =\n", red.matrix)
print("tau-(s) =\n", red.tau_minus)

res = bethe_idempotents_2x2(3, 1, Fraction(1, 4))
print("discriminant", res.delta, "roots", res.roots)
for i, w in enumerate(res.w, 1):
    print(f"w_{i} = {w[0]} + ({w[1]}) x")
print("idempotents verified:", res.check())

print("first coefficients of J1:", [tuple(str(a) for a in c) for c in qde_coefficients(3, 1, 2, 3, "J1")])
for which in ("J1", "J2"):
    rep = qde_series_check(3, 1, 2, 20, which)
    print(rep.identity, "->", rep.status)
