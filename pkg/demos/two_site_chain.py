"""Two sites, two colors: the weight space V_(1,1) and its cohomological model.

Builds the xi bases, the Bethe generators, the nu maps on H_(1,1) and the
quantum multiplication by gamma_11, all with z, h, q symbolic.
"""
from ybl.exact_algebra import Scalars
from ybl.weight_space import Composition, build_xi, shapovalov
from ybl.yangian import bethe_generators
from ybl.cohomology import class_from_poly, integrate, mu_map, nu_map
from ybl.wronskian_quantum import quantum_operator

lam = Composition((1, 1))
sc = Scalars.symbolic(2, 2)
print("basis of V_(1,1):", lam.words)

xp, xm = build_xi("plus", lam, sc), build_xi("minus", lam, sc)
for w in lam.words:
    print(f"xi+_{w} =", dict(xp[w].items()))
    print(f"xi-_{w} =", dict(xm[w].items()))
print("S(xi+_(2,1), xi-_(2,1)) =", shapovalov(xp[(2, 1)], xm[(2, 1)]))

gens = bethe_generators("plus", lam, sc)
print("Bethe generators commute:", gens.check_commutative())
print("B_(1,2) =\n", gens.B[(1, 2)].matrix)

one = class_from_poly(lam, 1, sc)
gam = class_from_poly(lam, sc.gamma(1, 1), sc)
print("restrictions of gamma_11:", gam.vector)
print("int [gamma_11] over F =", integrate("fl", gam))
print("int~ [1] over T*F =", integrate("tfl", one))
for kind in ("plus", "eq", "minus"):
    print(f"nu_{kind}(gamma_11) =", dict(nu_map(kind, gam).items()))
print("mu_minus(gamma_11) =\n", mu_map("minus", gam).matrix)

print("gamma_11 * (star product) on restriction vectors =\n", quantum_operator("star", gam).matrix)
