"""The discrete Wronskian presents H^q_lambda; pairings and the q -> 0 limit.

For lambda = (2,1) the Chern roots are substituted by operators on V_lambda
and W(u) is checked against V prod (u - z_a).  Then the two pairings of the
two-site example and the degeneration of the products to the cup product.
"""
from itertools import product

from ybl.exact_algebra import Scalars
from ybl.weight_space import Composition
from ybl.cohomology import HBasis
from ybl.wronskian_quantum import (
    cm_identities, hk_relation_check, limit_h_inf, pairings, q_to_zero, quantum_mul, wronskian,
)

sc = Scalars.symbolic(2, 2)
lam = Composition((1, 1))
w = wronskian(lam, sc)
print("W(u) =", w.W)
for k, rel in enumerate(w.relations):
    print(f"coefficient of u^{k}: {rel} = 0")
print(hk_relation_check(lam, sc))

lam21 = Composition((2, 1))
print(hk_relation_check(lam21, Scalars.specialized(3, 2)))

g = sc.gamma(1, 1)
for kind in ("round", "angle"):
    for f1, f2 in ((1, 1), (1, g), (g, g)):
        print(f"{kind}({f1}, {f2}) =", pairings(kind, f1, f2, lam, sc))

scq = Scalars.specialized(3, 2, q="symbolic")
cl = HBasis(lam21, scq).classes
same = all([q_to_zero(x, scq) for x in quantum_mul("bullet", f, g).vector] == (f * g).vector
           for f, g in product(cl, repeat=2))
print("bullet product tends to the cup product as q -> 0:", same)

print(cm_identities(3, Scalars.symbolic(3, 3)))
rep = limit_h_inf(lam21)
print("det M(u) =", rep.det_m, "|", rep.status)
