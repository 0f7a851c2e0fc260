"""Acceptance criteria 1-16, one check each, with a pass/fail line per criterion.

Run under pytest (the lines are collected in the terminal summary) or
directly with ``python3 tests/test_acceptance.py``.
"""

import random
import sys
import time
from fractions import Fraction
from itertools import product

import pytest

from ybl.exact_algebra import FieldMatrix, Scalars
from ybl.weight_space import (
    Composition, WVector, build_xi, compositions, enumerate_indices, shapovalov, structure_scalars,
)
from ybl.cohomology import HBasis, class_from_poly, integrate, mu_map, nu_map
from ybl.yangian import (
    aef_on_xi, bethe_generators, flatness_check, qkz_operators, rho_T, series_operator,
)
from ybl.wronskian_quantum import (
    cm_identities, hk_relation_check, limit_h_inf, pairings, q_to_zero, quantum_mul, wronskian,
)
from ybl.special_case import (
    bethe_idempotents_2x2, hecke_tau, hecke_vs_bethe, qde_series_check, reduced_x_bullet,
)

RESULTS = {}
L11 = Composition((1, 1))


def shapes(n_max, positive=False):
    return [lam for n in range(1, n_max + 1) for lam in compositions(n, max_parts=n, positive=positive)]


def sym2():
    sc = Scalars.symbolic(2, 2)
    return sc, sc.z[0], sc.z[1], sc.h


def rational_panels(k, seed):
    rng = random.Random(seed)
    return [[Fraction(rng.randint(1, 29), rng.randint(31, 97)) for _ in range(4)] for _ in range(k)]


# -- the criteria

def ac1():
    sc, z1, z2, h = sym2()
    xp, xm = build_xi("plus", L11, sc), build_xi("minus", L11, sc)
    v = lambda c: WVector(L11, sc.reg, c)
    assert xp[(1, 2)] == v({(1, 2): 1})
    assert xp[(2, 1)] == v({(2, 1): (z2 - z1) / (z2 - z1 + h), (1, 2): h / (z2 - z1 + h)})
    assert xm[(2, 1)] == v({(2, 1): 1})
    assert xm[(1, 2)] == v({(1, 2): (z1 - z2) / (z1 - z2 + h), (2, 1): h / (z1 - z2 + h)})


def _orthogonal(lam, sc):
    xp, xm = build_xi("plus", lam, sc), build_xi("minus", lam, sc)
    idx = enumerate_indices(lam)
    for I in idx:
        Q, R = structure_scalars(I, sc)
        for J in idx:
            want = R / Q if I == J else 0
            assert shapovalov(xp[I.word], xm[J.word]) == want, (lam, I.word, J.word)


def ac2():
    for lam in shapes(4):
        _orthogonal(lam, Scalars.specialized(lam.n, lam.N))
    for lam in shapes(3):
        _orthogonal(lam, Scalars.symbolic(lam.n, lam.N))


def ac3():
    for lam in shapes(3):
        sc = Scalars.specialized(lam.n, lam.N)
        for sign in ("plus", "minus"):
            xs = build_xi(sign, lam, sc).matrix
            for kind in "AEF":
                for p in range(1, lam.N + (1 if kind == "A" else 0)):
                    dst = lam if kind == "A" else lam.shifted(p, p + 1) if kind == "E" else lam.shifted(p + 1, p)
                    if dst is None:
                        continue
                    route = series_operator(sign, kind, p, lam, sc)
                    closed = aef_on_xi(sign, kind, p, lam, sc)
                    xd = build_xi(sign, dst, sc).matrix
                    assert route.matrix @ xs == xd @ closed.matrix, (sign, kind, p, lam)


def _commute(gens):
    ops = gens.generators()
    for a in ops:
        for b in ops:
            assert a.commutator(b).is_zero()


def ac4():
    for lam in shapes(3, positive=True):
        for q in rational_panels(3, seed=lam.n * 10 + lam.N):
            sc = Scalars.specialized(lam.n, lam.N, q=q[:lam.N] if lam.N > 1 else q[:1])
            for sign in ("plus", "minus"):
                g = bethe_generators(sign, lam, sc, check=False)
                assert all(s <= g.s_max for _, s in g.B) and g.s_max >= max(lam.parts) + 1
                _commute(g)
    sc = Scalars.symbolic(2, 2)
    for lam in (L11, Composition((2, 0)), Composition((0, 2))):
        for sign in ("plus", "minus"):
            _commute(bethe_generators(sign, lam, sc, check=False))


def ac5():
    sc, z1, z2, h = sym2()
    u = sc.u
    one, gam = class_from_poly(L11, 1, sc), class_from_poly(L11, sc.gamma(1, 1), sc)
    zz = (z1 - z2 + h) * (z2 - z1 + h)
    assert integrate("fl", one) == 0
    assert integrate("fl", gam) == -1
    assert integrate("tfl", one) == 2 / zz
    assert integrate("tfl", gam) == (z1 + z2 - h) / zz
    v12, v21 = WVector.basis(L11, sc.reg, (1, 2)), WVector.basis(L11, sc.reg, (2, 1))
    assert nu_map("plus", one) == v12 + v21
    assert nu_map("plus", gam) == v12 * (z1 + h) + v21 * z2
    assert nu_map("eq", one) == (v12 - v21) / (z1 - z2 - h)
    assert nu_map("eq", gam) == (v12 * (z1 - h) - v21 * z2) / (z1 - z2 - h)
    assert nu_map("minus", one) == (v12 - v21) / (z1 - z2 + h)
    assert nu_map("minus", gam) == (v12 * z1 - v21 * (z2 - h)) / (z1 - z2 + h)
    upper = FieldMatrix([[z1, h], [0, z2]], registry=sc.reg)
    assert mu_map("plus", gam).matrix == upper
    assert mu_map("eq", gam).matrix == upper
    assert mu_map("minus", gam).matrix == FieldMatrix([[z1, 0], [h, z2]], registry=sc.reg)
    # A_1 on the two-site chain: derived from the ordered product of L-operators
    corner = h * h / ((u - z1) * (u - z2))
    a_plus = FieldMatrix([[1 + h / (u - z1), corner], [0, 1 + h / (u - z2)]], registry=sc.reg)
    a_minus = FieldMatrix([[1 + h / (u - z1), 0], [corner, 1 + h / (u - z2)]], registry=sc.reg)
    assert rho_T("plus", 1, 1, L11, sc).matrix == a_plus
    assert rho_T("minus", 1, 1, L11, sc).matrix == a_minus


def ac6():
    for lam in shapes(3):
        sc = Scalars.specialized(lam.n, lam.N)
        classes = HBasis(lam, sc).classes
        for kind in ("plus", "eq", "minus"):
            for f, g in product(classes, repeat=2):
                assert mu_map(kind, f).apply(nu_map(kind, g)) == nu_map(kind, f * g), (lam, kind)


def ac7():
    sc, z1, z2, h = sym2()
    q1, q2 = sc.q
    g11, g21 = sc.gamma(1, 1), sc.gamma(2, 1)
    w = wronskian(L11, sc)
    assert w.relations[1] == -(g11 + g21 - z1 - z2)
    assert w.relations[0] == g11 * g21 + q2 / (q1 - q2) * h * (g11 - g21 + h) - z1 * z2
    rep = hk_relation_check(L11, sc)
    assert rep.ok, rep.first_failure
    for parts in ((2, 1), (1, 1, 1)):
        lam = Composition(parts)
        rep = hk_relation_check(lam, Scalars.specialized(lam.n, lam.N))
        assert rep.ok, (parts, rep.first_failure)


def ac8():
    sc, z1, z2, h = sym2()
    q1, q2 = sc.q
    g = sc.gamma(1, 1)
    zz = (z1 - z2 + h) * (z1 - z2 - h)
    assert pairings("round", 1, 1, L11, sc) == 0
    assert pairings("round", 1, g, L11, sc) == 1
    assert pairings("round", g, g, L11, sc) == z1 + z2 + 2 * h * q2 / (q1 - q2)
    assert pairings("angle", 1, 1, L11, sc) == 2 / zz
    assert pairings("angle", 1, g, L11, sc) == (z1 + z2 - h) / zz
    assert pairings("angle", g, g, L11, sc) == (z1 ** 2 + z2 ** 2 - h * (z1 + z2)) / zz
    lam = Composition((2, 1))
    sc = Scalars.specialized(3, 2)
    a, b, c = sc.gamma(1, 1), sc.gamma(1, 2), sc.gamma(2, 1)
    pool = [sc.one, a + b, a * b, c, c * c, (a + b) * c, a * a + b * b]
    rng = random.Random(8)
    triples = [tuple(rng.choice(pool) for _ in range(3)) for _ in range(6)]
    for kind in ("round", "angle"):
        for f1, f2, f3 in triples:
            assert pairings(kind, f1, f2, lam, sc) == pairings(kind, f2, f1, lam, sc)
            assert pairings(kind, f1 * f2, f3, lam, sc) == pairings(kind, f2, f1 * f3, lam, sc)
    cl = HBasis(lam, sc).classes
    for f, g, k in product(cl[:3], repeat=3):
        lhs = integrate("tfl", quantum_mul("bullet", f, g) * k)
        assert lhs == integrate("tfl", f * quantum_mul("bullet", g, k))


def ac9():
    red = reduced_x_bullet()
    M, h, q, z = red.matrix, red.h, red.q, red.z
    I = FieldMatrix.identity(red.sc.reg, 2)
    assert M @ M - (I * h + M) * (4 * h * q / (1 - q)) == I * z ** 2
    for lam in shapes(3, positive=True):
        if lam.N == 1:
            continue
        sc = Scalars.specialized(lam.n, lam.N, q="symbolic")
        cl = HBasis(lam, sc).classes
        for f, g in product(cl, repeat=2):
            cup = (f * g).vector
            for kind in ("star", "bullet"):
                assert [q_to_zero(x, sc) for x in quantum_mul(kind, f, g).vector] == cup, (lam, kind)


def ac10():
    for lam in shapes(3, positive=True):
        if lam.N == 1:
            continue
        scs = [Scalars.specialized(lam.n, lam.N, q="symbolic")]
        if lam.n == 2:
            scs.append(Scalars.symbolic(lam.n, lam.N))
        for sc in scs:
            for kind in ("k", "k_plus", "k_minus"):
                for sign in ("plus", "minus"):
                    rep = flatness_check(sign, kind, lam, sc)
                    assert rep.ok, (lam, kind, sign, rep.failure)


def ac11():
    for lam in shapes(3):
        sc = Scalars.specialized(lam.n, lam.N)
        for sign in ("plus", "minus"):
            ks = qkz_operators(sign, lam, sc, kappa=0)
            gens = bethe_generators(sign, lam, sc, check=False).generators()
            for k in ks:
                for b in gens:
                    assert k.commutator(b).is_zero(), (lam, sign)


def ac12():
    for n in (1, 2, 3):
        rep = cm_identities(n, Scalars.symbolic(n, n))
        assert rep.ok, (n, rep.first_failure)
    rep = cm_identities(4, Scalars.specialized(4, 4))
    assert rep.ok, rep.first_failure


def ac13():
    sc = None
    for parts in ((1, 1), (2, 1)):
        rep = limit_h_inf(Composition(parts))
        assert rep.ok, (parts, rep.first_failure)
        if parts == (1, 1):
            s = rep.scalars
            assert rep.det_m == (s.u - s.gamma(1, 1)) * (s.u - s.gamma(2, 1)) + s.var("r1")


def ac14():
    for sign in ("plus", "minus"):
        assert hecke_vs_bethe(sign, 2, Scalars.symbolic(2, 2)).ok
        assert hecke_vs_bethe(sign, 3, Scalars.specialized(3, 3, q="symbolic")).ok
        assert hecke_vs_bethe(sign, 3, Scalars.specialized(3, 3)).ok
        for n in (2, 3, 4):
            assert hecke_tau(sign, n, Scalars.specialized(n, n)).check_relations()


def ac15():
    for z, h, q in [(3, 1, Fraction(1, 4)), (Fraction(5, 2), 2, Fraction(-1, 3)), (1, Fraction(1, 3), 3)]:
        res = bethe_idempotents_2x2(z, h, q)
        w1, w2 = res.w
        assert res.product(w1, w1) == w1 and res.product(w2, w2) == w2
        assert res.product(w1, w2) == (0, 0)
        assert res.add(w1, w2) == (1, 0)


def ac16():
    for z, h, k in [(3, 1, 2), (Fraction(7, 3), Fraction(1, 2), 3), (Fraction(-5, 2), 2, Fraction(3, 4))]:
        for which in ("J1", "J2"):
            rep = qde_series_check(z, h, k, 20, which)
            assert rep.ok and rep.orders == list(range(21)), (z, h, k, which, rep.first_failure)


CRITERIA = [
    (1, "xi-examples: printed xi vectors at lambda = (1,1)", ac1),
    (2, "orthogonality S(xi+_I, xi-_J) = delta R/Q, n <= 4 specialized, n <= 3 symbolic", ac2),
    (3, "A, E, F closed forms in the xi bases equal the quantum-minor route, n <= 3", ac3),
    (4, "Bethe generators commute, n <= 3 at 3 rational q panels, n = 2 symbolic", ac4),
    (5, "cohomology examples: integrals, nu and mu images, derived A_1 matrices", ac5),
    (6, "regular representation mu(f) nu(g) = nu(fg), n <= 3", ac6),
    (7, "Wronskian presentation: printed relations, symbolic (1,1), specialized (2,1), (1,1,1)", ac7),
    (8, "pairings: printed values, symmetry, invariance, Frobenius identity", ac8),
    (9, "quantum product: reduced quadratic for x., q -> 0 limit is the cup product, n <= 3", ac9),
    (10, "flatness of the dynamical connections X^q, X^q+, X^q-, n <= 3", ac10),
    (11, "qKZ operators at kappa = 0 commute with the Bethe algebra, n <= 3", ac11),
    (12, "Calogero-Moser identities, symbolic n <= 3, specialized n = 4", ac12),
    (13, "h -> infinity limit for lambda = (1,1), (2,1)", ac13),
    (14, "Hecke: rho(X^q_i) = tau(Y_i) for n <= 3, relations for n <= 4", ac14),
    (15, "Bethe idempotents over Q(sqrt D) at 3 panels", ac15),
    (16, "J1, J2 solve the quantum differential equation through q^20 at 3 panels", ac16),
]


def _line(num, title, ok, secs, err=None):
    tail = f"  [{err}]" if err else ""
    return f"AC{num:02d} {'PASS' if ok else 'FAIL'} ({secs:.1f}s) {title}{tail}"


@pytest.mark.parametrize("num,title,fn", CRITERIA, ids=[f"AC{c[0]:02d}" for c in CRITERIA])
def test_acceptance(num, title, fn):
    t0 = time.perf_counter()
    try:
        fn()
    except Exception as e:
        RESULTS[num] = _line(num, title, False, time.perf_counter() - t0, f"{type(e).__name__}: {e}"[:300])
        print(RESULTS[num])
        raise
    RESULTS[num] = _line(num, title, True, time.perf_counter() - t0)
    print(RESULTS[num])


if __name__ == "__main__":
    failed = 0
    for num, title, fn in CRITERIA:
        t0 = time.perf_counter()
        try:
            fn()
            print(_line(num, title, True, time.perf_counter() - t0), flush=True)
        except Exception as e:
            failed += 1
            print(_line(num, title, False, time.perf_counter() - t0, f"{type(e).__name__}: {e}"[:300]), flush=True)
    sys.exit(1 if failed else 0)
