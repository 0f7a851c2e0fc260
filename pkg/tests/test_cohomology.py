from itertools import product

import pytest

from ybl.exact_algebra import FieldMatrix, Scalars
from ybl.weight_space import Composition, WVector, compositions, shapovalov, v_eq, v_minus, v_plus
from ybl.cohomology import (
    CohomClass,
    HBasis,
    class_from_poly,
    f_ps,
    integrate,
    mu_map,
    mu_generator_route,
    nu_map,
    rho_on_H,
    rho_on_H_closed,
    to_cohomology,
)
from ybl.yangian import bethe_generators, dynamical_hamiltonians

L11 = Composition((1, 1))
SC = Scalars.symbolic(2, 2)
z1, z2 = SC.z
h = SC.h
g11 = SC.gamma(1, 1)


def test_unit_class():
    c = class_from_poly(L11, 1, SC)
    assert all(x == 1 for x in c.vector)


def test_gamma_restrictions():
    c = class_from_poly(L11, g11, SC)
    assert c[(1, 2)] == z1
    assert c[(2, 1)] == z2


def test_defining_relation():
    lam = Composition((2, 1))
    sc = Scalars.symbolic(3, 2)
    gam = [sc.gamma(1, 1), sc.gamma(1, 2), sc.gamma(2, 1)]
    e2g = gam[0] * gam[1] + gam[0] * gam[2] + gam[1] * gam[2]
    e2z = sc.z[0] * sc.z[1] + sc.z[0] * sc.z[2] + sc.z[1] * sc.z[2]
    assert class_from_poly(lam, e2g - e2z, sc).is_zero()


def test_symmetry_violation():
    lam = Composition((2, 1))
    sc = Scalars.symbolic(3, 2)
    with pytest.raises(ValueError):
        class_from_poly(lam, sc.gamma(1, 1), sc)


def test_printed_integrals():
    one = class_from_poly(L11, 1, SC)
    gam = class_from_poly(L11, g11, SC)
    assert integrate("fl", one) == 0
    assert integrate("fl", gam) == -1
    zz = (z1 - z2 + h) * (z2 - z1 + h)
    assert integrate("tfl", one) == 2 / zz
    assert integrate("tfl", gam) == (z1 + z2 - h) / zz


def test_fl_integral_rejects_poles():
    bogus = CohomClass(L11, SC, {(1, 2): z1 * 0 + 1, (2, 1): z1 * 0})
    with pytest.raises(ValueError):
        integrate("fl", bogus)


def test_fl_integrals_are_polynomial():
    lam = Composition((2, 1))
    sc = Scalars.symbolic(3, 2)
    basis = HBasis(lam, sc)
    for a in basis.classes:
        for b in basis.classes:
            assert integrate("fl", a * b).is_polynomial()


def test_printed_nu_images():
    gam = class_from_poly(L11, g11, SC)
    one = class_from_poly(L11, 1, SC)
    v12 = WVector.basis(L11, SC.reg, (1, 2))
    v21 = WVector.basis(L11, SC.reg, (2, 1))
    assert nu_map("plus", one) == v_plus(L11, SC)
    assert nu_map("plus", gam) == v12 * (z1 + h) + v21 * z2
    assert nu_map("minus", one) == (v12 - v21) / (z1 - z2 + h)
    assert nu_map("minus", one) == v_minus(L11, SC)
    assert nu_map("eq", one) == (v12 - v21) / (z1 - z2 - h)
    assert nu_map("eq", one) == v_eq(L11, SC)
    assert nu_map("eq", gam) == (v12 * (z1 - h) - v21 * z2) / (z1 - z2 - h)
    assert nu_map("minus", gam) == (v12 * z1 - v21 * (z2 - h)) / (z1 - z2 + h)


def test_printed_mu_images():
    gam = class_from_poly(L11, g11, SC)
    one = class_from_poly(L11, 1, SC)
    assert mu_map("plus", gam).matrix == FieldMatrix([[z1, h], [0, z2]], registry=SC.reg)
    assert mu_map("eq", gam).matrix == FieldMatrix([[z1, h], [0, z2]], registry=SC.reg)
    assert mu_map("minus", gam).matrix == FieldMatrix([[z1, 0], [h, z2]], registry=SC.reg)
    for kind in ("plus", "eq", "minus"):
        assert mu_map(kind, one).matrix == FieldMatrix.identity(SC.reg, 2)


@pytest.mark.parametrize("parts", [(1, 1), (2, 1), (1, 1, 1)])
def test_mu_matches_generator_route(parts):
    lam = Composition(parts)
    sc = Scalars.specialized(lam.n, lam.N)
    for kind in ("plus", "eq", "minus"):
        for p in range(1, lam.N + 1):
            for s in range(1, lam.parts[p - 1] + 2):
                assert mu_map(kind, f_ps(lam, p, s, sc)) == mu_generator_route(kind, p, s, lam, sc)


def test_mu_generator_route_symbolic():
    for kind in ("plus", "minus"):
        for s in (1, 2):
            assert mu_map(kind, f_ps(L11, 1, s, SC)) == mu_generator_route(kind, 1, s, L11, SC)


@pytest.mark.parametrize("parts", [(1, 1), (2, 1), (1, 2), (2, 2), (1, 1, 1), (2, 1, 1)])
def test_pairing_bridge(parts):
    lam = Composition(parts)
    sc = Scalars.specialized(lam.n, lam.N)
    basis = HBasis(lam, sc)
    sign = lam.sign()
    for f, g in product(basis.classes, repeat=2):
        assert shapovalov(nu_map("plus", f), nu_map("minus", g)) == integrate("fl", f * g) * sign
        assert shapovalov(nu_map("eq", f), nu_map("minus", g)) == integrate("tfl", f * g) * sign


def test_regular_representation():
    lam = Composition((2, 1))
    sc = Scalars.specialized(3, 2)
    basis = HBasis(lam, sc)
    for kind in ("plus", "eq", "minus"):
        for f, g in product(basis.classes, repeat=2):
            assert mu_map(kind, f).apply(nu_map(kind, g)) == nu_map(kind, f * g)


def test_hbasis_starts_with_unit_and_has_full_rank():
    for lam in compositions(3, 3):
        sc = Scalars.specialized(lam.n, lam.N)
        b = HBasis(lam, sc)
        assert len(b.classes) == lam.d
        assert all(x == 1 for x in b.classes[0].vector)
        c = b.classes[-1] * b.classes[-1]
        assert b.combine(b.coordinates(c)) == c


@pytest.mark.parametrize("sign", ["plus", "minus"])
def test_a_series_is_multiplication(sign):
    lam = Composition((2, 1))
    sc = Scalars.specialized(3, 2)
    for p in (1, 2):
        assert rho_on_H(sign, "A", p, lam, sc) == rho_on_H_closed(sign, "A", p, lam, sc)


@pytest.mark.parametrize("sign", ["plus", "minus"])
@pytest.mark.parametrize("parts", [(1, 1), (2, 0), (0, 2), (2, 1), (1, 2), (1, 1, 1), (2, 1, 0)])
def test_e_f_substitution_formulas(sign, parts):
    lam = Composition(parts)
    sc = Scalars.specialized(lam.n, lam.N)
    for p in range(1, lam.N):
        for kind, ok in (("E", lam.parts[p]), ("F", lam.parts[p - 1])):
            if ok:
                assert rho_on_H(sign, kind, p, lam, sc) == rho_on_H_closed(sign, kind, p, lam, sc)


def test_e_f_symbolic_two_sites():
    for sign in ("plus", "minus"):
        assert rho_on_H(sign, "E", 1, L11, SC) == rho_on_H_closed(sign, "E", 1, L11, SC)
        lam = Composition((2, 0))
        assert rho_on_H(sign, "F", 1, lam, SC) == rho_on_H_closed(sign, "F", 1, lam, SC)


@pytest.mark.parametrize("sign", ["plus", "minus"])
def test_x_infinity_is_chern_root_sum(sign):
    for parts in [(1, 1), (2, 1), (1, 1, 1)]:
        lam = Composition(parts)
        sc = Scalars.specialized(lam.n, lam.N)
        kind = "plus" if sign == "plus" else "minus"
        for i, x in enumerate(dynamical_hamiltonians(sign, "inf", lam, sc), 1):
            op = to_cohomology(kind, x, sc)
            diag = [sum((sc.z[a] for a, c in enumerate(w) if c == i), sc.zero) for w in lam.words]
            assert op.matrix == FieldMatrix.diag(sc.reg, diag)


def test_bethe_self_adjoint_on_tfl():
    lam = Composition((2, 1))
    sc = Scalars.specialized(3, 2)
    basis = HBasis(lam, sc)
    gens = bethe_generators("minus", lam, sc)
    for x in gens.generators():
        op = to_cohomology("minus", x, sc)
        for f, g in product(basis.classes, repeat=2):
            assert integrate("tfl", f * op.apply_class(g)) == integrate("tfl", g * op.apply_class(f))


def test_plus_minus_contravariant_on_fl():
    lam = Composition((2, 1))
    sc = Scalars.specialized(3, 2)
    basis = HBasis(lam, sc)
    gp = bethe_generators("plus", lam, sc)
    gm = bethe_generators("minus", lam, sc)
    for key in [(1, 2), (2, 3)]:
        op_p = to_cohomology("plus", gp.B[key], sc)
        op_m = to_cohomology("minus", gm.B[key], sc)
        for f, g in product(basis.classes, repeat=2):
            assert integrate("fl", f * op_p.apply_class(g)) == integrate("fl", g * op_m.apply_class(f))
