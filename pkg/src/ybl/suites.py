"""Verification suites run by the command line.

Each suite takes the configured composition and scalars and yields checks.
A check records an identifier, an anchor into the acceptance catalogue, a
status (pass, fail or skip) and, on failure, a witness.  The printed
two-site examples are always checked at symbolic z, h, q, whatever the
configuration says.
"""

import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .exact_algebra import FieldMatrix, GenericityError, Scalars
from .weight_space import Composition, WVector, build_xi, enumerate_indices, shapovalov, structure_scalars
from .cohomology import HBasis, class_from_poly, integrate, mu_map, nu_map
from .yangian import bethe_generators, flatness_check
from .wronskian_quantum import (
    cm_identities, hk_relation_check, limit_h_inf, pairings, q_to_zero, quantum_mul, wronskian,
)
from .special_case import (
    bethe_idempotents_2x2, hecke_tau, hecke_vs_bethe, qde_series_check, reduced_x_bullet,
)

__all__ = ["Check", "Skip", "SUITES", "PANELS", "run_suite"]

# (z, h, q) for the idempotents and (z, h, kappa) for the series solutions
PANELS = {
    "idempotents": [(3, 1, Fraction(1, 4)), (Fraction(5, 2), 2, Fraction(-1, 3)), (1, Fraction(1, 3), 3)],
    "qde": [(3, 1, 2), (Fraction(7, 3), Fraction(1, 2), 3), (Fraction(-5, 2), 2, Fraction(3, 4))],
}


@dataclass
class Check:
    id: str
    anchor: str
    status: str
    witness: str = None
    elapsed_ms: float = 0.0
    note: str = None

    def to_json(self):
        out = {"id": self.id, "paperAnchor": self.anchor, "status": self.status,
               "elapsedMs": round(self.elapsed_ms, 3)}
        if self.status == "fail":
            out["witness"] = self.witness or "failed"
        if self.note:
            out["note"] = self.note
        return out


class Skip(Exception):
    pass


def _check(cid, anchor, fn):
    t0 = time.perf_counter()
    try:
        res = fn()
        status, witness, note = ("pass", None, None) if res in (None, True) else ("fail", str(res), None)
    except Skip as e:
        status, witness, note = "skip", None, str(e)
    except (ArithmeticError, GenericityError) as e:
        status, witness, note = "fail", f"{type(e).__name__}: {e}", None
    return Check(cid, anchor, status, witness, (time.perf_counter() - t0) * 1000, note)


def _sym_q(sc):
    return sc if sc.symbolic_q else sc.with_q(None)


def _two_sites():
    sc = Scalars.symbolic(2, 2)
    return Composition((1, 1)), sc, sc.z[0], sc.z[1], sc.h


def _compare(pairs):
    for label, got, want in pairs:
        if got != want:
            return f"{label}: got {got}, expected {want}"
    return None


# -- suites

def suite_xi(lam, sc, cfg):
    def printed():
        L, s, z1, z2, h = _two_sites()
        xp, xm = build_xi("plus", L, s), build_xi("minus", L, s)

        def vec(c):
            return WVector(L, s.reg, c)
        return _compare([
            ("xi+(1,2)", xp[(1, 2)], vec({(1, 2): 1})),
            ("xi+(2,1)", xp[(2, 1)], vec({(2, 1): (z2 - z1) / (z2 - z1 + h), (1, 2): h / (z2 - z1 + h)})),
            ("xi-(2,1)", xm[(2, 1)], vec({(2, 1): 1})),
            ("xi-(1,2)", xm[(1, 2)], vec({(1, 2): (z1 - z2) / (z1 - z2 + h), (2, 1): h / (z1 - z2 + h)})),
        ])

    def orth():
        xp, xm = build_xi("plus", lam, sc), build_xi("minus", lam, sc)
        idx = enumerate_indices(lam)
        for I in idx:
            Q, R = structure_scalars(I, sc)
            for J in idx:
                s = shapovalov(xp[I.word], xm[J.word])
                if s != (R / Q if I == J else 0):
                    return f"S(xi+_{I.word}, xi-_{J.word}) = {s}"
        return None

    yield _check("xi-printed", "AC1:xi-examples", printed)
    yield _check(f"xi-orthogonality{lam.parts}", "AC2:orthogonality", orth)


def suite_bethe_commute(lam, sc, cfg):
    for sign in ("plus", "minus"):
        yield _check(f"bethe-commute-{sign}{lam.parts}", "AC4:bethe-commutativity",
                     lambda sign=sign: bethe_generators(sign, lam, sc).check_commutative())


def suite_flatness(lam, sc, cfg):
    scq = _sym_q(sc)
    for kind in ("k", "k_plus", "k_minus"):
        for sign in ("plus", "minus"):
            def run(kind=kind, sign=sign):
                rep = flatness_check(sign, kind, lam, scq)
                return None if rep.ok else rep.failure
            yield _check(f"flatness-{kind}-{sign}{lam.parts}", "AC10:flatness", run)


def suite_cohomology_examples(lam, sc, cfg):
    def integrals():
        L, s, z1, z2, h = _two_sites()
        one, gam = class_from_poly(L, 1, s), class_from_poly(L, s.gamma(1, 1), s)
        zz = (z1 - z2 + h) * (z2 - z1 + h)
        return _compare([
            ("int [1]", integrate("fl", one), s.zero),
            ("int [g11]", integrate("fl", gam), s.const(-1)),
            ("int~ [1]", integrate("tfl", one), 2 / zz),
            ("int~ [g11]", integrate("tfl", gam), (z1 + z2 - h) / zz),
        ])

    def nu_mu():
        L, s, z1, z2, h = _two_sites()
        one, gam = class_from_poly(L, 1, s), class_from_poly(L, s.gamma(1, 1), s)
        v12, v21 = WVector.basis(L, s.reg, (1, 2)), WVector.basis(L, s.reg, (2, 1))
        upper = FieldMatrix([[z1, h], [0, z2]], registry=s.reg)
        lower = FieldMatrix([[z1, 0], [h, z2]], registry=s.reg)
        return _compare([
            ("nu+ 1", nu_map("plus", one), v12 + v21),
            ("nu+ g11", nu_map("plus", gam), v12 * (z1 + h) + v21 * z2),
            ("nu= 1", nu_map("eq", one), (v12 - v21) / (z1 - z2 - h)),
            ("nu= g11", nu_map("eq", gam), (v12 * (z1 - h) - v21 * z2) / (z1 - z2 - h)),
            ("nu- 1", nu_map("minus", one), (v12 - v21) / (z1 - z2 + h)),
            ("nu- g11", nu_map("minus", gam), (v12 * z1 - v21 * (z2 - h)) / (z1 - z2 + h)),
            ("mu+ g11", mu_map("plus", gam).matrix, upper),
            ("mu= g11", mu_map("eq", gam).matrix, upper),
            ("mu- g11", mu_map("minus", gam).matrix, lower),
        ])

    def regular():
        classes = HBasis(lam, sc).classes
        for kind in ("plus", "eq", "minus"):
            for f, g in product(classes, repeat=2):
                if mu_map(kind, f).apply(nu_map(kind, g)) != nu_map(kind, f * g):
                    return f"mu{kind}(f) nu(g) != nu(fg) for f = {f.poly}, g = {g.poly}"
        return None

    yield _check("cohomology-integrals", "AC5:cohomology-examples", integrals)
    yield _check("cohomology-nu-mu", "AC5:cohomology-examples", nu_mu)
    yield _check(f"regular-representation{lam.parts}", "AC6:regular-representation", regular)


def suite_wronskian(lam, sc, cfg):
    def printed():
        L, s, z1, z2, h = _two_sites()
        g11, g21 = s.gamma(1, 1), s.gamma(2, 1)
        q1, q2 = s.q
        w = wronskian(L, s)
        return _compare([
            ("u^1", w.relations[1], -(g11 + g21 - z1 - z2)),
            ("u^0", w.relations[0], g11 * g21 + q2 / (q1 - q2) * h * (g11 - g21 + h) - z1 * z2),
        ])

    def relation():
        rep = hk_relation_check(lam, sc)
        return None if rep.ok else rep.first_failure

    yield _check("wronskian-printed", "AC7:wronskian-presentation", printed)
    yield _check(f"wronskian-relations{lam.parts}", "AC7:wronskian-presentation", relation)


def suite_quantum_products(lam, sc, cfg):
    def printed_pairings():
        L, s, z1, z2, h = _two_sites()
        g = s.gamma(1, 1)
        q1, q2 = s.q
        zz = (z1 - z2 + h) * (z1 - z2 - h)
        return _compare([
            ("(1,1)", pairings("round", 1, 1, L, s), s.zero),
            ("(1,g)", pairings("round", 1, g, L, s), s.one),
            ("(g,g)", pairings("round", g, g, L, s), z1 + z2 + 2 * h * q2 / (q1 - q2)),
            ("<1,1>", pairings("angle", 1, 1, L, s), 2 / zz),
            ("<1,g>", pairings("angle", 1, g, L, s), (z1 + z2 - h) / zz),
            ("<g,g>", pairings("angle", g, g, L, s), (z1 ** 2 + z2 ** 2 - h * (z1 + z2)) / zz),
        ])

    def frobenius():
        cl = HBasis(lam, sc).classes
        for f, g, k in product(cl[:3], repeat=3):
            a = integrate("tfl", quantum_mul("bullet", f, g) * k)
            b = integrate("tfl", f * quantum_mul("bullet", g, k))
            if a != b:
                return f"int~ (f.g)k != int~ f(g.k) at f = {f.poly}, g = {g.poly}, k = {k.poly}"
        return None

    def quadratic():
        red = reduced_x_bullet()
        M, h, q, z = red.matrix, red.h, red.q, red.z
        I = FieldMatrix.identity(red.sc.reg, 2)
        lhs = M @ M - (I * h + M) * (4 * h * q / (1 - q))
        if lhs != I * z ** 2:
            return f"(x.)^2 - 4hq/(1-q)(h + x.) = {lhs}"
        return None if M == red.closed_form else "x. differs from x - 2hq/(1-q)(tau(s) - 1)"

    def cup_limit():
        scq = _sym_q(sc)
        cl = HBasis(lam, scq).classes
        for kind in ("star", "bullet"):
            for f, g in product(cl, repeat=2):
                lim = [q_to_zero(x, scq) for x in quantum_mul(kind, f, g).vector]
                if lim != (f * g).vector:
                    return f"{kind}: f = {f.poly}, g = {g.poly} does not tend to the cup product"
        return None

    yield _check("pairings-printed", "AC8:pairings", printed_pairings)
    yield _check(f"frobenius{lam.parts}", "AC8:pairings", frobenius)
    yield _check("reduced-quadratic", "AC9:quantum-product", quadratic)
    yield _check(f"cup-limit{lam.parts}", "AC9:quantum-product", cup_limit)


def _full_flag_scalars(lam, sc, cfg):
    n = lam.n
    if lam.N == n and all(p == 1 for p in lam.parts):
        return sc
    z, h, q = cfg.get("z"), cfg.get("h"), cfg.get("q")
    if q is not None and len(q) != n:
        q = None
    if cfg.get("symbolic"):
        return Scalars(n, n, z=z, h=h, q=q)
    return Scalars.specialized(n, n, z=z, h=h, q=q if q is not None else "default")


def suite_calogero_moser(lam, sc, cfg):
    def run():
        s = _full_flag_scalars(lam, sc, cfg)
        rep = cm_identities(s.n, s)
        return None if rep.ok else f"{rep.identity}: {rep.first_failure}"
    yield _check(f"calogero-moser-n{lam.n}", "AC12:calogero-moser", run)


def suite_limit_h(lam, sc, cfg):
    def run():
        if any(p == 0 for p in lam.parts):
            raise Skip("the limit needs every block nonempty")
        rep = limit_h_inf(lam)
        return None if rep.ok else rep.first_failure
    yield _check(f"limit-h{lam.parts}", "AC13:h-infinity-limit", run)


def suite_hecke(lam, sc, cfg):
    def relations():
        s = _full_flag_scalars(lam, sc, cfg)
        for sign in ("plus", "minus"):
            hecke_tau(sign, s.n, s)
        return None

    def identification():
        s = _full_flag_scalars(lam, sc, cfg)
        for sign in ("plus", "minus"):
            rep = hecke_vs_bethe(sign, s.n, s)
            if not rep.ok:
                return f"{sign}: {rep.first_failure}"
        return None

    def akz():
        s = _sym_q(_full_flag_scalars(lam, sc, cfg))
        for sign in ("plus", "minus"):
            rep = hecke_tau(sign, s.n, s).akz_flatness()
            if not rep.ok:
                return f"{sign}: {rep.failure}"
        return None

    yield _check(f"hecke-relations-n{lam.n}", "AC14:hecke", relations)
    yield _check(f"hecke-identification-n{lam.n}", "AC14:hecke", identification)
    yield _check(f"affine-kz-flatness-n{lam.n}", "AC14:hecke", akz)


def suite_idempotents(lam, sc, cfg):
    for z, h, q in PANELS["idempotents"]:
        yield _check(f"idempotents(z={z},h={h},q={q})", "AC15:idempotents",
                     lambda z=z, h=h, q=q: bethe_idempotents_2x2(z, h, q).check() or "w_i.w_j != delta_ij w_i")


def suite_qde(lam, sc, cfg):
    D = cfg.get("order") or 20
    for z, h, k in PANELS["qde"]:
        for which in ("J1", "J2"):
            def run(z=z, h=h, k=k, which=which):
                rep = qde_series_check(z, h, k, D, which)
                return None if rep.ok else rep.first_failure
            yield _check(f"qde-{which}(z={z},h={h},kappa={k},D={D})", "AC16:quantum-differential-equation", run)


SUITES = {
    "xi": suite_xi,
    "bethe-commute": suite_bethe_commute,
    "flatness": suite_flatness,
    "cohomology-examples": suite_cohomology_examples,
    "wronskian": suite_wronskian,
    "quantum-products": suite_quantum_products,
    "calogero-moser": suite_calogero_moser,
    "limit-h": suite_limit_h,
    "hecke": suite_hecke,
    "idempotents": suite_idempotents,
    "qde": suite_qde,
}


def run_suite(name, lam, sc, cfg=None):
    if name not in SUITES:
        raise KeyError(name)
    return list(SUITES[name](lam, sc, cfg or {}))
