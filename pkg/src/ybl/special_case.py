"""Full flags: N = n, lambda = (1, ..., 1).

The degenerate affine Hecke algebra acts on restriction vectors by tau^+ or
tau^-; its elements Y_i reproduce the dynamical Hamiltonians on H_lambda.
For N = n = 2 the reduced algebra (z1 + z2 = 0) is two-dimensional with
basis 1, x where x = x1 - x2; there we build the Bethe-ansatz idempotents
over Q(sqrt D) and check the residue series of the quantum differential
equation order by order.
"""

import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .cohomology import HOperator, class_from_poly, to_cohomology
from .exact_algebra import FieldMatrix, QuadExtScalar, RatFunc, Scalars, expand_at_infinity, to_fraction
from .weight_space import Composition
from .wronskian_quantum import Report, chern_sum_operator
from .yangian import connection_flatness, dynamical_hamiltonians

__all__ = [
    "HeckeAction", "hecke_tau", "hecke_vs_bethe", "ReducedAlgebra", "reduced_x_bullet",
    "Idempotents", "bethe_idempotents_2x2", "QDEReport", "qde_coefficients", "qde_series_check",
]


def _sign_value(sign):
    if sign not in ("plus", "minus"):
        raise ValueError(f"unknown sign {sign!r}")
    return 1 if sign == "plus" else -1


class HeckeAction:
    """tau^{sign} of y_i, c and s_i on restriction vectors of the full flag variety."""

    def __init__(self, sign, n, sc):
        e = _sign_value(sign)
        if sc.n != n or sc.N != n:
            raise ValueError(f"full flags need N = n = {n}, got N = {sc.N}, n = {sc.n}")
        self.sign, self.n, self.sc = sign, n, sc
        self.lam = lam = Composition((1,) * n)
        reg, h = sc.reg, sc.h
        self.c = h * e
        words = lam.words
        pos = {w: k for k, w in enumerate(words)}

        def x(w, i):
            return sc.z[w.index(i)]

        self.y = {i: HOperator(lam, lam, FieldMatrix.diag(reg, [x(w, i) for w in words]), "H")
                  for i in range(1, n + 1)}
        self.s = {}
        for i in range(1, n):
            rows = [[sc.zero] * lam.d for _ in range(lam.d)]
            for r, w in enumerate(words):
                d = x(w, i) - x(w, i + 1)
                sw = tuple(i + 1 if a == i else i if a == i + 1 else a for a in w)
                rows[r][pos[sw]] = (d - h * e) / d
                rows[r][r] = rows[r][r] + h * e / d
            self.s[i] = HOperator(lam, lam, FieldMatrix._raw(reg, rows), "H")
        self.one = HOperator(lam, lam, FieldMatrix.identity(reg, lam.d), "H")
        self.check_relations()

    def transposition(self, i, j):
        """tau(s_{i,j}) = s_{j-1} ... s_{i+1} s_i s_{i+1} ... s_{j-1}."""
        if i == j or not (1 <= i <= self.n and 1 <= j <= self.n):
            raise ValueError(f"bad transposition ({i}, {j})")
        i, j = min(i, j), max(i, j)
        t = self.s[i]
        for k in range(i + 1, j):
            t = self.s[k] @ t @ self.s[k]
        return t

    def Y(self, i):
        """tau(Y_i) = x_i + c sum_{j<i} q_i/(q_i - q_j) s_ij + c sum_{j>i} q_j/(q_i - q_j) s_ij."""
        q = self.sc.q
        out = self.y[i]
        for j in range(1, self.n + 1):
            if j != i:
                num = q[i - 1] if j < i else q[j - 1]
                out = out + self.transposition(i, j) * (self.c * num / (q[i - 1] - q[j - 1]))
        return out

    def check_relations(self):
        n, s, y = self.n, self.s, self.y
        for i in range(1, n):
            if s[i] @ y[i] - y[i + 1] @ s[i] != self.one * self.c:
                raise ArithmeticError(f"s_{i} y_{i} - y_{i + 1} s_{i} != c")
            for j in range(1, n + 1):
                if j not in (i, i + 1) and s[i].commutator(y[j]) != self.one * 0:
                    raise ArithmeticError(f"s_{i} does not commute with y_{j}")
            if s[i] @ s[i] != self.one:
                raise ArithmeticError(f"s_{i}^2 != 1")
            for j in range(i + 1, n):
                if j == i + 1:
                    if s[i] @ s[j] @ s[i] != s[j] @ s[i] @ s[j]:
                        raise ArithmeticError(f"braid relation fails for s_{i}, s_{j}")
                elif s[i].commutator(s[j]) != self.one * 0:
                    raise ArithmeticError(f"s_{i} and s_{j} do not commute")
        return True

    def akz_flatness(self):
        """Flatness of kappa q_i d/dq_i - tau(Y_i); needs symbolic q."""
        return connection_flatness([self.Y(i) for i in range(1, self.n + 1)], self.sc)


def hecke_tau(sign, n, sc=None):
    return HeckeAction(sign, n, Scalars.specialized(n, n) if sc is None else sc)


def hecke_vs_bethe(sign, n, sc=None):
    """rho^{sign}(X^k_i) = tau^{sign}(Y_i) for i = 1..n, plus sum Y_i = sum y_i."""
    t0 = time.perf_counter()
    act = hecke_tau(sign, n, sc)
    sc, lam = act.sc, act.lam
    xs = dynamical_hamiltonians(sign, "k", lam, sc)
    ident = f"rho{'+' if sign == 'plus' else '-'}(X^q_i) = tau(Y_i), n = {n}"
    total_Y, total_y = act.one * 0, act.one * 0
    for i in range(1, n + 1):
        Yi = act.Y(i)
        diff = to_cohomology(sign, xs[i - 1], sc) - Yi
        if not diff.is_zero():
            return _report(ident, t0, f"i = {i}: entry {diff.first_nonzero()}")
        total_Y, total_y = total_Y + Yi, total_y + act.y[i]
    if total_Y != total_y:
        return _report(ident, t0, "sum of Y_i differs from sum of y_i")
    return _report(ident, t0)


def _report(identity, t0, failure=None):
    return Report(identity, "fail" if failure else "pass", failure, time.perf_counter() - t0)


# -- the reduced algebra for N = n = 2

@lru_cache(maxsize=None)
def _reduced_symbolic():
    """x. in the basis 1, x of the reduced algebra, entries in z, h, q."""
    sc = Scalars(2, 2, extra=("z", "q"))
    lam = Composition((1, 1))
    xbul = chern_sum_operator("bullet", 1, lam, sc) - chern_sum_operator("bullet", 2, lam, sc)
    tau = hecke_tau("minus", 2, sc).s[1]
    one = class_from_poly(lam, 1, sc)
    x = class_from_poly(lam, sc.gamma(1, 1) - sc.gamma(2, 1), sc)
    B = FieldMatrix._raw(sc.reg, [list(r) for r in zip(one.vector, x.vector)])
    Binv = B.inverse()
    z, q = sc.var("z"), sc.var("q")
    red = {"z1": z / 2, "z2": -z / 2, "q1": 1, "q2": q}
    M = (Binv @ xbul.matrix @ B).substitute(red)
    T = (Binv @ tau.matrix @ B).substitute(red)
    return sc, M, T


@dataclass
class ReducedAlgebra:
    """x. and tau^-(s) on the reduced algebra, basis 1, x; columns are images."""

    sc: Scalars
    matrix: FieldMatrix
    tau_minus: FieldMatrix
    closed_form: FieldMatrix
    z: RatFunc
    h: RatFunc
    q: RatFunc
    values: dict = field(default_factory=dict)

    def entry_values(self):
        """The matrix as Fractions; needs every scalar specialized."""
        return [[to_fraction(self.matrix[i, j].constant_value()) for j in range(2)] for i in range(2)]


def reduced_x_bullet(z=None, h=None, q=None):
    """Quantum multiplication by x on the reduced algebra for N = n = 2.

    Built from the bullet product on H_lambda, restricted to z1 = z/2,
    z2 = -z/2, q1 = 1, q2 = q.  Values left as None stay symbolic.
    """
    sc, M, T = _reduced_symbolic()
    zz, hh, qq = sc.var("z"), sc.h, sc.var("q")
    mult_x = FieldMatrix([[0, zz ** 2], [1, 0]], registry=sc.reg)
    ident = FieldMatrix.identity(sc.reg, 2)
    closed = mult_x - (T - ident) * (2 * hh * qq / (1 - qq))
    vals = {k: v for k, v in (("z", z), ("h", h), ("q", q)) if v is not None}
    if "q" in vals and Fraction(vals["q"]) == 1:
        raise ValueError("q = 1 is excluded")
    mapping = {k: Fraction(v) for k, v in vals.items()}
    if mapping:
        M, T, closed = (m.substitute(mapping) for m in (M, T, closed))
    sub = (lambda f: f.substitute(mapping)) if mapping else (lambda f: f)
    return ReducedAlgebra(sc, M, T, closed, sub(zz), sub(hh), sub(qq), mapping)


# -- Bethe-ansatz idempotents

@dataclass
class Idempotents:
    """w_i = (x - u_j)/(u_i - u_j) in coordinates (1, x) over Q(sqrt delta)."""

    z: Fraction
    h: Fraction
    q: Fraction
    delta: Fraction
    roots: tuple
    w: tuple
    matrix: list

    def apply_x(self, f):
        (a, b), (c, d) = self.matrix
        return (a * f[0] + b * f[1], c * f[0] + d * f[1])

    def product(self, f, g):
        xg = self.apply_x(g)
        return tuple(f[0] * g[k] + f[1] * xg[k] for k in range(2))

    @staticmethod
    def add(f, g):
        return tuple(a + b for a, b in zip(f, g))

    def check(self):
        w = self.w
        for i in range(2):
            for j in range(2):
                want = w[i] if i == j else (0, 0)
                if self.product(w[i], w[j]) != tuple(want):
                    return False
            if self.apply_x(w[i]) != tuple(self.roots[i] * c for c in w[i]):
                return False
        return self.add(*w) == (1, 0)

    def to_json(self):
        def s(x):
            return str(x)
        return {"z": s(self.z), "h": s(self.h), "q": s(self.q), "discriminant": s(self.delta),
                "roots": [s(u) for u in self.roots], "idempotents": [[s(c) for c in w] for w in self.w]}


def bethe_idempotents_2x2(z, h, q):
    """Idempotents of x. from the roots of (u - z)(u + z) = q (u - z + 2h)(u + z + 2h)."""
    z, h, q = Fraction(z), Fraction(h), Fraction(q)
    if q == 1:
        raise ValueError("q = 1 is excluded")
    # (1 - q) u^2 - 4 h q u - (4 h^2 q + (1 - q) z^2) = 0
    a, b, c = 1 - q, -4 * h * q, -(4 * h * h * q + (1 - q) * z * z)
    delta = b * b - 4 * a * c
    if delta == 0:
        raise ValueError("the Bethe equation has a double root")
    r = QuadExtScalar.sqrt(delta)
    u = ((r - b) / (2 * a), (-r - b) / (2 * a))
    w = tuple(((-u[1 - i]) / (u[i] - u[1 - i]), QuadExtScalar(1, 0, delta) / (u[i] - u[1 - i]))
              for i in range(2))
    M = reduced_x_bullet(z, h, q).entry_values()
    res = Idempotents(z, h, q, delta, u, w, M)
    if not res.check():
        raise ArithmeticError("Bethe idempotents fail w_i . w_j = delta_ij w_i")
    return res


# -- the quantum differential equation

def _check_denominators(z, kappa, D, which):
    for i in range(D):
        den = z + kappa * (i + 1) if which == "J1" else kappa * (i + 1) - z
        if den == 0:
            raise ValueError(f"small denominator at i = {i} for {which}")


def qde_coefficients(z, h, kappa, D, which):
    """c_0..c_D of J1 or J2 without the Gamma prefactor, in coordinates (1, x)."""
    if which not in ("J1", "J2"):
        raise ValueError(f"unknown series {which!r}")
    z, h, k = Fraction(z), Fraction(h), Fraction(kappa)
    if k == 0:
        raise ValueError("kappa must be nonzero")
    _check_denominators(z, k, D, which)
    out = []
    prod = Fraction(1)
    for d in range(D + 1):
        if d:
            i = d - 1
            if which == "J1":
                prod *= (h - k * i) * (h - z - k * i) / (z + k * (i + 1))
            else:
                prod *= (h - k * i) * (h + z - k * i) / (k * (i + 1) - z)
        a = z + 2 * k * d if which == "J1" else 2 * k * d - z
        scale = prod * k / (k ** d * factorial(d))
        # (x + h)(a - x) = (a - h) x + a h - z^2, using x^2 = z^2
        out.append((scale * (a * h - z * z), scale * (a - h)))
    return out


def _series(f, D):
    """Taylor coefficients at q = 0 of a function of q alone."""
    reg = f.reg
    t = reg.var("x")
    g = f.substitute({"q": 1 / t})
    return [to_fraction(c.constant_value()) for c in expand_at_infinity(g, "x", D)]


@dataclass
class QDEReport(Report):
    orders: list = field(default_factory=list)
    per_order: list = field(default_factory=list)

    def to_json(self):
        out = super().to_json()
        out["orders"] = self.per_order
        return out


def qde_series_check(z, h, kappa, D, which, exponent_shift=0):
    """-2 kappa (q d/dq + e) sum c_d q^d = x. sum c_d q^d through q^D, e = +-z/(2 kappa)."""
    t0 = time.perf_counter()
    if D < 0:
        raise ValueError("order must be nonnegative")
    c = qde_coefficients(z, h, kappa, D, which)
    z, k = Fraction(z), Fraction(kappa)
    e = (z if which == "J1" else -z) / (2 * k) + exponent_shift
    red = reduced_x_bullet(z=z, h=h)
    ser = [[_series(red.matrix[i, j], D) for j in range(2)] for i in range(2)]
    ident = f"-2 kappa q d/dq {which} = x . {which} through q^{D}"
    orders, per_order, failure = [], [], None
    for d in range(D + 1):
        res = [-2 * k * (d + e) * c[d][r] for r in range(2)]
        for m in range(d + 1):
            for r in range(2):
                res[r] -= ser[r][0][m] * c[d - m][0] + ser[r][1][m] * c[d - m][1]
        ok = res[0] == 0 and res[1] == 0
        per_order.append({"order": d, "status": "pass" if ok else "fail"})
        if ok:
            orders.append(d)
        elif failure is None:
            failure = f"order {d}: residual ({res[0]}, {res[1]})"
    return QDEReport(ident, "fail" if failure else "pass", failure, time.perf_counter() - t0,
                     orders, per_order)
