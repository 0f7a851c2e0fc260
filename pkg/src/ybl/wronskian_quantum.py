"""The discrete Wronskian, the algebra H^q_lambda and quantum multiplication on H_lambda.

H^q_lambda is modelled by its image in End(V_lambda): a block-symmetric
polynomial f in the Chern roots (named g{p}_{k} as in the cohomology module)
is written in elementary symmetric functions, and each sigma_r(Gamma_p) is
sent to an operator recovered triangularly from the images S_{p,s} of the
elements U_{p,s}.  The Wronskian presentation is then checked, not used.
"""

import time
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from flint import fmpq, fmpq_mat

from .cohomology import CohomClass, nu_map, nu_preimage, to_cohomology
from .exact_algebra import (
    DEFAULT_H, DEFAULT_Z, FieldMatrix, RatFunc, Scalars, SingularMatrixError, default_q,
    expand_at_infinity, limit_at_zero, to_fraction,
)
from .weight_space import Composition, shapovalov, v_eq, v_minus, v_plus
from .yangian import WOperator, bethe_generators, connection_flatness, dynamical_hamiltonians

__all__ = [
    "Report", "LimitReport", "WronskianData", "QuantumAlgebra", "BetheElement", "Connection",
    "wronskian", "to_elementary", "mu_k", "hk_relation_check", "beta_transport",
    "quantum_operator", "quantum_mul", "chern_sum_operator", "pairings", "q_to_zero",
    "cm_matrix", "cm_identities", "limit_h_inf", "quantum_connection",
]


@dataclass
class Report:
    identity: str
    status: str
    first_failure: str = None
    elapsed: float = 0.0

    @property
    def ok(self):
        return self.status == "pass"

    def to_json(self):
        out = {"identity": self.identity, "status": self.status, "elapsed": round(self.elapsed, 6)}
        if self.first_failure is not None:
            out["firstFailure"] = self.first_failure
        return out


@dataclass
class LimitReport(Report):
    det_m: RatFunc = None
    difference: RatFunc = None
    scalars: Scalars = field(default=None, repr=False)


def _report(identity, t0, failure=None):
    return Report(identity, "fail" if failure else "pass", failure, time.perf_counter() - t0)


# -- the Wronskian

def _vandermonde(sc):
    v = sc.one
    for i, j in combinations(range(sc.N), 2):
        v = v * (sc.q[i] - sc.q[j])
    return v


def _entry(lam, sc, i, j, kap):
    """kap^{N-j} prod_k (u - gamma_{i,k} + h (i - j)); row i = 0 has no roots."""
    e = kap ** (lam.N - j) if lam.N - j >= 0 else sc.one / kap ** (j - lam.N)
    size = lam.parts[i - 1] if i >= 1 else 0
    for k in range(1, size + 1):
        e = e * (sc.u - sc.gamma(i, k) + sc.h * (i - j))
    return e


class WronskianData:
    """W(u), W^(u, x) and the elements W_{p,s}, U_{i,s} as polynomials in the Chern roots."""

    def __init__(self, lam, sc):
        self.lam, self.sc = lam, sc
        N, reg = lam.N, sc.reg
        self.vandermonde = _vandermonde(sc)
        rows = [[_entry(lam, sc, i, j, sc.q[i - 1]) for j in range(1, N + 1)] for i in range(1, N + 1)]
        self.W = FieldMatrix(rows, registry=reg).det()
        x = sc.var("x")
        rows = [[_entry(lam, sc, i, j, x if i == 0 else sc.q[i - 1]) for j in range(N + 1)]
                for i in range(N + 1)]
        self.W_hat = FieldMatrix(rows, registry=reg).det()
        target = self.vandermonde
        for za in sc.z:
            target = target * (sc.u - za)
        self.target = target
        diff = (self.W - target) / self.vandermonde
        cs = diff.num.coefficients_in("u")
        cs += [cs[0] * 0] * (lam.n + 1 - len(cs))
        if not cs[lam.n].is_zero():
            raise ArithmeticError("W(u)/V is not monic of degree n")
        den = RatFunc(reg, diff.den.raw)
        self.relations = [RatFunc(reg, c.raw) / den for c in cs[:lam.n]]
        self._series = {}

    def _x_series(self, k, order):
        key = (k, order)
        if key not in self._series:
            reg = self.sc.reg
            num = self.W_hat.num.coefficients_in("x")
            c = num[k].raw if k < len(num) else reg._zero
            wn = self.W.num.raw
            f = RatFunc(reg, c * self.W.den.raw, wn * self.W_hat.den.raw, normalize=False)
            self._series[key] = expand_at_infinity(f, "u", order)
        return self._series[key]

    def W_ps(self, p, s):
        if not (1 <= p <= self.lam.N) or s < 1:
            raise ValueError(f"no element W_({p},{s})")
        a = self._x_series(self.lam.N - p, s)[s]
        return a * (-1) ** p / self.sc.h

    def U(self, i, s):
        N, q = self.lam.N, self.sc.q
        den = self.sc.one
        for j in range(1, N + 1):
            if j != i:
                den = den * (q[i - 1] - q[j - 1])
        acc = self.sc.zero
        for p in range(1, N + 1):
            e = N - p - 1
            w = q[i - 1] ** e if e >= 0 else self.sc.one / q[i - 1] ** (-e)
            acc = acc + self.W_ps(p, s) * w * (-1) ** (p - 1)
        return acc / den


@lru_cache(maxsize=None)
def wronskian(lam, sc):
    return WronskianData(lam, sc)


# -- block-symmetric polynomials in elementary symmetric form

def _gamma_slots(lam, sc):
    return [(p, k, sc.reg.index(f"g{p}_{k}")) for p in range(1, lam.N + 1)
            for k in range(1, lam.parts[p - 1] + 1)]


def to_elementary(f, lam, sc):
    """{((p, k), e), ...} -> coefficient with f = sum coef prod e_k(Gamma_p)^e.

    Coefficients are rational in z, h, q and free of Chern roots.
    """
    reg = sc.reg
    f = f if isinstance(f, RatFunc) else sc.const(f)
    slots = _gamma_slots(lam, sc)
    gidx = [i for _, _, i in slots]
    allowed = set(gidx)
    for name in f.free_names():
        if reg.role(name) == "gamma" and reg.index(name) not in allowed:
            raise ValueError(f"{name} is not a Chern root of {lam}")
    for e in f._d.to_dict():
        if any(e[i] for i in gidx):
            raise ValueError("denominator depends on the Chern roots")
    terms = {}

    def add(raw, sign):
        for e, c in raw.to_dict().items():
            g = tuple(e[i] for i in gidx)
            rest = tuple(0 if i in allowed else x for i, x in enumerate(e))
            bucket = terms.setdefault(g, {})
            bucket[rest] = bucket.get(rest, 0) + sign * c
            if bucket[rest] == 0:
                del bucket[rest]
            if not bucket:
                del terms[g]

    add(f._n, 1)
    elem = {}
    for p in range(1, lam.N + 1):
        vars_ = [reg.ctx.gens()[reg.index(f"g{p}_{k}")] for k in range(1, lam.parts[p - 1] + 1)]
        e = [reg._one] + [reg._zero] * len(vars_)
        for v in vars_:
            for m in range(len(vars_), 0, -1):
                e[m] = e[m] + e[m - 1] * v
        for k in range(1, len(vars_) + 1):
            elem[(p, k)] = e[k]
    form = {}
    while terms:
        lead = max(terms)
        mono, pos = [], 0
        for p in range(1, lam.N + 1):
            a = list(lead[pos:pos + lam.parts[p - 1]]) + [0]
            pos += lam.parts[p - 1]
            for k in range(1, len(a)):
                if a[k - 1] < a[k]:
                    raise ValueError(f"polynomial is not symmetric in block {p}")
                if a[k - 1] > a[k]:
                    mono.append(((p, k), a[k - 1] - a[k]))
        coef = reg.ctx.from_dict(terms[lead])
        prod = coef
        for key, ex in mono:
            prod = prod * elem[key] ** ex
        add(prod, -1)
        form[tuple(mono)] = RatFunc(reg, coef, f._d)
    return form


# -- H^q_lambda inside End(V_lambda)

def _probe(sc):
    m = {}
    if sc.symbolic_z:
        m.update({f"z{a}": DEFAULT_Z[a - 1] for a in range(1, sc.n + 1)})
    if sc.symbolic_h:
        m["h"] = DEFAULT_H
    if sc.symbolic_q:
        m.update({f"q{i}": v for i, v in enumerate(default_q(sc.N), 1)})
    return m


def _numeric(x, probe):
    fr = to_fraction(x.substitute(probe).constant_value())
    return fmpq(fr.numerator, fr.denominator)


@dataclass
class Frame:
    """Monomials m_j in the S_{i,s} whose images m_j v span V_lambda."""

    labels: list
    polys: list
    ops: list
    matrix: FieldMatrix
    _inv: FieldMatrix = None

    @property
    def inverse(self):
        if self._inv is None:
            self._inv = self.matrix.inverse()
        return self._inv


class QuantumAlgebra:
    """mu^{q,kind}: H^q_lambda -> End(V_lambda) for kind in plus, eq, minus."""

    def __init__(self, kind, lam, sc):
        if kind not in ("plus", "eq", "minus"):
            raise ValueError(f"unknown kind {kind!r}")
        self.kind, self.lam, self.sc = kind, lam, sc
        self.sign = "minus" if kind == "minus" else "plus"
        self.gens = bethe_generators(self.sign, lam, sc)
        self.wr = wronskian(lam, sc)
        self.cyclic = {"plus": v_plus, "eq": v_eq, "minus": v_minus}[kind](lam, sc)
        self.one = WOperator.identity(lam, sc.reg)
        self.sigma = {}
        for s in range(2, max(lam.parts) + 2):
            for i in range(1, lam.N + 1):
                if lam.parts[i - 1] >= s - 1:
                    self._recover(i, s)
        self._frame = None

    def _recover(self, i, s):
        form = to_elementary(self.wr.U(i, s), self.lam, self.sc)
        key = (((i, s - 1), 1),)
        lead = form.pop(key, None)
        if lead is None or not lead.is_constant() or lead.is_zero():
            raise ArithmeticError(f"U_({i},{s}) is not triangular in sigma_{s - 1}")
        self.sigma[(i, s - 1)] = (self.gens.S[(i, s)] - self._evaluate(form)) / lead

    def _evaluate(self, form):
        acc = self.one * 0
        for mono, coef in form.items():
            term = self.one * coef
            for key, ex in mono:
                if key not in self.sigma:
                    raise ArithmeticError(f"sigma_{key[1]} of block {key[0]} needed before it is known")
                for _ in range(ex):
                    term = term @ self.sigma[key]
            acc = acc + term
        return acc

    @property
    def table(self):
        """Images of the generators W_{p,s} and U_{i,s}, s = 1..s_max."""
        out = {}
        for (p, s), op in self.gens.B.items():
            if s >= 1:
                out[("W", p, s)] = op
        for (i, s), op in self.gens.S.items():
            out[("U", i, s)] = op
        return out

    def image(self, f):
        if isinstance(f, BetheElement):
            f = f.poly
        f = self.sc.specialize(f) if not isinstance(f, RatFunc) else f.substitute(self.sc.specialization())
        return self._evaluate(to_elementary(f, self.lam, self.sc))

    def nu(self, f):
        return self.image(f).apply(self.cyclic)

    @property
    def frame(self):
        if self._frame is None:
            self._frame = self._build_frame()
        return self._frame

    def _build_frame(self):
        lam, sc = self.lam, self.sc
        gens = [(i, s) for i in range(1, lam.N + 1) for s in range(2, lam.parts[i - 1] + 2)]
        probe = _probe(sc)
        labels, polys, ops, rows = [], [], [], []
        top = sum(a * b for i, a in enumerate(lam.parts) for b in lam.parts[i + 1:])
        for degree in range(top + 1):
            for mono in _weighted_monomials(gens, degree):
                op, poly = self.one, sc.one
                for (i, s), ex in mono:
                    for _ in range(ex):
                        op = op @ self.gens.S[(i, s)]
                        poly = poly * self.wr.U(i, s)
                vec = op.apply(self.cyclic).column()
                trial = rows + [[_numeric(x, probe) for x in vec]]
                if fmpq_mat(len(trial), lam.d, [v for r in trial for v in r]).rank() == len(trial):
                    rows = trial
                    labels.append(mono)
                    polys.append(poly)
                    ops.append(op)
                    if len(labels) == lam.d:
                        cols = [o.apply(self.cyclic).column() for o in ops]
                        m = FieldMatrix._raw(sc.reg, [list(r) for r in zip(*cols)])
                        return Frame(labels, polys, ops, m)
        raise SingularMatrixError(f"cyclic vector images do not span V_{lam.parts}")

    def element(self, vector):
        """The element e of H^q with nu(e) = vector."""
        coords = (self.frame.inverse @ vector.as_matrix()).col(0)
        op = self.one * 0
        for c, o in zip(coords, self.frame.ops):
            if not c.is_zero():
                op = op + o * c
        return BetheElement(self, coords, op, vector)


def _weighted_monomials(gens, degree):
    """Tuples ((gen, e), ...) with sum e * (s - 1) == degree."""
    def rec(idx, left):
        if idx == len(gens):
            if left == 0:
                yield ()
            return
        w = gens[idx][1] - 1
        for e in range(left // w, -1, -1):
            for rest in rec(idx + 1, left - e * w):
                yield (((gens[idx], e),) if e else ()) + rest
    yield from rec(0, degree)


@dataclass
class BetheElement:
    algebra: QuantumAlgebra
    coords: list
    operator: WOperator
    vector: object

    @property
    def poly(self):
        acc = self.algebra.sc.zero
        for c, p in zip(self.coords, self.algebra.frame.polys):
            if not c.is_zero():
                acc = acc + p * c
        return acc

    def coordinates_in(self, polys):
        """Coefficients a_j with sum a_j polys_j equal to this element."""
        alg = self.algebra
        cols = [alg.nu(p).column() for p in polys]
        m = FieldMatrix._raw(alg.sc.reg, [list(r) for r in zip(*cols)])
        return m.solve(self.vector.as_matrix()).col(0)

    def to_json(self):
        return {"kind": self.algebra.kind, "lambda": list(self.algebra.lam.parts),
                "frame": [[[list(g), e] for g, e in m] for m in self.algebra.frame.labels],
                "coordinates": [c.to_json() for c in self.coords]}


@lru_cache(maxsize=None)
def mu_k(kind, lam, sc):
    return QuantumAlgebra(kind, lam, sc)


def hk_relation_check(lam, sc, kinds=("plus", "minus"), target_z=None):
    """Substitute the operator images of the Chern roots into W(u) and compare with V prod (u - z_a)."""
    t0 = time.perf_counter()
    wr = wronskian(lam, sc)
    target = wr.target
    if target_z is not None:
        target = wr.vandermonde
        for za in target_z:
            target = target * (sc.u - za)
    num_w = wr.W.num.coefficients_in("u")
    num_t = (target * wr.W.den).num.coefficients_in("u") if not wr.W.den.is_one() else target.num.coefficients_in("u")
    den = RatFunc(sc.reg, wr.W.den.raw)
    for kind in kinds:
        alg = mu_k(kind, lam, sc)
        for m in range(max(len(num_w), len(num_t))):
            w = RatFunc(sc.reg, num_w[m].raw) / den if m < len(num_w) else sc.zero
            t = RatFunc(sc.reg, num_t[m].raw) / den if m < len(num_t) else sc.zero
            diff = alg.image(w) - alg.one * t
            if not diff.is_zero():
                return _report("W(u) = V prod(u - z_a)", t0, f"{kind}: coefficient of u^{m}, entry {diff.first_nonzero()}")
    return _report("W(u) = V prod(u - z_a)", t0)


# -- transport to H_lambda and quantum products

_PRODUCT_SIGN = {"star": "plus", "bullet": "minus"}


def beta_transport(kind, c):
    """beta(c) = (nu^{q,kind})^{-1} nu^{kind}(c) as an element of H^q_lambda."""
    if kind not in ("plus", "eq", "minus"):
        raise ValueError(f"unknown kind {kind!r}")
    return mu_k(kind, c.lam, c.sc).element(nu_map(kind, c))


def _product_kind(kind):
    if kind not in _PRODUCT_SIGN:
        raise ValueError(f"unknown product {kind!r}")
    return _PRODUCT_SIGN[kind]


def quantum_operator(kind, f):
    """The operator g -> f * g (star) or f . g (bullet) on restriction vectors."""
    sign = _product_kind(kind)
    return to_cohomology(sign, beta_transport(sign, f).operator, f.sc)


def quantum_mul(kind, f, g):
    sign = _product_kind(kind)
    op = beta_transport(sign, f).operator
    return nu_preimage(sign, op.apply(nu_map(sign, g)), f.sc)


def chern_sum_operator(kind, i, lam, sc):
    """(gamma_{i,1} + ... + gamma_{i,lam_i}) acting by the product, via the dynamical Hamiltonians."""
    sign = _product_kind(kind)
    fam = "k_plus" if kind == "star" else "k_minus"
    return to_cohomology(sign, dynamical_hamiltonians(sign, fam, lam, sc)[i - 1], sc)


def q_to_zero(obj, sc):
    """Limit q_{i+1}/q_i -> 0 for all i, taken along q_i = x^{i-1}."""
    if not sc.symbolic_q:
        raise ValueError("the q -> 0 limit needs symbolic q")
    x = sc.var("x")
    path = {f"q{i}": x ** (i - 1) for i in range(1, sc.N + 1)}

    def lim(f):
        return limit_at_zero(f.substitute(path), "x")

    if isinstance(obj, RatFunc):
        return lim(obj)
    if isinstance(obj, WOperator):
        return obj.map(lim)
    if isinstance(obj, CohomClass):
        return CohomClass.from_vector(obj.lam, obj.sc, [lim(v) for v in obj.vector])
    raise TypeError(f"cannot take the limit of {type(obj).__name__}")


def pairings(kind, f, g, lam, sc):
    """(f, g) = S(nu^{q+} f, nu^{q-} g) for 'round', <f, g> = S(nu^{q=} f, nu^{q-} g) for 'angle'."""
    left = {"round": "plus", "angle": "eq"}.get(kind)
    if left is None:
        raise ValueError(f"unknown pairing {kind!r}")
    return shapovalov(mu_k(left, lam, sc).nu(f), mu_k("minus", lam, sc).nu(g))


# -- full flags: the Calogero-Moser matrix

def cm_matrix(n, sc):
    """C with C_ii = x_i - h sum_{j<i} q_i/(q_i-q_j) - h sum_{j>i} q_j/(q_i-q_j), C_ij = h q_i/(q_i-q_j)."""
    q, h = sc.q, sc.h
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if i != j:
                row.append(h * q[i] / (q[i] - q[j]))
                continue
            c = sc.gamma(i + 1, 1)
            for k in range(n):
                if k != i:
                    c = c - h * (q[i] if k < i else q[k]) / (q[i] - q[k])
            row.append(c)
        rows.append(row)
    return FieldMatrix(rows, registry=sc.reg)


def _first_coefficient(diff, name):
    for m, c in enumerate(diff.num.coefficients_in(name)):
        if not c.is_zero():
            return f"coefficient of {name}^{m}"
    return None


def cm_identities(n, sc):
    """W(u) = det(u - C) V, W^(u, x) = det((u - C)(x - Q) - h Q) V and rank(CQ - QC - hQ) = 1."""
    t0 = time.perf_counter()
    lam = Composition((1,) * n)
    if sc.N != n or sc.n != n:
        raise ValueError("the Calogero-Moser identities need N = n and lambda = (1, ..., 1)")
    wr = wronskian(lam, sc)
    C = cm_matrix(n, sc)
    u, x, h = sc.u, sc.var("x"), sc.h
    I = FieldMatrix.identity(sc.reg, n)
    Q = FieldMatrix.diag(sc.reg, list(sc.q))
    d1 = wr.W - (I * u - C).det() * wr.vandermonde
    if not d1.is_zero():
        return _report("W(u) = det(u - C) V", t0, _first_coefficient(d1, "u"))
    d2 = wr.W_hat - ((I * u - C) @ (I * x - Q) - Q * h).det() * wr.vandermonde
    if not d2.is_zero():
        return _report("W^(u, x) = det((u - C)(x - Q) - hQ) V", t0, _first_coefficient(d2, "x"))
    probe = _probe(sc)
    probe.update({f"g{i}_1": 2 * i * i + 1 for i in range(1, n + 1) if sc.gamma(i, 1).free_names()})
    K = C @ Q - Q @ C - Q * h
    r = K.substitute(probe).rank()
    if r != 1:
        return _report("rank(CQ - QC - hQ) = 1", t0, f"rank {r}")
    return _report("Calogero-Moser identities", t0)


# -- the h -> infinity limit

def limit_h_inf(lam, r=None):
    """W V^{-1} - det M(u) has negative degree in h after q_{i+1} = r_i q_i h^{-lam_i-lam_{i+1}}."""
    t0 = time.perf_counter()
    if any(p == 0 for p in lam.parts):
        raise ValueError("the h -> infinity limit needs every block nonempty")
    N = lam.N
    names = tuple(f"r{i}" for i in range(1, N))
    sc = Scalars(lam.n, N, extra=names)
    wr = wronskian(lam, sc)
    h = sc.h
    path = {"q1": sc.one}
    cur = sc.one
    for i in range(1, N):
        cur = cur * sc.var(names[i - 1]) / h ** (lam.parts[i - 1] + lam.parts[i])
        path[f"q{i + 1}"] = cur
    ratio = (wr.W / wr.vandermonde).substitute(path)
    rows = [[sc.zero] * N for _ in range(N)]
    for i in range(N):
        m = sc.one
        for k in range(1, lam.parts[i] + 1):
            m = m * (sc.u - sc.gamma(i + 1, k))
        rows[i][i] = m
        if i + 1 < N:
            rows[i][i + 1] = sc.const((-1) ** lam.parts[i])
            rows[i + 1][i] = sc.var(names[i])
    det_m = FieldMatrix._raw(sc.reg, rows).det()
    if r is not None:
        vals = dict(zip(names, r))
        ratio, det_m = ratio.substitute(vals), det_m.substitute(vals)
    diff = ratio - det_m
    failure = None
    if not diff.is_zero() and diff.num.degree("h") >= diff.den.degree("h"):
        failure = f"h-degree {diff.num.degree('h') - diff.den.degree('h')} is not negative"
    rep = _report("W V^-1 -> det M(u)", t0, failure)
    return LimitReport(rep.identity, rep.status, rep.first_failure, rep.elapsed, det_m, diff, sc)


# -- quantum connections

@dataclass
class Connection:
    kind: str
    matrices: list
    flatness: object
    kappa: object = None


def quantum_connection(kind, lam, sc, kappa=None):
    """Matrices of (gamma_{i,1} + ... ) star or bullet on H_lambda and the flatness of kappa q_i d/dq_i - them."""
    mats = [chern_sum_operator(kind, i, lam, sc) for i in range(1, lam.N + 1)]
    return Connection(kind, mats, connection_flatness(mats, sc), kappa)
