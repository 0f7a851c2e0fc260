"""Equivariant cohomology H_lambda of T*F_lambda in the fixed-point model.

A class is stored as its vector of restrictions to the torus fixed points
F_I, one value f(z; z_I; h) per index I (canonical word order).  Products are
pointwise and two classes are equal iff their restriction vectors agree, so
the presentation by Chern roots gamma_{p,k} never needs a Groebner basis: a
block-symmetric polynomial is turned into a class by substituting
gamma_{p,k} -> z_{I_p[k]} at every fixed point.
"""

from functools import lru_cache

from flint import fmpq, fmpq_mat

from .exact_algebra import DEFAULT_H, DEFAULT_Z, FieldMatrix, RatFunc, SingularMatrixError, to_fraction
from .weight_space import WVector, build_xi, structure_scalars
from .yangian import WOperator, minor_series, series_operator

__all__ = [
    "CohomClass", "HBasis", "HOperator", "class_from_poly", "f_ps", "integrate",
    "nu_map", "nu_matrix", "nu_preimage", "mu_map", "mu_generator_route", "to_cohomology",
    "rho_on_H", "rho_on_H_closed",
]


class CohomClass:
    """A class in H_lambda given by its restriction vector."""

    __slots__ = ("lam", "sc", "_v", "poly")

    def __init__(self, lam, sc, values, poly=None):
        self.lam, self.sc, self.poly = lam, sc, poly
        reg = sc.reg
        self._v = tuple(_rf(reg, values.get(w, 0)) for w in lam.words)
        missing = set(values) - set(lam.words)
        if missing:
            raise ValueError(f"{sorted(missing)} are not fixed points of {lam}")

    @classmethod
    def from_vector(cls, lam, sc, vector):
        return cls(lam, sc, dict(zip(lam.words, vector)))

    @property
    def vector(self):
        return list(self._v)

    def __getitem__(self, I):
        return self._v[self.lam.position(I)]

    def _check(self, other):
        if self.lam != other.lam or self.sc is not other.sc:
            raise ValueError("classes live in different cohomology rings")

    def __add__(self, other):
        self._check(other)
        return CohomClass.from_vector(self.lam, self.sc, [a + b for a, b in zip(self._v, other._v)])

    def __sub__(self, other):
        self._check(other)
        return CohomClass.from_vector(self.lam, self.sc, [a - b for a, b in zip(self._v, other._v)])

    def __neg__(self):
        return CohomClass.from_vector(self.lam, self.sc, [-a for a in self._v])

    def __mul__(self, other):
        if isinstance(other, CohomClass):
            self._check(other)
            return CohomClass.from_vector(self.lam, self.sc, [a * b for a, b in zip(self._v, other._v)])
        return CohomClass.from_vector(self.lam, self.sc, [a * other for a in self._v])

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, CohomClass):
            return NotImplemented
        return self.lam == other.lam and self._v == other._v

    __hash__ = None

    def is_zero(self):
        return all(x.is_zero() for x in self._v)

    def to_json(self):
        out = {"lambda": list(self.lam.parts),
               "restrictions": [{"index": list(w), "value": x.to_json()} for w, x in zip(self.lam.words, self._v)]}
        if self.poly is not None:
            out["representative"] = self.poly.to_json()
        return out

    def __repr__(self):
        return "CohomClass(" + ", ".join(f"{w}: {x}" for w, x in zip(self.lam.words, self._v)) + ")"


def _rf(reg, x):
    return x if isinstance(x, RatFunc) else RatFunc.const(reg, x)


def _gamma_map(lam, sc, word):
    blocks = [[a for a, c in enumerate(word) if c == p] for p in range(1, lam.N + 1)]
    return {f"g{p}_{k + 1}": sc.z[a] for p, b in enumerate(blocks, 1) for k, a in enumerate(b)}


def class_from_poly(lam, p, sc):
    """The class of a polynomial in gamma_{p,k}, z, h symmetric within each gamma-block."""
    f = sc.specialize(p) if not isinstance(p, RatFunc) else p.substitute(sc.specialization())
    used = set(f.free_names())
    for name in used:
        if sc.reg.role(name) == "gamma":
            blk, k = map(int, name[1:].split("_"))
            if blk > lam.N or k > lam.parts[blk - 1]:
                raise ValueError(f"{name} is not a Chern root of {lam}")
    for blk, size in enumerate(lam.parts, 1):
        for k in range(1, size):
            a, b = f"g{blk}_{k}", f"g{blk}_{k + 1}"
            if f.substitute({a: sc.var(b), b: sc.var(a)}) != f:
                raise ValueError(f"polynomial is not symmetric in block {blk}")
    values = {w: f.substitute(_gamma_map(lam, sc, w)) for w in lam.words}
    return CohomClass(lam, sc, values, poly=f)


def f_ps(lam, p, s, sc):
    """[f_{p,s}]: prod_k (1 + h/(u - gamma_{p,k})) = 1 + h sum_s f_{p,s} u^{-s}."""
    h = sc.h
    series = [sc.one] + [sc.zero] * s
    for k in range(1, lam.parts[p - 1] + 1):
        g = sc.gamma(p, k)
        # multiply by 1 + h sum_{t>=1} g^{t-1} u^{-t}
        series = [series[m] + sum((series[m - t] * h * g ** (t - 1) for t in range(1, m + 1)), sc.zero)
                  for m in range(s + 1)]
    return class_from_poly(lam, series[s] / h, sc)


def integrate(kind, c):
    """Localization integral over F_lambda ('fl') or T*F_lambda ('tfl')."""
    if kind not in ("fl", "tfl"):
        raise ValueError(f"unknown integral {kind!r}")
    lam, sc = c.lam, c.sc
    acc = sc.zero
    for w, x in zip(lam.words, c._v):
        if x.is_zero():
            continue
        Q, R = structure_scalars(w, sc)
        acc = acc + x / (R if kind == "fl" else Q * R)
    acc = acc * lam.sign()
    if kind == "fl" and not acc.is_polynomial():
        raise ValueError(f"integral over F_lambda is not polynomial: {acc}")
    return acc


def _xi_sign(kind):
    if kind not in ("plus", "eq", "minus"):
        raise ValueError(f"unknown nu map {kind!r}")
    return "minus" if kind == "minus" else "plus"


@lru_cache(maxsize=None)
def nu_matrix(kind, lam, sc):
    """Matrix of nu^{kind} from restriction vectors to v-coordinates."""
    xi = build_xi(_xi_sign(kind), lam, sc)
    scale = []
    for w in lam.words:
        Q, R = structure_scalars(w, sc)
        scale.append(Q / R if kind == "plus" else 1 / R)
    return xi.matrix @ FieldMatrix.diag(sc.reg, scale)


@lru_cache(maxsize=None)
def _nu_inverse(kind, lam, sc):
    return nu_matrix(kind, lam, sc).inverse()


def nu_map(kind, c):
    col = nu_matrix(kind, c.lam, c.sc) @ FieldMatrix.column(c.sc.reg, c.vector)
    return WVector.from_column(c.lam, c.sc.reg, col.col(0))


def nu_preimage(kind, vec, sc):
    """The class c with nu^{kind}(c) = vec."""
    col = _nu_inverse(kind, vec.lam, sc) @ FieldMatrix.column(sc.reg, vec.column())
    return CohomClass.from_vector(vec.lam, sc, col.col(0))


def mu_map(kind, c):
    """The operator mu(c) with mu(c) nu(g) = nu(c g)."""
    lam, sc = c.lam, c.sc
    m = nu_matrix(kind, lam, sc) @ FieldMatrix.diag(sc.reg, c.vector) @ _nu_inverse(kind, lam, sc)
    return WOperator(lam, lam, m)


def mu_generator_route(kind, p, s, lam, sc):
    """C_{p,s}: A_{p-1}(u)^{-1} A_p(u) = 1 + h sum_s C_{p,s} u^{-s}."""
    sign = _xi_sign(kind)
    b = minor_series(sign, tuple(range(1, p + 1)), tuple(range(1, p + 1)), lam, sc, s)
    if p > 1:
        a = minor_series(sign, tuple(range(1, p)), tuple(range(1, p)), lam, sc, s)
    else:
        a = [WOperator.identity(lam, sc.reg)] + [WOperator.zero(lam, lam, sc.reg)] * s
    c = [b[0]]
    for k in range(1, s + 1):
        acc = b[k]
        for j in range(1, k + 1):
            acc = acc - a[j] @ c[k - j]
        c.append(acc)
    return c[s] / sc.h


class HOperator(WOperator):
    """Operator on restriction vectors (basis 'H')."""

    __slots__ = ()

    def apply_class(self, c):
        if c.lam != self.src:
            raise ValueError(f"class in {c.lam}, operator expects {self.src}")
        col = self.matrix @ FieldMatrix.column(self.reg, c.vector)
        return CohomClass.from_vector(self.dst, c.sc, col.col(0))


def to_cohomology(kind, op, sc):
    """nu^{-1} op nu for an operator in v-coordinates; kind picks nu^+, nu^= or nu^-."""
    m = _nu_inverse(kind, op.dst, sc) @ op.matrix @ nu_matrix(kind, op.src, sc)
    return HOperator(op.src, op.dst, m, "H")


def rho_on_H(sign, series, p, lam, sc):
    """rho^{+/-} of A_p(u), E_p(u) or F_p(u) on H_lambda, by conjugating with nu^{+/-}."""
    return to_cohomology(sign, series_operator(sign, series, p, lam, sc), sc)


def rho_on_H_closed(sign, series, p, lam, sc):
    """The same operators from the Chern-root substitution formulas."""
    if sign not in ("plus", "minus"):
        raise ValueError(f"unknown sign {sign!r}")
    u, h, z = sc.u, sc.h, sc.z
    if series == "A":
        diag = []
        for w in lam.words:
            val = sc.one
            for a, col in enumerate(w):
                if col <= p:
                    val = val * (1 + h / (u - z[a]))
            diag.append(val)
        return HOperator(lam, lam, FieldMatrix.diag(sc.reg, diag), "H")
    if series == "E":
        dst, here, there = lam.shifted(p, p + 1), p, p + 1
    elif series == "F":
        dst, here, there = lam.shifted(p + 1, p), p + 1, p
    else:
        raise ValueError(f"unknown series {series!r}")
    if dst is None:
        raise ValueError(f"{series}_{p} maps {lam} to an empty weight space")
    pos = {w: k for k, w in enumerate(lam.words)}
    rows = []
    for w in dst.words:
        row = [sc.zero] * lam.d
        block = [a for a, c in enumerate(w) if c == here]
        other = [a for a, c in enumerate(w) if c == there]
        for i in block:
            coef = 1 / (u - z[i])
            for j in block:
                if j == i:
                    continue
                if sign == "plus":
                    coef = coef * (z[i] - z[j] + (-h if series == "E" else h)) / (z[i] - z[j])
                else:
                    coef = coef / ((z[j] - z[i]) if series == "E" else (z[i] - z[j]))
            if sign == "minus":
                for k in other:
                    coef = coef * ((z[i] - z[k] + h) if series == "E" else (z[k] - z[i] + h))
            src_word = w[:i] + (there,) + w[i + 1:]
            row[pos[src_word]] = coef
        rows.append(row)
    return HOperator(lam, dst, FieldMatrix._raw(sc.reg, rows), "H")


# -- a basis of H_lambda over the field of scalars

def _block_monomials(lam, degree):
    """Exponent dicts {(p, k): a} for prod e_k(Gamma_p)^a of weighted degree `degree`, p < N."""
    gens = [(p, k) for p in range(1, lam.N) for k in range(1, lam.parts[p - 1] + 1)]

    def rec(idx, left):
        if idx == len(gens):
            if left == 0:
                yield {}
            return
        p, k = gens[idx]
        for a in range(left // k, -1, -1):
            for rest in rec(idx + 1, left - a * k):
                out = dict(rest)
                if a:
                    out[(p, k)] = a
                yield out

    yield from rec(0, degree)


def _elementary(vars_, k, one):
    e = [one] + [one * 0] * k
    for x in vars_:
        for m in range(k, 0, -1):
            e[m] = e[m] + e[m - 1] * x
    return e[k]


def _fq(fr):
    return fmpq(fr.numerator, fr.denominator)


def _probe_values(sc):
    """Numbers to test ranks with when some scalars are symbolic."""
    m = {}
    if sc.symbolic_z:
        m.update({f"z{a}": DEFAULT_Z[a - 1] for a in range(1, sc.n + 1)})
    if sc.symbolic_h:
        m["h"] = DEFAULT_H
    return m


class HBasis:
    """Monomials in block elementary symmetric functions, greedily chosen to full rank."""

    def __init__(self, lam, sc):
        self.lam, self.sc = lam, sc
        probe = _probe_values(sc)
        chosen, rows = [], []
        degree = 0
        top = sum(a * b for i, a in enumerate(lam.parts) for b in lam.parts[i + 1:])
        while len(chosen) < lam.d:
            if degree > top:
                raise SingularMatrixError(f"no basis of H_{lam.parts} found at these scalars")
            for mono in _block_monomials(lam, degree):
                poly = sc.one
                for (p, k), a in mono.items():
                    poly = poly * _elementary([sc.gamma(p, t) for t in range(1, lam.parts[p - 1] + 1)], k, sc.one) ** a
                c = class_from_poly(lam, poly, sc)
                vals = [_fq(to_fraction(x.substitute(probe).constant_value())) for x in c.vector]
                trial = rows + [vals]
                if fmpq_mat(len(trial), lam.d, [v for r in trial for v in r]).rank() == len(trial):
                    rows, chosen = trial, chosen + [c]
                    if len(chosen) == lam.d:
                        break
            degree += 1
        self.classes = chosen
        self.matrix = FieldMatrix._raw(sc.reg, [list(r) for r in zip(*[c.vector for c in chosen])])
        self._inv = None

    @property
    def inverse(self):
        if self._inv is None:
            self._inv = self.matrix.inverse()
        return self._inv

    def coordinates(self, c):
        col = self.inverse @ FieldMatrix.column(self.sc.reg, c.vector)
        return col.col(0)

    def combine(self, coords):
        acc = self.classes[0] * coords[0]
        for c, x in zip(self.classes[1:], coords[1:]):
            acc = acc + c * x
        return acc

    def frame(self, op, target=None):
        """Matrix of an H-operator between this basis and the basis of its target."""
        target = target or HBasis(op.dst, self.sc)
        return target.inverse @ op.matrix @ self.matrix
