"""Exact scalar arithmetic.

Multivariate polynomials and rational functions over Q (backed by FLINT),
dense matrices over them with fraction-free elimination, expansion of
rational functions at u = infinity, truncated q-series and the quadratic
fields Q(sqrt D).  Everything here is immutable.
"""

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
import re

import flint

__all__ = [
    "RegistryError", "GenericityError", "SingularMatrixError",
    "VarRegistry", "MultiPoly", "RatFunc", "FieldMatrix",
    "expand_at_infinity", "limit_at_zero", "QSeries", "QuadExtScalar", "Scalars",
    "to_fraction", "fraction_str", "DEFAULT_Z", "default_q",
]


class RegistryError(ValueError):
    """Operands live over different variable registries, or a name is unknown."""


class GenericityError(ValueError):
    """A specialization makes a forbidden factor vanish."""


class SingularMatrixError(ArithmeticError):
    pass


def to_fraction(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, flint.fmpq):
        return Fraction(int(c.p), int(c.q))
    if isinstance(c, (int, flint.fmpz)):
        return Fraction(int(c))
    raise TypeError(f"not a rational: {c!r}")


def _fmpq(c):
    if isinstance(c, flint.fmpq):
        return c
    if isinstance(c, (int, flint.fmpz)):
        return flint.fmpq(int(c))
    if isinstance(c, Fraction):
        return flint.fmpq(c.numerator, c.denominator)
    if isinstance(c, str):
        return _fmpq(Fraction(c))
    raise TypeError(f"not a rational: {c!r}")


def fraction_str(c):
    c = to_fraction(c)
    return f"{c.numerator}/{c.denominator}"


_ROLES = [
    (re.compile(r"z\d+$"), "z"),
    (re.compile(r"h$"), "h"),
    (re.compile(r"q\d+$"), "q"),
    (re.compile(r"g\d+_\d+$"), "gamma"),
    (re.compile(r"u$"), "u"),
    (re.compile(r"x\d*$"), "x"),
    (re.compile(r"(t|q)$"), "series"),
]


def _infer_role(name):
    for pat, role in _ROLES:
        if pat.match(name):
            return role
    return "aux"


class VarRegistry:
    """Ordered variable names with roles; one FLINT context per registry.

    Registries with identical names are the same object, so identity is a
    cheap compatibility test.
    """

    def __new__(cls, names, roles=None):
        names = tuple(names)
        roles = tuple(sorted((roles or {}).items()))
        return _registry(names, roles)

    def _init(self, names, roles):
        if len(set(names)) != len(names):
            raise RegistryError(f"duplicate variable names in {names}")
        self.names = names
        self._index = {s: i for i, s in enumerate(names)}
        given = dict(roles)
        self._roles = {s: given.get(s, _infer_role(s)) for s in names}
        self.ctx = flint.fmpq_mpoly_ctx.get(names, "deglex")
        self._zero = self.ctx.constant(0)
        self._one = self.ctx.constant(1)

    def __reduce__(self):
        return (VarRegistry, (self.names, self._roles))

    def __repr__(self):
        return f"VarRegistry({list(self.names)})"

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise RegistryError(f"{name!r} is not in the registry") from None

    def role(self, name):
        self.index(name)
        return self._roles[name]

    def names_with_role(self, role):
        return [s for s in self.names if self._roles[s] == role]

    def __contains__(self, name):
        return name in self._index

    def gen(self, name):
        return MultiPoly(self, self.ctx.gen(self.index(name)))

    def var(self, name):
        return RatFunc(self, self.ctx.gen(self.index(name)), self._one, normalize=False)

    def const(self, c):
        return RatFunc.const(self, c)


@lru_cache(maxsize=None)
def _registry(names, roles):
    reg = object.__new__(VarRegistry)
    reg._init(names, roles)
    return reg


def _check_same(a, b):
    if a is not b:
        raise RegistryError(f"registry mismatch: {a!r} vs {b!r}")


class MultiPoly:
    """Polynomial with rational coefficients over a registry."""

    __slots__ = ("reg", "raw")

    def __init__(self, reg, raw):
        self.reg = reg
        self.raw = raw

    @classmethod
    def from_terms(cls, reg, terms):
        return cls(reg, reg.ctx.from_dict({tuple(e): _fmpq(c) for e, c in terms.items() if c}))

    def _lift(self, other):
        if isinstance(other, MultiPoly):
            _check_same(self.reg, other.reg)
            return other.raw
        if isinstance(other, RatFunc):
            return NotImplemented
        return self.reg.ctx.constant(_fmpq(other))

    def __add__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else MultiPoly(self.reg, self.raw + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else MultiPoly(self.reg, self.raw - o)

    def __rsub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else MultiPoly(self.reg, o - self.raw)

    def __mul__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else MultiPoly(self.reg, self.raw * o)

    __rmul__ = __mul__

    def __neg__(self):
        return MultiPoly(self.reg, -self.raw)

    def __pow__(self, k):
        return MultiPoly(self.reg, self.raw ** k)

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self.raw == o

    def __hash__(self):
        return hash(tuple(sorted(self.raw.to_dict().items())))

    def is_zero(self):
        return self.raw.is_zero()

    def is_one(self):
        return self.raw.is_one()

    def is_constant(self):
        return self.raw.is_constant()

    def constant_value(self):
        if not self.raw.is_constant():
            raise ValueError("polynomial is not constant")
        return to_fraction(self.raw.leading_coefficient()) if not self.raw.is_zero() else Fraction(0)

    def leading_coefficient(self):
        return to_fraction(self.raw.leading_coefficient())

    def terms(self):
        """(exponents, coefficient) pairs, graded lex descending."""
        items = [(e, to_fraction(c)) for e, c in self.raw.to_dict().items()]
        items.sort(key=lambda t: (sum(t[0]), t[0]), reverse=True)
        return items

    def degree(self, name):
        if self.raw.is_zero():
            return -1
        return self.raw.degrees()[self.reg.index(name)]

    def total_degree(self):
        return -1 if self.raw.is_zero() else self.raw.total_degree()

    def coefficients_in(self, name):
        """[c_0, c_1, ...] with self = sum c_k * name^k."""
        return [MultiPoly(self.reg, c) for c in _coeffs_in(self.reg, self.raw, self.reg.index(name))]

    def derivative(self, name):
        return MultiPoly(self.reg, self.raw.derivative(self.reg.index(name)))

    def eval(self, values):
        """Substitute numbers; returns a Fraction when nothing symbolic is left."""
        out = self.substitute(values)
        return out.constant_value() if out.is_constant() else out

    def substitute(self, mapping):
        res = _subs_raw(self.reg, self.raw, mapping)
        if isinstance(res, RatFunc):
            if res.den.is_one():
                return MultiPoly(self.reg, res._n)
            return res
        return MultiPoly(self.reg, res)

    def to_json(self):
        return [{"exponents": list(e), "coeff": fraction_str(c)} for e, c in self.terms()]

    def __str__(self):
        return str(self.raw)

    __repr__ = __str__


def _coeffs_in(reg, raw, idx):
    buckets = {}
    for e, c in raw.to_dict().items():
        k = e[idx]
        e2 = e[:idx] + (0,) + e[idx + 1:]
        buckets.setdefault(k, {})[e2] = c
    if not buckets:
        return [reg._zero]
    top = max(buckets)
    return [reg.ctx.from_dict(buckets[k]) if k in buckets else reg._zero for k in range(top + 1)]


def _subs_raw(reg, raw, mapping):
    """Simultaneous substitution.  Returns a raw polynomial when every value is
    polynomial, else a RatFunc."""
    vals = {}
    for name, v in mapping.items():
        i = reg.index(name)
        if isinstance(v, RatFunc):
            _check_same(reg, v.reg)
            vals[i] = (v._n, v._d)
        elif isinstance(v, MultiPoly):
            _check_same(reg, v.reg)
            vals[i] = (v.raw, reg._one)
        else:
            vals[i] = (reg.ctx.constant(_fmpq(v)), reg._one)
    if all(d.is_one() for _, d in vals.values()):
        gens = list(reg.ctx.gens())
        for i, (n_, _) in vals.items():
            gens[i] = n_
        return raw.compose(*gens) if gens else raw
    # common denominator B, x_i = A_i / B
    B = reg._one
    for _, d in vals.values():
        B = B * d / B.gcd(d)
    A = {i: n_ * (B / d) for i, (n_, d) in vals.items()}
    idx = sorted(A)
    D = 0
    terms = raw.to_dict()
    for e in terms:
        D = max(D, sum(e[i] for i in idx))
    powA = {i: [reg._one] for i in idx}
    powB = [reg._one]
    out = reg._zero
    for e, c in terms.items():
        m = reg.ctx.from_dict({tuple(0 if j in A else e[j] for j in range(len(e))): c})
        deg = 0
        for i in idx:
            k = e[i]
            deg += k
            pa = powA[i]
            while len(pa) <= k:
                pa.append(pa[-1] * A[i])
            m = m * pa[k]
        while len(powB) <= D - deg:
            powB.append(powB[-1] * B)
        out += m * powB[D - deg]
    den = reg._one
    for _ in range(D):
        den = den * B
    return RatFunc(reg, out, den)


class RatFunc:
    """Reduced quotient num/den with monic denominator (graded lex order)."""

    __slots__ = ("reg", "_n", "_d")

    def __init__(self, reg, num, den=None, normalize=True):
        self.reg = reg
        if isinstance(num, MultiPoly):
            num = num.raw
        if den is None:
            den = reg._one
        elif isinstance(den, MultiPoly):
            den = den.raw
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self._n = num
        self._d = den
        if normalize:
            self._reduce()

    def _reduce(self):
        n, d = self._n, self._d
        if n.is_zero():
            self._n, self._d = n, self.reg._one
            return
        if not d.is_constant():
            g = n.gcd(d)
            if not g.is_one():
                n = n / g
                d = d / g
        lc = d.leading_coefficient()
        if lc != 1:
            n = n / lc
            d = d / lc
        self._n, self._d = n, d

    @classmethod
    def const(cls, reg, c):
        return cls(reg, reg.ctx.constant(_fmpq(c)), reg._one, normalize=False)

    @property
    def num(self):
        return MultiPoly(self.reg, self._n)

    @property
    def den(self):
        return MultiPoly(self.reg, self._d)

    def _lift(self, other):
        if isinstance(other, RatFunc):
            _check_same(self.reg, other.reg)
            return other._n, other._d
        if isinstance(other, MultiPoly):
            _check_same(self.reg, other.reg)
            return other.raw, self.reg._one
        if isinstance(other, (int, Fraction, flint.fmpq, flint.fmpz)):
            return self.reg.ctx.constant(_fmpq(other)), self.reg._one
        return None

    def _new(self, n, d, normalize=True):
        return RatFunc(self.reg, n, d, normalize)

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n2, d2 = o
        n1, d1 = self._n, self._d
        if d1 == d2:
            if d1.is_one():
                return self._new(n1 + n2, d1, False)
            return self._new(n1 + n2, d1)
        if d2.is_one():
            return self._new(n1 + n2 * d1, d1, False)
        if d1.is_one():
            return self._new(n1 * d2 + n2, d2, False)
        g = d1.gcd(d2)
        if g.is_one():
            return self._new(n1 * d2 + n2 * d1, d1 * d2)
        e1, e2 = d1 / g, d2 / g
        return self._new(n1 * e2 + n2 * e1, d1 * e2)

    __radd__ = __add__

    def __neg__(self):
        return self._new(-self._n, self._d, False)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + RatFunc(self.reg, -o[0], o[1], False)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n2, d2 = o
        n1, d1 = self._n, self._d
        if n1.is_zero() or n2.is_zero():
            return self._new(self.reg._zero, self.reg._one, False)
        if d1.is_one() and d2.is_one():
            return self._new(n1 * n2, d1, False)
        if not d2.is_constant():
            g = n1.gcd(d2)
            if not g.is_one():
                n1, d2 = n1 / g, d2 / g
        if not d1.is_constant():
            g = n2.gcd(d1)
            if not g.is_one():
                n2, d1 = n2 / g, d1 / g
        d = d1 * d2
        n = n1 * n2
        lc = d.leading_coefficient()
        if lc != 1:
            n, d = n / lc, d / lc
        return self._new(n, d, False)

    __rmul__ = __mul__

    def inv(self):
        if self._n.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return self._new(self._d, self._n)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * RatFunc(self.reg, o[0], o[1], False).inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, k):
        if k < 0:
            return self.inv() ** (-k)
        return self._new(self._n ** k, self._d ** k, False)

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self._n == o[0] and self._d == o[1]

    def __hash__(self):
        return hash((tuple(sorted(self._n.to_dict().items())), tuple(sorted(self._d.to_dict().items()))))

    def __bool__(self):
        return not self._n.is_zero()

    def is_zero(self):
        return self._n.is_zero()

    def is_constant(self):
        return self._n.is_constant() and self._d.is_constant()

    def is_polynomial(self):
        return self._d.is_one()

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        if self._n.is_zero():
            return Fraction(0)
        return to_fraction(self._n.leading_coefficient())

    def normalize(self):
        return self._new(self._n, self._d)

    def free_names(self):
        used = set()
        for p in (self._n, self._d):
            for e in p.to_dict():
                used.update(i for i, k in enumerate(e) if k)
        return [self.reg.names[i] for i in sorted(used)]

    def substitute(self, mapping):
        """Simultaneous substitution of names by numbers, polynomials or rational functions."""
        if not mapping:
            return self
        n = _subs_raw(self.reg, self._n, mapping)
        d = _subs_raw(self.reg, self._d, mapping)
        if not isinstance(n, RatFunc):
            n = RatFunc(self.reg, n, None, False)
        if not isinstance(d, RatFunc):
            d = RatFunc(self.reg, d, None, False)
        if d.is_zero():
            raise ZeroDivisionError(f"denominator of {self} vanishes under {mapping}")
        return n / d

    def derivative(self, name):
        i = self.reg.index(name)
        n, d = self._n, self._d
        if d.is_constant():
            return self._new(n.derivative(i), d, False)
        return self._new(n.derivative(i) * d - n * d.derivative(i), d * d)

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    def __str__(self):
        if self._d.is_one():
            return str(self._n)
        n = str(self._n)
        if len(self._n.to_dict()) > 1:
            n = f"({n})"
        return f"{n}/({self._d})"

    __repr__ = __str__


def expand_at_infinity(f, var, order):
    """Coefficients a_0..a_order with f = sum a_s var^-s + O(var^-order-1)."""
    reg = f.reg
    idx = reg.index(var)
    num = _coeffs_in(reg, f._n, idx)
    den = _coeffs_in(reg, f._d, idx)
    while len(num) > 1 and num[-1].is_zero():
        num.pop()
    while len(den) > 1 and den[-1].is_zero():
        den.pop()
    dn, dd = len(num) - 1, len(den) - 1
    if not f._n.is_zero() and dn > dd:
        raise ValueError(f"{f} grows at {var} = infinity")
    alpha = [RatFunc(reg, num[dd - j], None, False) if 0 <= dd - j <= dn else RatFunc.const(reg, 0)
             for j in range(order + 1)]
    beta = [RatFunc(reg, den[dd - j], None, False) if dd - j >= 0 else None for j in range(order + 1)]
    lead = beta[0].inv()
    out = []
    for j in range(order + 1):
        c = alpha[j]
        for i in range(1, j + 1):
            if beta[i] is not None and not beta[i].is_zero():
                c = c - beta[i] * out[j - i]
        out.append(c * lead)
    return out


def limit_at_zero(f, var):
    """Limit of f as var -> 0; ValueError if f has a pole there."""
    reg = f.reg
    idx = reg.index(var)
    if f._n.is_zero():
        return f
    num = _coeffs_in(reg, f._n, idx)
    den = _coeffs_in(reg, f._d, idx)
    a = next(k for k, c in enumerate(num) if not c.is_zero())
    b = next(k for k, c in enumerate(den) if not c.is_zero())
    if a < b:
        raise ValueError(f"{f} has a pole at {var} = 0")
    if a > b:
        return RatFunc.const(reg, 0)
    return RatFunc(reg, num[a], den[b])


def _is_zero(x):
    if isinstance(x, RatFunc):
        return x._n.is_zero()
    return x == 0


class FieldMatrix:
    """Dense matrix of RatFunc entries."""

    __slots__ = ("reg", "rows", "cols", "_e")

    def __init__(self, entries, registry=None):
        reg = registry
        if reg is None:
            for row in entries:
                for x in row:
                    if isinstance(x, (RatFunc, MultiPoly)):
                        reg = x.reg
                        break
                if reg is not None:
                    break
        if reg is None:
            raise RegistryError("cannot infer a registry from constant entries")
        self.reg = reg
        self.rows = len(entries)
        self.cols = len(entries[0]) if entries else 0
        e = []
        for row in entries:
            if len(row) != self.cols:
                raise ValueError("ragged matrix")
            e.append(tuple(_as_rf(reg, x) for x in row))
        self._e = tuple(e)

    @classmethod
    def _raw(cls, reg, rows):
        m = object.__new__(cls)
        m.reg = reg
        m.rows = len(rows)
        m.cols = len(rows[0]) if rows else 0
        m._e = tuple(tuple(r) for r in rows)
        return m

    @classmethod
    def zeros(cls, reg, rows, cols=None):
        z = RatFunc.const(reg, 0)
        return cls._raw(reg, [[z] * (rows if cols is None else cols) for _ in range(rows)])

    @classmethod
    def identity(cls, reg, n):
        z, o = RatFunc.const(reg, 0), RatFunc.const(reg, 1)
        return cls._raw(reg, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, reg, values):
        n = len(values)
        z = RatFunc.const(reg, 0)
        return cls._raw(reg, [[_as_rf(reg, values[i]) if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def column(cls, reg, values):
        return cls._raw(reg, [[_as_rf(reg, v)] for v in values])

    @property
    def shape(self):
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"entry {ij} outside {self.shape}")
        return self._e[i][j]

    def row(self, i):
        return list(self._e[i])

    def col(self, j):
        return [r[j] for r in self._e]

    def tolist(self):
        return [list(r) for r in self._e]

    def map(self, fn):
        return FieldMatrix._raw(self.reg, [[fn(x) for x in r] for r in self._e])

    def substitute(self, mapping):
        return self.map(lambda x: x.substitute(mapping))

    def transpose(self):
        return FieldMatrix._raw(self.reg, [list(c) for c in zip(*self._e)]) if self.rows else self

    T = property(transpose)

    def _same_shape(self, other):
        _check_same(self.reg, other.reg)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other):
        self._same_shape(other)
        return FieldMatrix._raw(self.reg, [[a + b for a, b in zip(r, s)] for r, s in zip(self._e, other._e)])

    def __sub__(self, other):
        self._same_shape(other)
        return FieldMatrix._raw(self.reg, [[a - b for a, b in zip(r, s)] for r, s in zip(self._e, other._e)])

    def __neg__(self):
        return self.map(lambda x: -x)

    def __mul__(self, c):
        if isinstance(c, FieldMatrix):
            return self @ c
        return self.map(lambda x: x * c)

    __rmul__ = __mul__

    def __truediv__(self, c):
        inv = _as_rf(self.reg, c).inv()
        return self.map(lambda x: x * inv)

    def __matmul__(self, other):
        _check_same(self.reg, other.reg)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        zero = RatFunc.const(self.reg, 0)
        ocols = [[(k, x) for k, x in enumerate(col) if not x._n.is_zero()] for col in zip(*other._e)] \
            if other.rows else [[] for _ in range(other.cols)]
        out = []
        for r in self._e:
            row = []
            for col in ocols:
                acc = None
                for k, x in col:
                    a = r[k]
                    if a._n.is_zero():
                        continue
                    t = a * x
                    acc = t if acc is None else acc + t
                row.append(zero if acc is None else acc)
            out.append(row)
        return FieldMatrix._raw(self.reg, out)

    def commutator(self, other):
        return self @ other - other @ self

    def is_zero(self):
        return all(x._n.is_zero() for r in self._e for x in r)

    def __eq__(self, other):
        if not isinstance(other, FieldMatrix):
            return NotImplemented
        return self.reg is other.reg and self.shape == other.shape and \
            all(a == b for r, s in zip(self._e, other._e) for a, b in zip(r, s))

    def __hash__(self):
        return hash((self.shape, tuple(hash(x) for r in self._e for x in r)))

    def first_nonzero(self):
        for i, r in enumerate(self._e):
            for j, x in enumerate(r):
                if not x._n.is_zero():
                    return (i, j), x
        return None

    def is_constant(self):
        return all(x.is_constant() for r in self._e for x in r)

    def _fmpq_mat(self):
        if not self.is_constant():
            return None
        return flint.fmpq_mat(self.rows, self.cols,
                              [_fmpq(x.constant_value()) for r in self._e for x in r])

    def _from_fmpq_mat(self, m):
        reg = self.reg
        return FieldMatrix._raw(reg, [[RatFunc.const(reg, to_fraction(m[i, j])) for j in range(m.ncols())]
                                      for i in range(m.nrows())])

    # fraction-free elimination on the cleared polynomial matrix

    def _cleared(self):
        rows, scale = [], []
        for r in self._e:
            L = self.reg._one
            for x in r:
                d = x._d
                if not d.is_one():
                    L = L * (d / L.gcd(d))
            rows.append([x._n * (L / x._d) for x in r])
            scale.append(L)
        return rows, scale

    def det(self):
        if self.rows != self.cols:
            raise ValueError("det of a non-square matrix")
        n = self.rows
        if n == 0:
            return RatFunc.const(self.reg, 1)
        fm = self._fmpq_mat()
        if fm is not None:
            return RatFunc.const(self.reg, to_fraction(fm.det()))
        M, scale = self._cleared()
        sign = 1
        prev = self.reg._one
        for k in range(n - 1):
            if M[k][k].is_zero():
                for i in range(k + 1, n):
                    if not M[i][k].is_zero():
                        M[k], M[i] = M[i], M[k]
                        sign = -sign
                        break
                else:
                    return RatFunc.const(self.reg, 0)
            p = M[k][k]
            for i in range(k + 1, n):
                a = M[i][k]
                for j in range(k + 1, n):
                    M[i][j] = (M[i][j] * p - a * M[k][j]) / prev
                M[i][k] = self.reg._zero
            prev = p
        d = M[n - 1][n - 1] if sign > 0 else -M[n - 1][n - 1]
        den = self.reg._one
        for s in scale:
            den = den * s
        return RatFunc(self.reg, d, den)

    def rank(self):
        fm = self._fmpq_mat()
        if fm is not None:
            return fm.rank()
        M, _ = self._cleared()
        return len(self._echelon_general(M))

    def _echelon_general(self, M):
        # plain elimination over the fraction field, polynomials cross-multiplied
        # and divided by content gcd to stay small; safe with skipped columns
        reg = self.reg
        nr, nc = len(M), len(M[0]) if M else 0
        pivots = []
        r = 0
        for c in range(nc):
            if r >= nr:
                break
            piv = next((i for i in range(r, nr) if not M[i][c].is_zero()), None)
            if piv is None:
                continue
            M[r], M[piv] = M[piv], M[r]
            p = M[r][c]
            for i in range(r + 1, nr):
                a = M[i][c]
                if a.is_zero():
                    continue
                g = p.gcd(a)
                pp, aa = p / g, a / g
                row = [M[i][j] * pp - aa * M[r][j] for j in range(nc)]
                cont = reg._zero
                for x in row:
                    if not x.is_zero():
                        cont = x if cont.is_zero() else cont.gcd(x)
                        if cont.is_constant():
                            break
                if not cont.is_zero() and not cont.is_constant():
                    row = [x / cont for x in row]
                M[i] = row
            pivots.append(c)
            r += 1
        return pivots

    def solve(self, b):
        """X with self @ X = b, for square invertible self."""
        _check_same(self.reg, b.reg)
        n = self.rows
        if self.cols != n or b.rows != n:
            raise ValueError(f"solve shape mismatch {self.shape}, {b.shape}")
        A = self._fmpq_mat()
        B = b._fmpq_mat()
        if A is not None and B is not None:
            try:
                return self._from_fmpq_mat(A.solve(B))
            except ZeroDivisionError:
                raise SingularMatrixError("singular matrix") from None
        aug = FieldMatrix._raw(self.reg, [list(r) + list(s) for r, s in zip(self._e, b._e)])
        M, _ = aug._cleared()
        piv = aug._echelon_general(M)
        if [p for p in piv if p < n] != list(range(n)):
            raise SingularMatrixError("singular matrix")
        reg = self.reg
        X = [[None] * b.cols for _ in range(n)]
        for i in range(n - 1, -1, -1):
            p = RatFunc(reg, M[i][i])
            for k in range(b.cols):
                acc = RatFunc(reg, M[i][n + k], None, False)
                for j in range(i + 1, n):
                    if not M[i][j].is_zero():
                        acc = acc - RatFunc(reg, M[i][j], None, False) * X[j][k]
                X[i][k] = acc / p
        return FieldMatrix._raw(reg, X)

    def inverse(self):
        return self.solve(FieldMatrix.identity(self.reg, self.rows))

    def to_json(self):
        return [[x.to_json() for x in r] for r in self._e]

    def __str__(self):
        return "[" + ",\n ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self._e) + "]"

    __repr__ = __str__


def _as_rf(reg, x):
    if isinstance(x, RatFunc):
        _check_same(reg, x.reg)
        return x
    if isinstance(x, MultiPoly):
        _check_same(reg, x.reg)
        return RatFunc(reg, x.raw, None, False)
    return RatFunc.const(reg, x)


class QSeries:
    """Truncated power series c_0 + c_1 q + ... + c_D q^D.

    Coefficients are any ring elements (RatFunc, rationals, vectors with
    scalar multiplication); products truncate at the smaller order.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        if not coeffs:
            raise ValueError("empty series")
        self.coeffs = list(coeffs)

    @property
    def order(self):
        return len(self.coeffs) - 1

    def __add__(self, other):
        if not isinstance(other, QSeries):
            return QSeries([self.coeffs[0] + other] + self.coeffs[1:])
        D = min(self.order, other.order)
        return QSeries([a + b for a, b in zip(self.coeffs[:D + 1], other.coeffs[:D + 1])])

    __radd__ = __add__

    def __neg__(self):
        return QSeries([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            return QSeries([c * other for c in self.coeffs])
        D = min(self.order, other.order)
        out = []
        for d in range(D + 1):
            acc = self.coeffs[0] * other.coeffs[d]
            for i in range(1, d + 1):
                acc = acc + self.coeffs[i] * other.coeffs[d - i]
            out.append(acc)
        return QSeries(out)

    def __rmul__(self, other):
        return QSeries([other * c for c in self.coeffs])

    def apply(self, fn):
        return QSeries([fn(c) for c in self.coeffs])

    def q_derivative(self):
        """q d/dq."""
        return QSeries([c * d for d, c in enumerate(self.coeffs)])

    def shift(self, k):
        """Multiply by q^k, keeping the order."""
        zero = self.coeffs[0] * 0
        return QSeries(([zero] * k + self.coeffs)[:len(self.coeffs)])

    def __eq__(self, other):
        return isinstance(other, QSeries) and self.coeffs == other.coeffs

    def __repr__(self):
        return f"QSeries({self.coeffs!r})"


class QuadExtScalar:
    """a + b*sqrt(delta) in Q(sqrt(delta)); delta fixed per element family."""

    __slots__ = ("a", "b", "delta")

    def __init__(self, a, b, delta):
        a, b, delta = to_fraction(_fr(a)), to_fraction(_fr(b)), to_fraction(_fr(delta))
        r = _rational_sqrt(delta)
        if r is not None:
            a, b = a + b * r, Fraction(0)
        self.a, self.b, self.delta = a, b, delta

    @classmethod
    def sqrt(cls, delta):
        return cls(0, 1, delta)

    def _lift(self, other):
        if isinstance(other, QuadExtScalar):
            if other.delta != self.delta and other.b and self.b:
                raise ValueError("mixing different quadratic fields")
            return other.a, other.b
        if isinstance(other, (int, Fraction, flint.fmpq, flint.fmpz)):
            return to_fraction(_fr(other)), Fraction(0)
        return None

    def _d(self, other):
        if isinstance(other, QuadExtScalar) and not self.b:
            return other.delta
        return self.delta

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return QuadExtScalar(self.a + o[0], self.b + o[1], self._d(other))

    __radd__ = __add__

    def __neg__(self):
        return QuadExtScalar(-self.a, -self.b, self.delta)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return QuadExtScalar(self.a - o[0], self.b - o[1], self._d(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        d = self._d(other)
        a, b = self.a, self.b
        return QuadExtScalar(a * o[0] + b * o[1] * d, a * o[1] + b * o[0], d)

    __rmul__ = __mul__

    def conj(self):
        return QuadExtScalar(self.a, -self.b, self.delta)

    def norm(self):
        return self.a * self.a - self.b * self.b * self.delta

    def inv(self):
        nm = self.norm()
        if nm == 0:
            raise ZeroDivisionError("inverse of zero in Q(sqrt D)")
        return QuadExtScalar(self.a / nm, -self.b / nm, self.delta)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * QuadExtScalar(o[0], o[1], self._d(other)).inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def is_zero(self):
        return self.a == 0 and self.b == 0

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.a == o[0] and self.b == o[1]

    def __hash__(self):
        return hash((self.a, self.b, self.delta if self.b else None))

    def __repr__(self):
        if not self.b:
            return str(self.a)
        return f"{self.a} + {self.b}*sqrt({self.delta})"


def _fr(x):
    return to_fraction(x) if not isinstance(x, Fraction) else x


def _rational_sqrt(c):
    if c < 0:
        return None
    from math import isqrt
    p, q = c.numerator, c.denominator
    rp, rq = isqrt(p), isqrt(q)
    if rp * rp == p and rq * rq == q:
        return Fraction(rp, rq)
    return None


# scalar modes

DEFAULT_Z = (0, 1, 5, 17, 44, 97)
DEFAULT_H = 3
_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19)


def default_q(N):
    return [Fraction(1, _PRIMES[i]) for i in range(N)]


class Scalars:
    """Values of z_1..z_n, h, q_1..q_N for one computation.

    A value left as None stays a symbol.  The registry also carries the
    spectral variable u, an auxiliary x, the connection step 'kappa' and the
    Chern roots g{p}_{k}.  Construction runs the genericity guard.
    """

    def __init__(self, n, N, z=None, h=None, q=None, extra=()):
        self.n, self.N = n, N
        names = [f"z{a}" for a in range(1, n + 1)] + ["h"] + [f"q{i}" for i in range(1, N + 1)]
        names += ["u", "x", "kappa"]
        names += [f"g{p}_{k}" for p in range(1, N + 1) for k in range(1, n + 1)]
        names += [s for s in extra if s not in names]
        self.reg = VarRegistry(names)
        reg = self.reg
        self.symbolic_z = z is None
        self.symbolic_h = h is None
        self.symbolic_q = q is None
        if z is not None and len(z) != n:
            raise ValueError(f"need {n} z-values, got {len(z)}")
        if q is not None and len(q) != N:
            raise ValueError(f"need {N} q-values, got {len(q)}")
        self.z = tuple(reg.var(f"z{a}") if z is None else _as_rf(reg, _coerce_value(reg, z[a - 1]))
                       for a in range(1, n + 1))
        self.h = reg.var("h") if h is None else _as_rf(reg, _coerce_value(reg, h))
        self.q = tuple(reg.var(f"q{i}") if q is None else _as_rf(reg, _coerce_value(reg, q[i - 1]))
                       for i in range(1, N + 1))
        self.u = reg.var("u")
        self.zero = RatFunc.const(reg, 0)
        self.one = RatFunc.const(reg, 1)
        self._inputs = (z, h, q, tuple(extra))
        self.guard()

    @classmethod
    def symbolic(cls, n, N, q="symbolic"):
        return cls(n, N, q=None if q == "symbolic" else q)

    @classmethod
    def specialized(cls, n, N, z=None, h=None, q="default"):
        z = list(DEFAULT_Z[:n]) if z is None else z
        h = DEFAULT_H if h is None else h
        if q == "default":
            q = default_q(N)
        elif q == "symbolic":
            q = None
        return cls(n, N, z=z, h=h, q=q)

    def with_q(self, q):
        z, h, _, extra = self._inputs
        return Scalars(self.n, self.N, z=z, h=h, q=q, extra=extra)

    @property
    def mode(self):
        return "symbolic" if self.symbolic_z and self.symbolic_h else "specialized"

    def var(self, name):
        return self.reg.var(name)

    def const(self, c):
        return RatFunc.const(self.reg, c)

    def gamma(self, p, k):
        return self.reg.var(f"g{p}_{k}")

    def specialization(self):
        """Mapping name -> value for every specialized z, h, q."""
        m = {}
        if not self.symbolic_z:
            m.update({f"z{a}": self.z[a - 1] for a in range(1, self.n + 1)})
        if not self.symbolic_h:
            m["h"] = self.h
        if not self.symbolic_q:
            m.update({f"q{i}": self.q[i - 1] for i in range(1, self.N + 1)})
        return m

    def specialize(self, f):
        """Replace z, h, q names in a user expression by this mode's values."""
        if isinstance(f, (int, Fraction)):
            return self.const(f)
        if isinstance(f, MultiPoly):
            f = RatFunc(self.reg, f.raw, None, False)
        return f.substitute(self.specialization())

    def guard(self, extra_factors=()):
        z, h = self.z, self.h
        checks = [("h", h)]
        for i, j in combinations(range(self.n), 2):
            d = z[i] - z[j]
            checks += [(f"z{i + 1} - z{j + 1}", d), (f"z{i + 1} - z{j + 1} + h", d + h),
                       (f"z{i + 1} - z{j + 1} - h", d - h)]
        for i, j in combinations(range(self.N), 2):
            checks.append((f"q{i + 1} - q{j + 1}", self.q[i] - self.q[j]))
        checks += list(extra_factors)
        for label, val in checks:
            if val.is_zero():
                raise GenericityError(f"factor {label} vanishes under the specialization")

    def __repr__(self):
        return f"Scalars(n={self.n}, N={self.N}, z={self.z}, h={self.h}, q={self.q})"


def _coerce_value(reg, v):
    if isinstance(v, (RatFunc, MultiPoly)):
        return v
    if isinstance(v, str):
        return Fraction(v)
    return v
