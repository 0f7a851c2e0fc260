"""Weight subspaces V_lambda of (C^N)^{tensor n} and their function spaces.

Basis vectors v_I are keyed by color words (i_1, ..., i_n); I_j is the set of
slots carrying color j.  The canonical basis order is lexicographic in the
color word, so I^min comes first and I^max last.

Vector-valued functions are stored by their value at the base point of a
Scalars object.  Operations that need the function at permuted arguments
(the S_n actions, Pi-tilde) require symbolic z; the xi bases are instead
built by tracking permuted evaluation points, which works in both modes.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import factorial, prod

from .exact_algebra import FieldMatrix, RatFunc

__all__ = [
    "Composition", "IndexDecomposition", "WVector", "compositions",
    "enumerate_indices", "index_leq", "structure_scalars", "d_factor",
    "sn_action", "theta_map", "theta_sum", "build_xi", "xi_matrix",
    "shapovalov", "gl_action", "pi_tilde", "v_plus", "v_eq", "v_minus",
    "evaluate_at_index",
]


def _swap(t, i):
    """Swap entries i, i+1 (1-based) of a tuple."""
    t = list(t)
    t[i - 1], t[i] = t[i], t[i - 1]
    return tuple(t)


@dataclass(frozen=True)
class IndexDecomposition:
    word: tuple

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(self.word))

    @classmethod
    def from_blocks(cls, blocks):
        n = sum(len(b) for b in blocks)
        word = [0] * n
        for color, b in enumerate(blocks, 1):
            for a in b:
                if word[a - 1]:
                    raise ValueError(f"blocks {blocks} overlap")
                word[a - 1] = color
        if 0 in word:
            raise ValueError(f"blocks {blocks} do not cover 1..{n}")
        return cls(tuple(word))

    @property
    def n(self):
        return len(self.word)

    def blocks_for(self, N):
        return tuple(tuple(a for a, c in enumerate(self.word, 1) if c == j) for j in range(1, N + 1))

    @property
    def blocks(self):
        return self.blocks_for(max(self.word))

    def swap(self, i):
        return IndexDecomposition(_swap(self.word, i))

    def __repr__(self):
        return "I" + "".join(map(str, self.word))


def _as_word(I):
    return I.word if isinstance(I, IndexDecomposition) else tuple(I)


@dataclass(frozen=True)
class Composition:
    parts: tuple

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if not parts or any(p < 0 for p in parts):
            raise ValueError(f"bad composition {self.parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def N(self):
        return len(self.parts)

    @property
    def n(self):
        return sum(self.parts)

    @property
    def d(self):
        return factorial(self.n) // prod(factorial(p) for p in self.parts)

    @property
    def imin(self):
        return IndexDecomposition(tuple(j for j, p in enumerate(self.parts, 1) for _ in range(p)))

    @property
    def imax(self):
        return IndexDecomposition(tuple(reversed(self.imin.word)))

    @property
    def indices(self):
        return _indices(self)

    @property
    def words(self):
        return [I.word for I in _indices(self)]

    def position(self, I):
        return _positions(self)[_as_word(I)]

    def shifted(self, i, j):
        """lambda + e_i - e_j, or None when a part would go negative."""
        parts = list(self.parts)
        parts[i - 1] += 1
        parts[j - 1] -= 1
        if parts[j - 1] < 0:
            return None
        return Composition(tuple(parts))

    def sign(self):
        """(-1)^{sum_{i<j} lambda_i lambda_j}."""
        s = sum(a * b for a, b in combinations(self.parts, 2))
        return -1 if s % 2 else 1

    def __repr__(self):
        return "lambda" + str(self.parts)


@lru_cache(maxsize=None)
def _indices(lam):
    out = []

    def rec(prefix, left):
        if len(prefix) == lam.n:
            out.append(IndexDecomposition(tuple(prefix)))
            return
        for j in range(1, lam.N + 1):
            if left[j - 1]:
                left[j - 1] -= 1
                prefix.append(j)
                rec(prefix, left)
                prefix.pop()
                left[j - 1] += 1

    rec([], list(lam.parts))
    return tuple(out)


@lru_cache(maxsize=None)
def _positions(lam):
    return {I.word: k for k, I in enumerate(_indices(lam))}


def compositions(n, max_parts=None, min_parts=1, positive=False):
    """All compositions of n with between min_parts and max_parts parts."""
    max_parts = n if max_parts is None else max_parts
    out = []

    def rec(prefix, left, k):
        if k == 0:
            if left == 0:
                out.append(Composition(tuple(prefix)))
            return
        for p in range(1 if positive else 0, left + 1):
            rec(prefix + [p], left - p, k - 1)

    for N in range(min_parts, max_parts + 1):
        rec([], n, N)
    return out


def enumerate_indices(lam):
    return list(_indices(lam))


def index_leq(I, J):
    """The partial order on I_lambda: compare blocks in turn, elementwise."""
    a, b = _as_word(I), _as_word(J)
    N = max(max(a), max(b))
    for A, B in zip(IndexDecomposition(a).blocks_for(N), IndexDecomposition(b).blocks_for(N)):
        if A == B:
            continue
        return all(x <= y for x, y in zip(A, B))
    return True


def structure_scalars(I, sc):
    """(Q(z_I), R(z_I))."""
    w = _as_word(I)
    z, h = sc.z, sc.h
    Q, R = sc.one, sc.one
    for i in range(len(w)):
        for j in range(len(w)):
            if w[i] < w[j]:
                d = z[i] - z[j]
                Q = Q * (d + h)
                R = R * d
    return Q, R


def d_factor(sc):
    """(D, D-check, Z = D * D-check)."""
    z, h = sc.z, sc.h
    D, Dc = sc.one, sc.one
    for i, j in combinations(range(sc.n), 2):
        D = D * (z[i] - z[j] + h)
        Dc = Dc * (z[j] - z[i] + h)
    return D, Dc, D * Dc


class WVector:
    """Element of V_lambda with coefficients in the scalar field."""

    __slots__ = ("lam", "reg", "_c")

    def __init__(self, lam, reg, coeffs=None):
        self.lam = lam
        self.reg = reg
        pos = _positions(lam)
        c = {}
        for w, x in (coeffs or {}).items():
            w = _as_word(w)
            if w not in pos:
                raise ValueError(f"{w} is not an index of {lam}")
            x = x if isinstance(x, RatFunc) else RatFunc.const(reg, x)
            if not x.is_zero():
                c[w] = x
        self._c = c

    @classmethod
    def _raw(cls, lam, reg, c):
        v = object.__new__(cls)
        v.lam, v.reg, v._c = lam, reg, c
        return v

    @classmethod
    def basis(cls, lam, reg, I):
        return cls(lam, reg, {_as_word(I): 1})

    @classmethod
    def zero(cls, lam, reg):
        return cls._raw(lam, reg, {})

    @classmethod
    def from_column(cls, lam, reg, values):
        values = values.col(0) if isinstance(values, FieldMatrix) else values
        return cls(lam, reg, dict(zip(lam.words, values)))

    def __getitem__(self, I):
        return self._c.get(_as_word(I)) or RatFunc.const(self.reg, 0)

    def items(self):
        return sorted(self._c.items(), key=lambda t: _positions(self.lam)[t[0]])

    def column(self):
        zero = RatFunc.const(self.reg, 0)
        return [self._c.get(w, zero) for w in self.lam.words]

    def as_matrix(self):
        return FieldMatrix.column(self.reg, self.column())

    def _check(self, other):
        if not isinstance(other, WVector) or other.lam != self.lam:
            raise ValueError(f"composition mismatch: {self.lam} vs {getattr(other, 'lam', other)}")

    def __add__(self, other):
        self._check(other)
        c = dict(self._c)
        for w, x in other._c.items():
            y = c.get(w)
            y = x if y is None else y + x
            if y.is_zero():
                c.pop(w, None)
            else:
                c[w] = y
        return WVector._raw(self.lam, self.reg, c)

    def __neg__(self):
        return WVector._raw(self.lam, self.reg, {w: -x for w, x in self._c.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, s):
        c = {}
        for w, x in self._c.items():
            y = x * s
            if not y.is_zero():
                c[w] = y
        return WVector._raw(self.lam, self.reg, c)

    __rmul__ = __mul__

    def __truediv__(self, s):
        inv = (s if isinstance(s, RatFunc) else RatFunc.const(self.reg, s)).inv()
        return self * inv

    def __eq__(self, other):
        if not isinstance(other, WVector):
            return NotImplemented
        return self.lam == other.lam and self._c == other._c

    def __hash__(self):
        return hash((self.lam, tuple(self.items())))

    def is_zero(self):
        return not self._c

    def map(self, fn):
        c = {}
        for w, x in self._c.items():
            y = fn(x)
            if not y.is_zero():
                c[w] = y
        return WVector._raw(self.lam, self.reg, c)

    def substitute(self, mapping):
        return self.map(lambda x: x.substitute(mapping))

    def permute_slots(self, i):
        """P^{(i,i+1)}."""
        return WVector._raw(self.lam, self.reg, {_swap(w, i): x for w, x in self._c.items()})

    def to_json(self):
        return [{"index": list(w), "coeff": x.to_json()} for w, x in self.items()]

    def __repr__(self):
        if not self._c:
            return "0"
        return " + ".join(f"({x})*v{''.join(map(str, w))}" for w, x in self.items())


def _require_symbolic(sc, what):
    if not sc.symbolic_z:
        raise ValueError(f"{what} needs symbolic z (functions are stored by value at one point)")


def _swap_z_map(sc, i):
    return {f"z{i}": sc.z[i], f"z{i + 1}": sc.z[i - 1]}


def sn_action(kind, i, f, sc):
    """The six S_n-type operators; hat_* act on scalar functions, the rest on WVector."""
    _require_symbolic(sc, "sn_action")
    if not 1 <= i < sc.n:
        raise ValueError(f"transposition index {i} outside 1..{sc.n - 1}")
    d = sc.z[i - 1] - sc.z[i]
    h = sc.h
    sw = f.substitute(_swap_z_map(sc, i))
    if kind in ("hat_plus", "hat_minus"):
        if isinstance(f, WVector):
            raise TypeError("hat actions take scalar functions")
        if kind == "hat_plus":
            return (d + h) / d * sw - h / d * f
        return (d - h) / d * sw + h / d * f
    if not isinstance(f, WVector):
        raise TypeError(f"{kind} acts on WVector")
    Psw = sw.permute_slots(i)
    if kind == "plus":
        return Psw - sw * (h / d) + f * (h / d)
    if kind == "minus":
        return Psw + sw * (h / d) - f * (h / d)
    if kind == "tilde_plus":
        return Psw * (d / (d - h)) - sw * (h / (d - h))
    if kind == "tilde_minus":
        return Psw * (d / (d + h)) + sw * (h / (d + h))
    raise ValueError(f"unknown action kind {kind!r}")


def evaluate_at_index(f, lam, I, sc):
    """f(z_I, h): f is symmetric in the I^min blocks of z; those variables are
    moved to the slots of I and the mode's specialization is applied."""
    src = lam.imin.blocks_for(lam.N)
    dst = IndexDecomposition(_as_word(I)).blocks_for(lam.N)
    m = {}
    for A, B in zip(src, dst):
        for a, b in zip(A, B):
            m[f"z{a}"] = sc.z[b - 1]
    for s, v in sc.specialization().items():
        m.setdefault(s, v)
    if isinstance(f, RatFunc):
        return f.substitute(m)
    return RatFunc.const(sc.reg, f)


def theta_map(kind, lam, f, sc):
    """theta^{+,=,-}_lambda(f) through the xi expansion."""
    xi = build_xi("minus" if kind == "minus" else "plus", lam, sc)
    out = WVector.zero(lam, sc.reg)
    for I in lam.indices:
        Q, R = structure_scalars(I, sc)
        c = evaluate_at_index(f, lam, I, sc) / R
        if kind == "plus":
            c = c * Q
        elif kind not in ("eq", "minus"):
            raise ValueError(f"unknown theta kind {kind!r}")
        out = out + xi[I.word] * c
    return out


def theta_sum(kind, lam, f, sc):
    """theta maps by their defining sums over S_n (symbolic z only)."""
    _require_symbolic(sc, "theta_sum")
    n = sc.n
    rev = {f"z{a}": sc.z[n - a] for a in range(1, n + 1)}
    f = f if isinstance(f, RatFunc) else RatFunc.const(sc.reg, f)
    if kind == "plus":
        g, start, hat = f.substitute(rev), lam.imax.word, "hat_plus"
    elif kind == "eq":
        Qc, _ = structure_scalars(lam.imax, sc)
        g, start, hat = f.substitute(rev) / Qc, lam.imax.word, "hat_plus"
    elif kind == "minus":
        Ql, _ = structure_scalars(lam.imin, sc)
        g, start, hat = f / Ql, lam.imin.word, "hat_minus"
    else:
        raise ValueError(f"unknown theta kind {kind!r}")
    ident = tuple(range(1, n + 1))
    seen = {ident}
    frontier = [(ident, g, start)]
    acc = {}
    while frontier:
        nxt = []
        for perm, gs, word in frontier:
            acc[word] = acc[word] + gs if word in acc else gs
            for i in range(1, n):
                p2 = tuple(i + 1 if v == i else i if v == i + 1 else v for v in perm)
                if p2 not in seen:
                    seen.add(p2)
                    nxt.append((p2, sn_action(hat, i, gs, sc), _swap(word, i)))
        frontier = nxt
    norm = prod(factorial(p) for p in lam.parts)
    return WVector(lam, sc.reg, {w: c / norm for w, c in acc.items()})


class XiTable:
    """The basis xi^+_I or xi^-_I at the base point; mapping word -> WVector."""

    def __init__(self, sign, lam, sc, vectors):
        self.sign, self.lam, self.sc = sign, lam, sc
        self._v = vectors

    def __getitem__(self, I):
        return self._v[_as_word(I)]

    def __iter__(self):
        return iter(self.lam.words)

    def items(self):
        return [(w, self._v[w]) for w in self.lam.words]

    @property
    def matrix(self):
        """Columns are the xi_I in the v_I basis."""
        return _xi_matrix(self)


@lru_cache(maxsize=None)
def _xi_matrix(table):
    cols = [table[w].column() for w in table.lam.words]
    return FieldMatrix._raw(table.sc.reg, [list(r) for r in zip(*cols)])


def _normalize_sign(sign):
    if sign in ("plus", "+", 1):
        return "plus"
    if sign in ("minus", "-", -1):
        return "minus"
    raise ValueError(f"unknown sign {sign!r}")


def build_xi(sign, lam, sc):
    return _build_xi(_normalize_sign(sign), lam, sc)


def xi_matrix(sign, lam, sc):
    return build_xi(sign, lam, sc).matrix


def _tilde_at(sign, i, vec, d, h):
    # ((d P -+ h) / (d -+ h)) applied to vec, z already permuted by the caller
    den = d - h if sign == "plus" else d + h
    a = d / den
    b = -h / den if sign == "plus" else h / den
    out = {}
    for w, x in vec.items():
        pw = _swap(w, i)
        y = out.get(pw)
        t = x * a
        out[pw] = t if y is None else y + t
        y = out.get(w)
        t = x * b
        out[w] = t if y is None else y + t
    return {w: x for w, x in out.items() if not x.is_zero()}


@lru_cache(maxsize=None)
def _build_xi(sign, lam, sc):
    base = lam.imin.word if sign == "plus" else lam.imax.word
    one = sc.one
    memo = {}

    def steps(word):
        # transpositions moving word one step toward the base index
        if sign == "plus":
            return [i for i in range(1, lam.n) if word[i - 1] > word[i]]
        return [i for i in range(1, lam.n) if word[i - 1] < word[i]]

    def via(word, perm, i):
        prev = at(_swap(word, i), _swap(perm, i))
        d = sc.z[perm[i - 1]] - sc.z[perm[i]]
        return _tilde_at(sign, i, prev, d, sc.h)

    def at(word, perm):
        key = (word, perm)
        if key not in memo:
            memo[key] = {base: one} if word == base else via(word, perm, steps(word)[0])
        return memo[key]

    ident = tuple(range(sc.n))
    vectors = {}
    for w in lam.words:
        v = at(w, ident)
        for i in steps(w)[1:]:
            if via(w, ident, i) != v:
                raise RuntimeError(f"xi recursion is path dependent at {w} (sign {sign})")
        vectors[w] = WVector._raw(lam, sc.reg, dict(v))
    return XiTable(sign, lam, sc, vectors)


def shapovalov(f, g):
    f._check(g)
    acc = RatFunc.const(f.reg, 0)
    for w, x in f._c.items():
        y = g._c.get(w)
        if y is not None:
            acc = acc + x * y
    return acc


def gl_action(i, j, f):
    """Pointwise e_{i,j}; the result lives in weight lambda + e_i - e_j."""
    if i == j:
        return f * f.lam.parts[i - 1]
    lam2 = f.lam.shifted(i, j)
    if lam2 is None:
        return WVector.zero(f.lam, f.reg)
    out = {}
    for w, x in f._c.items():
        for a, c in enumerate(w):
            if c == j:
                w2 = w[:a] + (i,) + w[a + 1:]
                y = out.get(w2)
                out[w2] = x if y is None else y + x
    return WVector._raw(lam2, f.reg, {w: x for w, x in out.items() if not x.is_zero()})


def pi_tilde(f, sc):
    """Reverse the tensor slots and substitute z_a -> z_{n+1-a}."""
    _require_symbolic(sc, "pi_tilde")
    n = sc.n
    rev = {f"z{a}": sc.z[n - a] for a in range(1, n + 1)}
    return WVector(f.lam, f.reg, {tuple(reversed(w)): x.substitute(rev) for w, x in f._c.items()})


@lru_cache(maxsize=None)
def _distinguished(kind, lam, sc):
    if kind == "plus":
        return WVector(lam, sc.reg, {w: 1 for w in lam.words})
    return theta_map(kind, lam, sc.one, sc)


def v_plus(lam, sc):
    return _distinguished("plus", lam, sc)


def v_eq(lam, sc):
    return _distinguished("eq", lam, sc)


def v_minus(lam, sc):
    return _distinguished("minus", lam, sc)
