"""Exact arithmetic: rationals, sparse Laurent polynomials, matrices, and
linear algebra over Q."""

from fractions import Fraction
from itertools import product as _iproduct

Rat = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


class RingError(ValueError):
    pass


def _profile(p):
    return (p.nvars, p.inv)


class LaurentPoly:
    """Sparse polynomial in ``nvars`` variables with rational coefficients.

    Negative exponents are allowed only for variables flagged in ``inv``.
    ``weights`` optionally assigns each variable a vector in Z^g.
    """

    __slots__ = ("nvars", "inv", "terms", "weights")

    def __init__(self, nvars, terms=None, inv=None, weights=None, check=True):
        self.nvars = nvars
        self.inv = tuple(bool(b) for b in inv) if inv is not None else (False,) * nvars
        if len(self.inv) != nvars:
            raise RingError("invertible mask has wrong length")
        self.weights = tuple(tuple(w) for w in weights) if weights is not None else None
        if self.weights is not None:
            if len(self.weights) != nvars or len({len(w) for w in self.weights}) > 1:
                raise RingError("weight grading must give one vector per variable")
        out = {}
        if terms:
            for e, c in terms.items():
                e = tuple(e)
                c = Fraction(c)
                if c == 0:
                    continue
                if check:
                    if len(e) != nvars:
                        raise RingError("exponent vector has wrong length")
                    for k, a in enumerate(e):
                        if a < 0 and not self.inv[k]:
                            raise RingError(f"negative exponent on non-invertible variable {k}")
                out[e] = out.get(e, ZERO) + c
                if out[e] == 0:
                    del out[e]
        self.terms = out

    # constructors
    def _new(self, terms):
        p = LaurentPoly.__new__(LaurentPoly)
        p.nvars, p.inv, p.weights = self.nvars, self.inv, self.weights
        p.terms = terms
        return p

    @classmethod
    def const(cls, c, nvars, inv=None, weights=None):
        return cls(nvars, {(0,) * nvars: c}, inv, weights)

    @classmethod
    def var(cls, k, nvars, inv=None, weights=None, power=1):
        e = [0] * nvars
        e[k] = power
        return cls(nvars, {tuple(e): 1}, inv, weights)

    def like(self, terms):
        return LaurentPoly(self.nvars, terms, self.inv, self.weights)

    def zero(self):
        return self._new({})

    def one(self):
        return self._new({(0,) * self.nvars: ONE})

    # arithmetic
    def _check(self, other):
        if _profile(self) != _profile(other):
            raise RingError("variable profile mismatch")

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        return self._new({(0,) * self.nvars: Fraction(other)} if other != 0 else {})

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, ZERO) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            c = Fraction(other)
            if c == 0:
                return self._new({})
            return self._new({e: v * c for e, v in self.terms.items()})
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, ZERO) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return self._new(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        r = self.one()
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def is_unit_monomial(self):
        if len(self.terms) != 1:
            return False
        (e, _), = self.terms.items()
        return all(a == 0 or self.inv[k] for k, a in enumerate(e))

    def inverse(self):
        if not self.is_unit_monomial():
            raise RingError("only monomials in invertible variables can be inverted")
        (e, c), = self.terms.items()
        return self._new({tuple(-a for a in e): 1 / c})

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return _profile(self) == _profile(other) and self.terms == other.terms
        try:
            return self.terms == self._coerce(other).terms
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.nvars, self.inv, frozenset(self.terms.items())))

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items())

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, ZERO)

    def derivative(self, k):
        out = {}
        for e, c in self.terms.items():
            a = e[k]
            if a:
                f = list(e)
                f[k] -= 1
                out[tuple(f)] = c * a
        return self._new(out)

    def with_profile(self, inv, weights=None):
        """Reinterpret in a ring with a larger set of invertible variables."""
        return LaurentPoly(self.nvars, self.terms, inv, weights if weights is not None else self.weights)

    # grading
    def monomial_weight(self, e):
        if self.weights is None:
            raise RingError("ring carries no weight grading")
        g = len(self.weights[0]) if self.weights else 0
        w = [0] * g
        for k, a in enumerate(e):
            if a:
                for i in range(g):
                    w[i] += a * self.weights[k][i]
        return tuple(w)

    def weight(self):
        """Weight of a homogeneous polynomial (None for zero)."""
        ws = {self.monomial_weight(e) for e in self.terms}
        if len(ws) > 1:
            raise RingError("polynomial is not weight-homogeneous")
        return ws.pop() if ws else None

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mon = "*".join(f"x{k}^{a}" if a != 1 else f"x{k}" for k, a in enumerate(e) if a)
            parts.append(f"{c}" + (f"*{mon}" if mon else ""))
        return " + ".join(parts)


def poly_arith(a, b, op):
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "sub":
        return a - b
    raise ValueError(f"unknown op {op!r}")


def ring_map(p, images, target=None):
    """Ring homomorphism sending variable k of ``p`` to ``images[k]``.

    Invertible variables must map to monomials in invertible variables of
    the target ring, so that negative powers make sense.
    """
    if len(images) != p.nvars:
        raise RingError("need one image per variable")
    if target is None:
        if not images:
            raise RingError("target ring unknown")
        target = images[0]
    for k in range(p.nvars):
        if p.inv[k] and not images[k].is_unit_monomial():
            raise RingError(f"image of invertible variable {k} is not a unit monomial")
    out = target.zero()
    cache = {}

    def power(k, a):
        key = (k, a)
        if key not in cache:
            cache[key] = images[k] ** a
        return cache[key]

    for e, c in p.terms.items():
        term = target.one() * c
        for k, a in enumerate(e):
            if a:
                term = term * power(k, a)
        out = out + term
    return out


class PolyMatrix:
    """Dense matrix of LaurentPoly entries over a single ring."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        self.entries = [list(r) for r in entries]
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.rows else 0
        if any(len(r) != self.cols for r in self.entries):
            raise RingError("ragged matrix")

    @classmethod
    def identity(cls, n, ring):
        return cls([[ring.one() if i == j else ring.zero() for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, r, c, ring):
        return cls([[ring.zero() for _ in range(c)] for _ in range(r)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __add__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise RingError("shape mismatch")
        return PolyMatrix([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)])

    def __neg__(self):
        return PolyMatrix([[-a for a in r] for r in self.entries])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, PolyMatrix):
            return PolyMatrix([[a * other for a in r] for r in self.entries])
        if self.cols != other.rows:
            raise RingError("shape mismatch")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = None
                for k in range(self.cols):
                    a = self.entries[i][k]
                    b = other.entries[k][j]
                    if a.terms and b.terms:
                        acc = a * b if acc is None else acc + a * b
                row.append(acc if acc is not None else (self.entries[i][0] if self.cols else other.entries[0][j]).zero())
            out.append(row)
        return PolyMatrix(out)

    __rmul__ = __mul__

    def trace(self):
        if self.rows != self.cols:
            raise RingError("trace of non-square matrix")
        acc = self.entries[0][0].zero()
        for i in range(self.rows):
            acc = acc + self.entries[i][i]
        return acc

    def kronecker(self, other):
        out = []
        for i in range(self.rows):
            for k in range(other.rows):
                out.append([self.entries[i][j] * other.entries[k][l]
                            for j in range(self.cols) for l in range(other.cols)])
        return PolyMatrix(out)

    def transpose(self):
        return PolyMatrix([[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def map(self, fn):
        return PolyMatrix([[fn(a) for a in r] for r in self.entries])

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.entries == other.entries

    def is_zero(self):
        return all(not a.terms for r in self.entries for a in r)

    def __repr__(self):
        return "PolyMatrix(" + repr(self.entries) + ")"


def matrix_ops(A, B, op):
    if op == "mul":
        return A * B
    if op == "add":
        return A + B
    if op == "trace":
        return A.trace()
    if op == "kronecker":
        return A.kronecker(B)
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------- linear algebra

def rref(rows, ncols=None):
    """Reduced row echelon form of a list of Fraction rows.

    Returns (reduced rows, pivot columns)."""
    m = [list(r) for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    piv = []
    r = 0
    for c in range(ncols):
        p = None
        for i in range(r, len(m)):
            if m[i][c] != 0:
                p = i
                break
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        piv.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], piv


def rank(rows, ncols=None):
    return len(rref(rows, ncols)[1])


def nullspace(rows, ncols):
    """Basis of {x : A x = 0} for A given by rows."""
    red, piv = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for i, p in enumerate(piv):
            v[p] = -red[i][f]
        basis.append(v)
    return basis


def columns_to_rows(cols, nrows):
    return [[c[i] for c in cols] for i in range(nrows)]


def solve(rows, rhs, ncols):
    """One solution x of A x = rhs, or None if inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, piv = rref(aug, ncols + 1)
    if ncols in piv:
        return None
    x = [ZERO] * ncols
    for i, p in enumerate(piv):
        x[p] = red[i][ncols]
    return x


def span_basis(vectors, dim):
    """Row-reduced basis of the span of the given vectors."""
    red, _ = rref(vectors, dim)
    return red


# ---------------------------------------------------------------- weight slices

def _slice_monomials(ring, weight, shift, box):
    lo, hi = box
    out = []
    for e in _iproduct(range(lo, hi + 1), repeat=ring.nvars):
        if any(a < 0 and not ring.inv[k] for k, a in enumerate(e)):
            continue
        w = ring.monomial_weight(e)
        if tuple(a + b for a, b in zip(w, shift)) == tuple(weight):
            out.append(e)
    return out


def weight_slice_solve(M, weight, row_weights, col_weights, box=(-6, 6)):
    """Restrict the module map ``M`` (columns = source basis) to one weight.

    Source basis j carries weight ``col_weights[j]``, target basis i carries
    ``row_weights[i]``; the slice is enumerated over exponent vectors in the
    box.  Returns a dict with kernel basis, image basis and cokernel
    dimension (coordinates refer to the listed slice bases).
    """
    ring = None
    for r in M.entries:
        for a in r:
            ring = a
            break
        break
    if ring is None or ring.weights is None:
        raise RingError("weight-graded ring required")
    for i in range(M.rows):
        for j in range(M.cols):
            a = M.entries[i][j]
            for e in a.terms:
                w = a.monomial_weight(e)
                expect = tuple(x - y for x, y in zip(row_weights[i], col_weights[j]))
                if w != expect:
                    raise RingError(f"entry ({i},{j}) is not homogeneous of the required weight")
    src = [(j, e) for j in range(M.cols) for e in _slice_monomials(ring, weight, col_weights[j], box)]
    tgt = [(i, e) for i in range(M.rows) for e in _slice_monomials(ring, weight, row_weights[i], box)]
    tindex = {b: k for k, b in enumerate(tgt)}
    cols = []
    for j, e in src:
        v = [ZERO] * len(tgt)
        for i in range(M.rows):
            for f, c in M.entries[i][j].terms.items():
                key = (i, tuple(a + b for a, b in zip(e, f)))
                if key not in tindex:
                    raise RingError("image leaves the enumeration box; enlarge it")
                v[tindex[key]] += c
        cols.append(v)
    rows = columns_to_rows(cols, len(tgt))
    ker = nullspace(rows, len(src)) if src else []
    img = span_basis(cols, len(tgt)) if cols else []
    return {
        "source_basis": src,
        "target_basis": tgt,
        "kernel": ker,
        "image": img,
        "kernel_dim": len(ker),
        "image_dim": len(img),
        "cokernel_dim": len(tgt) - len(img),
    }
