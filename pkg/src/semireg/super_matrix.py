"""Graded matrices with differential-form coefficients.

Convention: form coefficients sit to the left of the operator part, so an
entry (r, c) stands for ``f * E_rc`` with E_rc of Hom-degree
``rdeg[r] - cdeg[c]``.  Moving an operator of odd degree past a form
coefficient produces the Koszul sign, which is where ``tw`` enters the
product.
"""

from fractions import Fraction

from .simplex_forms import MixedForm


def tw(f, h):
    return f.parity() if h & 1 else f


class FormMatrix:
    __slots__ = ("rdeg", "cdeg", "nt", "ny", "ent")

    def __init__(self, rdeg, cdeg, nt, ny, ent=None):
        self.rdeg = tuple(rdeg)
        self.cdeg = tuple(cdeg)
        self.nt = nt
        self.ny = ny
        self.ent = {}
        if ent:
            for k, f in ent.items():
                if f.terms:
                    self.ent[k] = f

    @classmethod
    def _raw(cls, rdeg, cdeg, nt, ny, ent):
        m = cls.__new__(cls)
        m.rdeg, m.cdeg, m.nt, m.ny, m.ent = rdeg, cdeg, nt, ny, ent
        return m

    @classmethod
    def zero(cls, rdeg, cdeg, nt, ny):
        return cls._raw(tuple(rdeg), tuple(cdeg), nt, ny, {})

    @classmethod
    def identity(cls, deg, nt, ny):
        one = MixedForm.const(1, nt, ny)
        return cls._raw(tuple(deg), tuple(deg), nt, ny, {(i, i): one for i in range(len(deg))})

    @classmethod
    def scalar(cls, f):
        return cls._raw((0,), (0,), f.nt, f.ny, {(0, 0): f} if f.terms else {})

    def like(self, ent):
        return FormMatrix._raw(self.rdeg, self.cdeg, self.nt, self.ny, ent)

    def zero_like(self):
        return self.like({})

    @property
    def shape(self):
        return (len(self.rdeg), len(self.cdeg))

    def get(self, r, c):
        f = self.ent.get((r, c))
        return f if f is not None else MixedForm.zero(self.nt, self.ny)

    def hom_degree(self, r, c):
        return self.rdeg[r] - self.cdeg[c]

    # linear structure
    def __add__(self, other):
        if self.rdeg != other.rdeg or self.cdeg != other.cdeg:
            raise ValueError("shape mismatch")
        out = dict(self.ent)
        for k, f in other.ent.items():
            g = out.get(k)
            if g is None:
                out[k] = f
            else:
                s = g + f
                if s.terms:
                    out[k] = s
                else:
                    del out[k]
        return self.like(out)

    def __neg__(self):
        return self.like({k: -f for k, f in self.ent.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return self.zero_like()
        return self.like({k: f.scale(c) for k, f in self.ent.items()})

    def left_mul(self, f):
        """Multiply by a scalar form from the left."""
        out = {}
        for k, g in self.ent.items():
            h = f * g
            if h.terms:
                out[k] = h
        return self.like(out)

    def __mul__(self, other):
        if not isinstance(other, FormMatrix):
            return self.scale(other)
        if self.cdeg != other.rdeg:
            raise ValueError("shape mismatch in product")
        rows = {}
        for (c, c2), g in other.ent.items():
            rows.setdefault(c, []).append((c2, g))
        out = {}
        twc = {}
        for (r, c), f in self.ent.items():
            h = self.rdeg[r] - self.cdeg[c]
            for c2, g in rows.get(c, ()):
                if h & 1:
                    key = (c, c2)
                    gg = twc.get(key)
                    if gg is None:
                        gg = g.parity()
                        twc[key] = gg
                else:
                    gg = g
                p = f * gg
                if p.terms:
                    k = (r, c2)
                    q = out.get(k)
                    if q is None:
                        out[k] = p
                    else:
                        s = q + p
                        if s.terms:
                            out[k] = s
                        else:
                            del out[k]
        return FormMatrix._raw(self.rdeg, other.cdeg, self.nt, self.ny, out)

    def __eq__(self, other):
        return (isinstance(other, FormMatrix) and self.rdeg == other.rdeg
                and self.cdeg == other.cdeg and self.ent == other.ent)

    def is_zero(self):
        return not self.ent

    def map_forms(self, fn, nt=None, ny=None):
        out = {}
        for k, f in self.ent.items():
            g = fn(f)
            if g.terms:
                out[k] = g
        return FormMatrix._raw(self.rdeg, self.cdeg,
                               self.nt if nt is None else nt, self.ny if ny is None else ny, out)

    def map_entries(self, fn, nt=None, ny=None):
        """fn(r, c, form) -> form."""
        out = {}
        for (r, c), f in self.ent.items():
            g = fn(r, c, f)
            if g.terms:
                out[(r, c)] = g
        return FormMatrix._raw(self.rdeg, self.cdeg,
                               self.nt if nt is None else nt, self.ny if ny is None else ny, out)

    def total_parity(self):
        """(-1)^{total degree} applied termwise."""
        return self.map_entries(lambda r, c, f: -f.parity() if (self.rdeg[r] - self.cdeg[c]) & 1 else f.parity())

    def degrees(self):
        ds = set()
        for (r, c), f in self.ent.items():
            h = self.rdeg[r] - self.cdeg[c]
            for d in f.degrees():
                ds.add(d + h)
        return ds

    def degree(self):
        ds = self.degrees()
        if len(ds) > 1:
            raise ValueError("matrix is not homogeneous")
        return ds.pop() if ds else None

    def supertrace(self):
        if self.rdeg != self.cdeg:
            raise ValueError("supertrace of a non-endomorphism")
        acc = MixedForm.zero(self.nt, self.ny)
        for i, d in enumerate(self.rdeg):
            f = self.ent.get((i, i))
            if f is not None:
                acc = acc + (f if d % 2 == 0 else -f)
        return acc

    def trace(self):
        """Plain trace, ignoring the grading sign."""
        acc = MixedForm.zero(self.nt, self.ny)
        for i in range(len(self.rdeg)):
            f = self.ent.get((i, i))
            if f is not None:
                acc = acc + f
        return acc

    def commutator(self, other):
        """Graded commutator [X, Y] = XY - (-1)^{|X||Y|} YX, termwise in degree."""
        return self * other - _signed_swap(self, other)

    def __repr__(self):
        return "FormMatrix(" + ", ".join(f"{k}: {f}" for k, f in sorted(self.ent.items())) + ")"


def split_by_parity(X):
    """Split a matrix into its even and odd total-degree parts."""
    ev, od = {}, {}
    for (r, c), f in X.ent.items():
        h = X.rdeg[r] - X.cdeg[c]
        e, o = {}, {}
        for (ex, m), v in f.terms.items():
            if (bin(m).count("1") + h) & 1:
                o[(ex, m)] = v
            else:
                e[(ex, m)] = v
        if e:
            ev[(r, c)] = MixedForm._raw(f.nt, f.ny, e)
        if o:
            od[(r, c)] = MixedForm._raw(f.nt, f.ny, o)
    return X.like(ev), X.like(od)


def _signed_swap(X, Y):
    """(-1)^{|X||Y|} Y X for possibly inhomogeneous X, Y."""
    xe, xo = split_by_parity(X)
    ye, yo = split_by_parity(Y)
    return Y * X - (yo * xo).scale(2)


def kron(A, B):
    """Graded tensor product of operators with form coefficients.

    Basis of the product is e_r (x) e_s in lexicographic order.
    """
    nt, ny = A.nt, A.ny
    na, nb = len(A.rdeg), len(B.rdeg)
    rdeg = tuple(A.rdeg[i] + B.rdeg[k] for i in range(na) for k in range(nb))
    ma, mb = len(A.cdeg), len(B.cdeg)
    cdeg = tuple(A.cdeg[j] + B.cdeg[l] for j in range(ma) for l in range(mb))
    out = {}
    for (i, j), f in A.ent.items():
        for (k, l), g in B.ent.items():
            # (f E_ij) (x) (g E_kl) = (-1)^{|E_ij| |g|} f g (E_ij (x) E_kl)
            # and (E_ij (x) E_kl)(e_j (x) e_l) = (-1)^{|E_kl| deg j} e_i (x) e_k
            h = A.rdeg[i] - A.cdeg[j]
            p = f * tw(g, h)
            if (B.rdeg[k] - B.cdeg[l]) * A.cdeg[j] & 1:
                p = -p
            if p.terms:
                key = (i * nb + k, j * mb + l)
                q = out.get(key)
                out[key] = p if q is None else q + p
    return FormMatrix(rdeg, cdeg, nt, ny, out)


class AlgVal:
    """Value of an Omega-twisted derivation-of-pairs section on one chart:
    sum_k vec[k] * d/dy_k + mat."""

    __slots__ = ("vec", "mat")

    def __init__(self, vec, mat):
        self.vec = tuple(vec)
        self.mat = mat

    @property
    def nt(self):
        return self.mat.nt

    @property
    def ny(self):
        return self.mat.ny

    def __add__(self, other):
        return AlgVal([a + b for a, b in zip(self.vec, other.vec)], self.mat + other.mat)

    def __neg__(self):
        return AlgVal([-a for a in self.vec], -self.mat)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return AlgVal([a.scale(c) for a in self.vec], self.mat.scale(c))

    def left_mul(self, f):
        return AlgVal([f * a for a in self.vec], self.mat.left_mul(f))

    def map_forms(self, fn, nt=None, ny=None):
        return AlgVal([fn(a) for a in self.vec], self.mat.map_forms(fn, nt, ny))

    def __eq__(self, other):
        return isinstance(other, AlgVal) and self.vec == other.vec and self.mat == other.mat

    def is_zero(self):
        return all(not a.terms for a in self.vec) and self.mat.is_zero()

    def zero_like(self):
        return AlgVal([a.zero_like() for a in self.vec], self.mat.zero_like())

    def degrees(self):
        ds = set(self.mat.degrees())
        for a in self.vec:
            ds |= a.degrees()
        return ds

    def __repr__(self):
        return f"AlgVal(vec={list(self.vec)}, mat={self.mat})"
