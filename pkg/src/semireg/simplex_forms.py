"""Polynomial differential forms on standard simplices, tensored with
Laurent differential forms on a chart.

A ``MixedForm`` lives in the graded-commutative algebra generated by
simplex coordinates t1..tn (t0 eliminated), chart coordinates y1..ym, and
the odd generators dt1..dtn, dy1..dym, ordered in that sequence.  With
m = 0 this is the algebra A_n of the simplex; the alias ``SimplexForm``
refers to that case.
"""

from fractions import Fraction
from math import factorial

ZERO = Fraction(0)
ONE = Fraction(1)

_SIGN = {}


def merge_sign(m1, m2):
    """Sign of reordering (odd generators in m1)(odd generators in m2)."""
    key = (m1, m2)
    s = _SIGN.get(key)
    if s is None:
        cnt = 0
        x = m2
        while x:
            low = x & -x
            j = low.bit_length() - 1
            cnt += bin(m1 >> (j + 1)).count("1")
            x ^= low
        s = -1 if cnt & 1 else 1
        _SIGN[key] = s
    return s


def _popcount_below(m, i):
    return bin(m & ((1 << i) - 1)).count("1")


class FormError(ValueError):
    pass


class MixedForm:
    __slots__ = ("nt", "ny", "terms")

    def __init__(self, nt, ny=0, terms=None):
        self.nt = nt
        self.ny = ny
        self.terms = {}
        if terms:
            for (e, m), c in terms.items():
                c = Fraction(c)
                if c:
                    k = (tuple(e), m)
                    v = self.terms.get(k, ZERO) + c
                    if v:
                        self.terms[k] = v
                    else:
                        self.terms.pop(k, None)

    @staticmethod
    def _raw(nt, ny, terms):
        f = MixedForm.__new__(MixedForm)
        f.nt, f.ny, f.terms = nt, ny, terms
        return f

    # constructors
    @classmethod
    def const(cls, c, nt, ny=0):
        c = Fraction(c)
        return cls._raw(nt, ny, {((0,) * (nt + ny), 0): c} if c else {})

    @classmethod
    def zero(cls, nt, ny=0):
        return cls._raw(nt, ny, {})

    @classmethod
    def t(cls, i, nt, ny=0):
        """Barycentric coordinate t_i, i = 0..nt (t0 = 1 - sum)."""
        if i == 0:
            out = {((0,) * (nt + ny), 0): ONE}
            for j in range(nt):
                e = [0] * (nt + ny)
                e[j] = 1
                out[(tuple(e), 0)] = -ONE
            return cls._raw(nt, ny, out)
        e = [0] * (nt + ny)
        e[i - 1] = 1
        return cls._raw(nt, ny, {(tuple(e), 0): ONE})

    @classmethod
    def dt(cls, i, nt, ny=0):
        if i == 0:
            return cls._raw(nt, ny, {((0,) * (nt + ny), 1 << j): -ONE for j in range(nt)})
        return cls._raw(nt, ny, {((0,) * (nt + ny), 1 << (i - 1)): ONE})

    @classmethod
    def y(cls, k, nt, ny, power=1):
        e = [0] * (nt + ny)
        e[nt + k] = power
        return cls._raw(nt, ny, {(tuple(e), 0): ONE})

    @classmethod
    def dy(cls, k, nt, ny):
        return cls._raw(nt, ny, {((0,) * (nt + ny), 1 << (nt + k)): ONE})

    def zero_like(self):
        return MixedForm._raw(self.nt, self.ny, {})

    # basic algebra
    def _check(self, other):
        if self.nt != other.nt or self.ny != other.ny:
            raise FormError(f"level mismatch: ({self.nt},{self.ny}) vs ({other.nt},{other.ny})")

    def __add__(self, other):
        if not isinstance(other, MixedForm):
            other = MixedForm.const(other, self.nt, self.ny)
        self._check(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k)
            if v is None:
                out[k] = c
            else:
                v += c
                if v:
                    out[k] = v
                else:
                    del out[k]
        return MixedForm._raw(self.nt, self.ny, out)

    __radd__ = __add__

    def __neg__(self):
        return MixedForm._raw(self.nt, self.ny, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MixedForm):
            other = MixedForm.const(other, self.nt, self.ny)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return self.zero_like()
        return MixedForm._raw(self.nt, self.ny, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MixedForm):
            return self.scale(other)
        self._check(other)
        out = {}
        a, b = self.terms, other.terms
        if not a or not b:
            return self.zero_like()
        for (e1, m1), c1 in a.items():
            for (e2, m2), c2 in b.items():
                if m1 & m2:
                    continue
                e = tuple(x + y for x, y in zip(e1, e2))
                k = (e, m1 | m2)
                c = c1 * c2
                if merge_sign(m1, m2) < 0:
                    c = -c
                v = out.get(k)
                if v is None:
                    out[k] = c
                else:
                    v += c
                    if v:
                        out[k] = v
                    else:
                        del out[k]
        return MixedForm._raw(self.nt, self.ny, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if isinstance(other, MixedForm):
            return self.nt == other.nt and self.ny == other.ny and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.nt, self.ny, frozenset(self.terms.items())))

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    # gradings
    def degrees(self):
        return {bin(m).count("1") for (_, m) in self.terms}

    def degree(self):
        ds = self.degrees()
        if len(ds) > 1:
            raise FormError("form is not homogeneous")
        return ds.pop() if ds else None

    def dt_degree_part(self, k):
        """Terms with exactly k dt factors."""
        lowmask = (1 << self.nt) - 1
        return MixedForm._raw(self.nt, self.ny, {
            key: c for key, c in self.terms.items() if bin(key[1] & lowmask).count("1") == k})

    def dy_degree_part(self, k):
        sh = self.nt
        return MixedForm._raw(self.nt, self.ny, {
            key: c for key, c in self.terms.items() if bin(key[1] >> sh).count("1") == k})

    def truncate_dy(self, maxdeg):
        sh = self.nt
        return MixedForm._raw(self.nt, self.ny, {
            key: c for key, c in self.terms.items() if bin(key[1] >> sh).count("1") <= maxdeg})

    def parity(self):
        """(-1)^deg applied termwise."""
        return MixedForm._raw(self.nt, self.ny, {
            (e, m): (-c if bin(m).count("1") & 1 else c) for (e, m), c in self.terms.items()})

    # differentials
    def _d_range(self, lo, hi):
        out = {}
        for (e, m), c in self.terms.items():
            for i in range(lo, hi):
                a = e[i]
                bit = 1 << i
                if not a or m & bit:
                    continue
                f = list(e)
                f[i] -= 1
                v = c * a
                if _popcount_below(m, i) & 1:
                    v = -v
                k = (tuple(f), m | bit)
                w = out.get(k, ZERO) + v
                if w:
                    out[k] = w
                else:
                    out.pop(k, None)
        return MixedForm._raw(self.nt, self.ny, out)

    def d_t(self):
        return self._d_range(0, self.nt)

    def d_y(self):
        return self._d_range(self.nt, self.nt + self.ny)

    def d(self):
        return self._d_range(0, self.nt + self.ny)

    def partial_y(self, k):
        """Even derivation d/dy_k on coefficients."""
        i = self.nt + k
        out = {}
        for (e, m), c in self.terms.items():
            a = e[i]
            if a:
                f = list(e)
                f[i] -= 1
                out[(tuple(f), m)] = c * a
        return MixedForm._raw(self.nt, self.ny, out)

    # maps between levels
    def coface(self, k):
        """Pullback along the k-th coface map A_n -> A_{n-1}."""
        n = self.nt
        if n < 1 or not 0 <= k <= n:
            raise FormError("coface index out of range")
        ny = self.ny
        if k >= 1:
            out = {}
            kb = 1 << (k - 1)
            for (e, m), c in self.terms.items():
                if e[k - 1] or m & kb:
                    continue
                f = e[:k - 1] + e[k:]
                low = m & (kb - 1)
                high = m >> k
                mm = low | (high << (k - 1))
                key = (f, mm)
                w = out.get(key, ZERO) + c
                if w:
                    out[key] = w
                else:
                    out.pop(key, None)
            return MixedForm._raw(n - 1, ny, out)
        images = [MixedForm.t(0, n - 1, ny)] + [MixedForm.t(i, n - 1, ny) for i in range(1, n)]
        return self.substitute_t(images)

    def substitute_t(self, images):
        """Algebra map on the t-variables (dt_i -> d_t(image_i)); y untouched."""
        n = self.nt
        tgt_nt = images[0].nt
        ny = self.ny
        dimgs = [im.d_t() for im in images]
        powcache = {}

        def pw(i, a):
            key = (i, a)
            r = powcache.get(key)
            if r is None:
                r = MixedForm.const(1, tgt_nt, ny)
                for _ in range(a):
                    r = r * images[i]
                powcache[key] = r
            return r

        out = MixedForm.zero(tgt_nt, ny)
        for (e, m), c in self.terms.items():
            term = MixedForm._raw(tgt_nt, ny, {((0,) * tgt_nt + e[n:], m >> n << tgt_nt): c})
            prefix = MixedForm.const(1, tgt_nt, ny)
            for i in range(n):
                if e[i]:
                    prefix = prefix * pw(i, e[i])
            for i in range(n):
                if m & (1 << i):
                    prefix = prefix * dimgs[i]
            out = out + prefix * term
        return out

    def lift_level(self, nt):
        """View a t-free form at level nt (constant along the simplex)."""
        if self.nt != 0:
            if self.nt == nt:
                return self
            raise FormError("only t-free forms can be lifted")
        pad = (0,) * nt
        return MixedForm._raw(nt, self.ny, {(pad + e, m << nt): c for (e, m), c in self.terms.items()})

    def split_t(self):
        """Iterate (t-part key, y-part key, coefficient)."""
        n = self.nt
        for (e, m), c in self.terms.items():
            yield (e[:n], m & ((1 << n) - 1)), (e[n:], m >> n), c

    def substitute_y(self, images, cache=None):
        """Apply a y-substitution given by t-free, dy-free MixedForms (nt=0).

        dy_k maps to d(image_k); negative powers require unit monomial images.
        """
        n, ny = self.nt, self.ny
        tny = images[0].ny if images else 0
        if cache is None:
            cache = {}
        ypart_cache = cache.setdefault("ypart", {})
        dimgs = cache.get("dimgs")
        if dimgs is None:
            dimgs = [im.d_y() for im in images]
            cache["dimgs"] = dimgs
        pows = cache.setdefault("pows", {})

        def pw(k, a):
            key = (k, a)
            r = pows.get(key)
            if r is None:
                im = images[k]
                if a < 0:
                    if len(im.terms) != 1:
                        raise FormError("negative power of a non-monomial image")
                    (ee, mm), cc = next(iter(im.terms.items()))
                    base = MixedForm._raw(0, tny, {(tuple(-x for x in ee), 0): 1 / cc})
                    a2 = -a
                else:
                    base = im
                    a2 = a
                r = MixedForm.const(1, 0, tny)
                for _ in range(a2):
                    r = r * base
                pows[key] = r
            return r

        out = {}
        for (tk, mt), (ye, ym), c in self.split_t():
            yk = (ye, ym)
            img = ypart_cache.get(yk)
            if img is None:
                img = MixedForm.const(1, 0, tny)
                for k, a in enumerate(ye):
                    if a:
                        img = img * pw(k, a)
                for k in range(ny):
                    if ym & (1 << k):
                        img = img * dimgs[k]
                ypart_cache[yk] = img
            for (ie, im), ic in img.terms.items():
                key = (tk + ie, mt | (im << n))
                v = out.get(key, ZERO) + c * ic
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
        return MixedForm._raw(n, tny, out)

    def integrate(self):
        """Integrate over the simplex: keeps the part of full dt-degree.

        Uses the Dirichlet formula with dt1..dtn positively oriented.
        Returns a t-free MixedForm (nt = 0).
        """
        n = self.nt
        full = (1 << n) - 1
        out = {}
        for (e, m), c in self.terms.items():
            if m & full != full:
                continue
            a = e[:n]
            num = 1
            for x in a:
                num *= factorial(x)
            v = c * Fraction(num, factorial(n + sum(a)))
            key = (e[n:], m >> n)
            w = out.get(key, ZERO) + v
            if w:
                out[key] = w
            else:
                out.pop(key, None)
        return MixedForm._raw(0, self.ny, out)

    def constant(self):
        return self.terms.get(((0,) * (self.nt + self.ny), 0), ZERO)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (e, m), c in sorted(self.terms.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            fac = []
            for i, a in enumerate(e):
                if a:
                    name = f"t{i + 1}" if i < self.nt else f"y{i - self.nt + 1}"
                    fac.append(name if a == 1 else f"{name}^{a}")
            for i in range(self.nt + self.ny):
                if m & (1 << i):
                    fac.append(f"dt{i + 1}" if i < self.nt else f"dy{i - self.nt + 1}")
            s = str(c)
            parts.append(s + ("*" + "*".join(fac) if fac else ""))
        return " + ".join(parts)


SimplexForm = MixedForm


def simplex_form(level, terms):
    """Build an element of A_level from (coef, exponents, dt-subset) triples.

    Exponents refer to t1..tn; subsets list indices in 1..n in wedge order.
    """
    out = MixedForm.zero(level)
    for c, exps, S in terms:
        f = MixedForm._raw(level, 0, {(tuple(exps), 0): Fraction(c)}) if Fraction(c) else MixedForm.zero(level)
        for i in S:
            f = f * MixedForm.dt(i, level)
        out = out + f
    return out


def form_wedge(a, b):
    return a * b


def form_d(a):
    return a.d_t()


def coface_pullback(k, a):
    return a.coface(k)


def integrate_top(a):
    """Integral over the standard simplex; a rational number."""
    if a.ny:
        raise FormError("integrate_top expects a pure simplex form")
    if a.nt == 0:
        return a.constant()
    return a.integrate().constant()


def whitney_form(positions, nt, ny=0):
    """p! * sum_k (-1)^k t_{a_k} dt_{a_0}..^..dt_{a_p} for vertex positions a."""
    p = len(positions) - 1
    out = MixedForm.zero(nt, ny)
    for k, ak in enumerate(positions):
        f = MixedForm.t(ak, nt, ny)
        for j, aj in enumerate(positions):
            if j != k:
                f = f * MixedForm.dt(aj, nt, ny)
        out = out + (f if k % 2 == 0 else -f)
    return out.scale(factorial(p))
