"""Thom-Whitney totalisation of Čech objects, Whitney integration and
cohomology in weight slices.

A ``TotElement`` stores, for every ordered tuple J of chart indices of
length at most L + 1, one value written in the coordinates and frame of the
home chart min(J).  Values are ``FormMatrix`` (Hom sheaves) or ``AlgVal``
(algebroid sheaves) whose entries are MixedForms at level len(J) - 1.
"""

from fractions import Fraction
from itertools import combinations, product as _iproduct

from .exact_ring import nullspace, rank, rref, solve
from .simplex_forms import MixedForm
from .super_matrix import AlgVal, FormMatrix, split_by_parity
from .variety import AtlasError, HomSheaf, end_complex, structure_sheaf


class TotError(ValueError):
    pass


# ------------------------------------------------------------------ values

def v_coface(v, k):
    return v.map_forms(lambda f: f.coface(k), nt=v.nt - 1)


def v_dt(v):
    return v.map_forms(lambda f: f.d_t())


def v_lift(v, nt):
    return v.map_forms(lambda f: f.lift_level(nt), nt=nt)


def v_integrate(v):
    return v.map_forms(lambda f: f.integrate(), nt=0)


def v_split(v):
    """Even and odd total-degree parts."""
    if isinstance(v, FormMatrix):
        return split_by_parity(v)
    ev, od = [], []
    for a in v.vec:
        e, o = {}, {}
        for key, c in a.terms.items():
            (o if bin(key[1]).count("1") & 1 else e)[key] = c
        ev.append(MixedForm._raw(a.nt, a.ny, e))
        od.append(MixedForm._raw(a.nt, a.ny, o))
    me, mo = split_by_parity(v.mat)
    return AlgVal(ev, me), AlgVal(od, mo)


def v_degrees(v):
    return v.degrees()


# ------------------------------------------------------------------ algebroid sheaf

class AlgebroidSheaf:
    """Derivations of pairs of E: values sum_k vec[k] d/dy_k + mat, possibly
    with dy factors (the Omega^1[-1]-twisted version)."""

    kind = "algebroid"

    def __init__(self, E, name=None):
        self.E = E
        self.atlas = E.atlas
        self.kernel = end_complex(E)
        self.name = name or f"D({E.name})"
        self._tcache = {}

    def zero_value(self, nt):
        m = self.atlas.dim
        return AlgVal([MixedForm.zero(nt, m)] * m, FormMatrix.zero(self.E.degrees, self.E.degrees, nt, m))

    def transport(self, V, a, b):
        if a == b:
            return V
        at = self.atlas
        cache = self._tcache.setdefault((a, b), {})
        nt = V.nt
        J, Cs = self.E.dG_Ginv(a, b, nt)
        alpha = [at.transport_form(f, a, b, cache) for f in V.vec]
        m = at.dim
        vec = []
        for k in range(m):
            acc = MixedForm.zero(nt, m)
            for l in range(m):
                if alpha[l].terms and J[k][l].terms:
                    acc = acc + alpha[l] * J[k][l]
            vec.append(acc)
        Th = V.mat.map_forms(lambda f: at.transport_form(f, a, b, cache))
        mat = self.E.G_form(a, b, nt) * Th * self.E.Ginv_form(a, b, nt)
        for l in range(m):
            if alpha[l].terms:
                mat = mat - Cs[l].left_mul(alpha[l])
        return AlgVal(vec, mat)

    def d_V(self, V, chart):
        nt = V.nt
        if not self.E.has_differential():
            return self.zero_value(nt)
        dl = self.E.delta_form(chart, nt)
        mat = dl * V.mat - V.mat.total_parity() * dl
        for k, a in enumerate(V.vec):
            if a.terms:
                mat = mat - dl.map_forms(lambda f: f.partial_y(k)).left_mul(a.parity())
        return AlgVal([MixedForm.zero(nt, self.atlas.dim)] * self.atlas.dim, mat)

    def truncate(self, V):
        return V


def alg_act(b, x):
    """[b, x] for b an algebroid value and x a kernel value: sum b_k d_k x + [B, x]."""
    out = b.mat.commutator(x)
    for k, a in enumerate(b.vec):
        if a.terms:
            out = out + x.map_forms(lambda f: f.partial_y(k)).left_mul(a)
    return out


def _pre_bracket(X, Y):
    vec = []
    m = len(X.vec)
    for k in range(m):
        acc = Y.vec[k].zero_like()
        for l in range(m):
            if X.vec[l].terms:
                acc = acc + X.vec[l] * Y.vec[k].partial_y(l)
        vec.append(acc)
    mat = X.mat * Y.mat
    for l in range(m):
        if X.vec[l].terms:
            mat = mat + Y.mat.map_forms(lambda f: f.partial_y(l)).left_mul(X.vec[l])
    return AlgVal(vec, mat)


def alg_bracket(X, Y):
    """Graded commutator of two algebroid values."""
    xe, xo = v_split(X)
    ye, yo = v_split(Y)
    out = _pre_bracket(X, Y) - _pre_bracket(Y, X)
    return out + _pre_bracket(yo, xo).scale(2)


def anchor(V):
    return list(V.vec)


def value_bracket(x, y):
    if isinstance(x, AlgVal):
        if isinstance(y, AlgVal):
            return alg_bracket(x, y)
        return alg_act(x, y)
    if isinstance(y, AlgVal):
        # [x, b] = -(-1)^{|x||b|} [b, x]
        xe, xo = split_by_parity(x)
        ye, yo = v_split(y)
        return -(alg_act(y, x)) + alg_act(yo, xo).scale(2)
    return x.commutator(y)


# ------------------------------------------------------------------ Tot elements

def all_tuples(nchart, L):
    out = []
    for n in range(L + 1):
        out.extend(_iproduct(range(nchart), repeat=n + 1))
    return out


class TotElement:
    __slots__ = ("sheaf", "L", "comps")

    def __init__(self, sheaf, comps=None, L=None):
        self.sheaf = sheaf
        self.L = sheaf.atlas.nchart - 1 if L is None else L
        self.comps = {}
        if comps:
            for J, v in comps.items():
                if len(J) <= self.L + 1 and not v.is_zero():
                    self.comps[tuple(J)] = v

    @property
    def atlas(self):
        return self.sheaf.atlas

    def tuples(self):
        return all_tuples(self.atlas.nchart, self.L)

    def value(self, J):
        v = self.comps.get(J)
        return v if v is not None else self.sheaf.zero_value(len(J) - 1)

    def like(self, comps, sheaf=None):
        return TotElement(sheaf or self.sheaf, comps, self.L)

    def __add__(self, other):
        out = dict(self.comps)
        for J, v in other.comps.items():
            w = out.get(J)
            out[J] = v if w is None else w + v
        return self.like(out)

    def __neg__(self):
        return self.like({J: -v for J, v in self.comps.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return self.like({J: v.scale(c) for J, v in self.comps.items()})

    def map_values(self, fn, sheaf=None):
        return self.like({J: fn(J, v) for J, v in self.comps.items()}, sheaf)

    def is_zero(self):
        return all(v.is_zero() for v in self.comps.values())

    def __eq__(self, other):
        return (self - other).is_zero()

    def degrees(self):
        ds = set()
        for v in self.comps.values():
            ds |= v.degrees()
        return ds

    def degree(self):
        ds = self.degrees()
        if len(ds) > 1:
            raise TotError("element is not homogeneous")
        return ds.pop() if ds else None

    def split_parity(self):
        ev, od = {}, {}
        for J, v in self.comps.items():
            e, o = v_split(v)
            ev[J] = e
            od[J] = o
        return self.like(ev), self.like(od)

    def __repr__(self):
        return f"TotElement({self.sheaf.name}, L={self.L}, {len(self.comps)} components)"


def restrict(sheaf, v, src_tuple, dst_tuple):
    """Transport a value from the home chart of src_tuple to that of dst_tuple."""
    return sheaf.transport(v, min(dst_tuple), min(src_tuple))


def face(J, k):
    return J[:k] + J[k + 1:]


def tot_check(x, report=False):
    """Semicosimplicial compatibility of all levels up to L."""
    sh = x.sheaf
    bad = []
    for J in x.tuples():
        n = len(J) - 1
        if n == 0:
            continue
        vJ = x.value(J)
        for k in range(n + 1):
            F = face(J, k)
            lhs = v_coface(vJ, k)
            rhs = restrict(sh, x.value(F), F, J)
            if not (lhs - rhs).is_zero():
                if not report:
                    return False
                bad.append((J, k))
    return bad if report else True


def tot_differential(x, check=False):
    if check and not tot_check(x):
        raise TotError("input fails the compatibility check")
    sh = x.sheaf
    return x.like({J: sh.truncate(v_dt(v) + sh.d_V(v, min(J))) for J, v in x.comps.items()})


def tot_bracket(x, y, sheaf=None):
    """Levelwise bracket; the output sheaf defaults to the sheaf of y when x is
    algebroid-valued and y is not, else the sheaf of x."""
    if sheaf is None:
        if isinstance(x.sheaf, AlgebroidSheaf) and not isinstance(y.sheaf, AlgebroidSheaf):
            sheaf = y.sheaf
        else:
            sheaf = x.sheaf
    if x.L != y.L:
        raise TotError("truncation levels differ")
    out = {}
    for J, a in x.comps.items():
        b = y.comps.get(J)
        if b is not None:
            out[J] = value_bracket(a, b)
    return TotElement(sheaf, out, x.L)


def tot_pairing(form, x, y, sheaf=None):
    """Levelwise cyclic pairing into the scalar Tot complex."""
    sheaf = sheaf or form.target_sheaf(x.atlas)
    out = {}
    for J, a in x.comps.items():
        b = y.comps.get(J)
        if b is not None:
            out[J] = FormMatrix.scalar(form.pair(a, b, min(J)))
    return TotElement(sheaf, out, x.L)


def scalar_part(x):
    """The scalar MixedForm carried by a 1x1 Tot element at tuple J."""
    return {J: v.get(0, 0) for J, v in x.comps.items()}


def global_to_tot(sheaf, local, L=None, check=True):
    """Inclusion of a global section, given by its value on every chart
    (chart-coordinate t-free values)."""
    at = sheaf.atlas
    if check:
        for a in range(at.nchart):
            for b in range(at.nchart):
                if a != b and not (sheaf.transport(local[b], a, b) - local[a]).is_zero():
                    raise TotError("local values do not glue to a global section")
    Lx = at.nchart - 1 if L is None else L
    out = {}
    for J in all_tuples(at.nchart, Lx):
        h = min(J)
        out[J] = v_lift(local[h], len(J) - 1)
    return TotElement(sheaf, out, Lx)


# ------------------------------------------------------------------ Čech side

class CechCochain:
    """Level-p cochain: every tuple of length p+1 maps to a t-free value in its home chart."""

    def __init__(self, sheaf, p, values=None):
        self.sheaf = sheaf
        self.p = p
        self.values = {tuple(J): v for J, v in (values or {}).items() if not v.is_zero()}

    def value(self, J):
        v = self.values.get(J)
        return v if v is not None else self.sheaf.zero_value(0)

    def __eq__(self, other):
        keys = set(self.values) | set(other.values)
        return all((self.value(J) - other.value(J)).is_zero() for J in keys)

    def __sub__(self, other):
        keys = set(self.values) | set(other.values)
        return CechCochain(self.sheaf, self.p, {J: self.value(J) - other.value(J) for J in keys})


def cech_coface(k, c):
    """(delta_k c)(J) = c(J without position k), restricted to U_J."""
    sh = c.sheaf
    at = sh.atlas
    out = {}
    for J in _iproduct(range(at.nchart), repeat=c.p + 2):
        F = face(J, k)
        v = c.values.get(F)
        if v is not None:
            out[J] = restrict(sh, v, F, J)
    return CechCochain(sh, c.p + 1, out)


def whitney_integrate(x, ordered=True):
    """Levelwise integration over the simplex: a dict p -> {J: value}.

    With ``ordered`` every tuple is kept; otherwise only strictly increasing
    tuples, i.e. the alternating Čech complex.
    """
    out = {}
    for J, v in x.comps.items():
        if not ordered and any(J[i] >= J[i + 1] for i in range(len(J) - 1)):
            continue
        w = v_integrate(v)
        if not w.is_zero():
            out.setdefault(len(J) - 1, {})[J] = w
    return out


def cech_total_differential(sheaf, cochains, maxlevel, ordered=True):
    """D = delta + (-1)^p d_V on the (ordered or alternating) Čech total complex."""
    at = sheaf.atlas
    out = {}
    for p in range(maxlevel + 1):
        if ordered:
            tups = list(_iproduct(range(at.nchart), repeat=p + 1))
        else:
            tups = list(combinations(range(at.nchart), p + 1))
        for J in tups:
            acc = sheaf.zero_value(0)
            if p > 0:
                for k in range(p + 1):
                    F = face(J, k)
                    v = cochains.get(p - 1, {}).get(F)
                    if v is not None:
                        t = restrict(sheaf, v, F, J)
                        acc = acc + (t if k % 2 == 0 else -t)
            v = cochains.get(p, {}).get(J)
            if v is not None:
                dv = sheaf.d_V(v, min(J))
                acc = acc + (dv if p % 2 == 0 else -dv)
            acc = sheaf.truncate(acc)
            if not acc.is_zero():
                out.setdefault(p, {})[J] = acc
    return out


def cech_equal(a, b, sheaf):
    for p in set(a) | set(b):
        da, db = a.get(p, {}), b.get(p, {})
        for J in set(da) | set(db):
            va = da.get(J, sheaf.zero_value(0))
            vb = db.get(J, sheaf.zero_value(0))
            if not (va - vb).is_zero():
                return False
    return True


# ------------------------------------------------------------------ weight slices

class WindowError(ValueError):
    pass


def _chart_solver(atlas, chart):
    """Map a target weight to the unique exponent vector of chart coordinates."""
    W = [list(w) for w in atlas.weights[chart]]
    m = len(W)
    g = len(W[0]) if m else 0
    # columns of the g x m matrix are the variable weights
    rows = [[Fraction(W[k][i]) for k in range(m)] for i in range(g)]
    red, piv = rref(rows, m)
    if len(piv) != m:
        raise WindowError("variable weights must be linearly independent")

    def solve_w(T):
        sol = solve(rows, [Fraction(t) for t in T], m)
        if sol is None:
            return None
        if any(s.denominator != 1 for s in sol):
            return None
        return tuple(int(s) for s in sol)

    return solve_w


class CechComplex:
    """Alternating Čech total complex of a Hom sheaf in weight slices.

    Basis elements are (J, r, c, exps, dymask); the natural total degree is
    p + (rdeg[r] - cdeg[c]) + |dymask|.  ``omega`` bounds the dy-degree.
    """

    def __init__(self, sheaf, omega=(0, 0)):
        if not isinstance(sheaf, HomSheaf):
            raise TotError("weight slices are implemented for Hom sheaves")
        at = sheaf.atlas
        if not at.is_graded():
            raise WindowError("cohomology needs a weight-graded atlas")
        self.sheaf = sheaf
        self.atlas = at
        lo, hi = omega
        if hi is None:
            hi = at.dim if sheaf.max_omega is None else sheaf.max_omega
        self.omega = (lo, hi)
        self.solvers = [_chart_solver(at, c) for c in range(at.nchart)]
        self.tuples = [J for p in range(at.nchart) for J in combinations(range(at.nchart), p + 1)]
        self._cache = {}

    def _masks(self):
        m = self.atlas.dim
        out = []
        for mask in range(1 << m):
            k = bin(mask).count("1")
            if self.omega[0] <= k <= self.omega[1]:
                out.append(mask)
        return out

    def basis(self, W, q):
        key = (tuple(W), q)
        r = self._cache.get(key)
        if r is not None:
            return r
        at, sh = self.atlas, self.sheaf
        out = []
        nr, nc = len(sh.tgt.degrees), len(sh.src.degrees)
        for J in self.tuples:
            p = len(J) - 1
            h = J[0]
            inv = at.inv_mask(h, set(J))
            for r_ in range(nr):
                for c_ in range(nc):
                    hd = sh.tgt.degrees[r_] - sh.src.degrees[c_]
                    for mask in self._masks():
                        if p + hd + bin(mask).count("1") != q:
                            continue
                        off = sh.entry_weight(h, r_, c_)
                        T = list(w + o for w, o in zip(W, off))
                        for k in range(at.dim):
                            if mask >> k & 1:
                                T = [t - s for t, s in zip(T, at.var_weight(h, k))]
                        e = self.solvers[h](T)
                        if e is None:
                            continue
                        if any(a < 0 and not inv[k] for k, a in enumerate(e)):
                            continue
                        out.append((J, r_, c_, e, mask))
        self._cache[key] = out
        return out

    def element(self, key):
        J, r_, c_, e, mask = key
        sh, at = self.sheaf, self.atlas
        f = MixedForm._raw(0, at.dim, {(e, mask): Fraction(1)})
        v = FormMatrix(sh.tgt.degrees, sh.src.degrees, 0, at.dim, {(r_, c_): f})
        return {len(J) - 1: {J: v}}

    def vectorize(self, cochains, W, q, strict=True):
        keys = self.basis(W, q)
        index = {k: i for i, k in enumerate(keys)}
        vec = [Fraction(0)] * len(keys)
        for p, comps in cochains.items():
            for J, v in comps.items():
                for (r_, c_), f in v.ent.items():
                    for (e, mask), cf in f.terms.items():
                        i = index.get((J, r_, c_, e, mask))
                        if i is None:
                            if strict:
                                raise TotError(f"term outside the slice basis at {J}")
                            continue
                        vec[i] += cf
        return vec

    def weight_of(self, J, r_, c_, e, mask):
        at = self.atlas
        h = J[0]
        w = [0] * at.grading_rank()
        for k, a in enumerate(e):
            if a:
                w = [x + a * y for x, y in zip(w, at.var_weight(h, k))]
        for k in range(at.dim):
            if mask >> k & 1:
                w = [x + y for x, y in zip(w, at.var_weight(h, k))]
        off = self.sheaf.entry_weight(h, r_, c_)
        return tuple(x - o for x, o in zip(w, off))

    def split_by_weight(self, cochains):
        out = {}
        for p, comps in cochains.items():
            for J, v in comps.items():
                if any(J[i] >= J[i + 1] for i in range(len(J) - 1)):
                    continue
                for (r_, c_), f in v.ent.items():
                    for (e, mask), cf in f.terms.items():
                        W = self.weight_of(J, r_, c_, e, mask)
                        d = out.setdefault(W, {}).setdefault(p, {})
                        term = FormMatrix(v.rdeg, v.cdeg, 0, v.ny,
                                          {(r_, c_): MixedForm._raw(0, v.ny, {(e, mask): cf})})
                        d[J] = d[J] + term if J in d else term
        return out

    def differential_matrix(self, W, q):
        """Rows indexed by the degree q+1 basis, columns by the degree q basis."""
        key = ("D", tuple(W), q)
        r = self._cache.get(key)
        if r is not None:
            return r
        src = self.basis(W, q)
        tgt = self.basis(W, q + 1)
        maxp = self.atlas.nchart - 1
        cols = []
        for k in src:
            img = cech_total_differential(self.sheaf, self.element(k), maxp, ordered=False)
            cols.append(self.vectorize(img, W, q + 1))
        rows = [[cols[j][i] for j in range(len(src))] for i in range(len(tgt))]
        r = (rows, len(src), len(tgt))
        self._cache[key] = r
        return r

    def slice_dim(self, W, q):
        n = len(self.basis(W, q))
        if n == 0:
            return 0
        Dq, _, _ = self.differential_matrix(W, q)
        Dp, _, _ = self.differential_matrix(W, q - 1)
        return n - rank(Dq, n) - rank(Dp, len(self.basis(W, q - 1)))

    def window_weights(self, lo, hi):
        g = self.atlas.grading_rank()
        return list(_iproduct(range(lo, hi + 1), repeat=g))

    def dim_in_window(self, q, lo, hi):
        total = 0
        per = {}
        for W in self.window_weights(lo, hi):
            d = self.slice_dim(W, q)
            if d:
                per[W] = d
                total += d
        return total, per

    def in_image(self, vec, W, q):
        """Solve D_{q-1} y = vec; returns y or None."""
        rows, ns, nt = self.differential_matrix(W, q - 1)
        if ns == 0:
            return None if any(vec) else []
        return solve(rows, vec, ns)

    def is_cocycle_vec(self, vec, W, q):
        rows, ns, nt = self.differential_matrix(W, q)
        return all(sum(r[j] * vec[j] for j in range(ns)) == 0 for r in rows)


def cohomology_dim(F, q, window=(-4, 4), certify=True, omega=(0, 0)):
    """Dimension of H^q of a locally free complex (or Hom sheaf) in a weight window.

    Returns (dim, per-weight dims).  With ``certify`` the window is widened by
    ``certify_margin`` on both sides and the answer must not change.
    """
    sheaf = F if isinstance(F, HomSheaf) else _sections(F)
    cx = CechComplex(sheaf, omega)
    lo, hi = window
    dim, per = cx.dim_in_window(q, lo, hi)
    if certify:
        m = certify_margin(sheaf)
        dim2, _ = cx.dim_in_window(q, lo - m, hi + m)
        if dim2 != dim:
            raise WindowError(f"window {lo}..{hi} is not stable ({dim} vs {dim2})")
    return dim, per


def _max_frame_weight(F):
    try:
        ws = [w for c in range(F.atlas.nchart) for w in F.frame_weights(c)]
    except (AtlasError, TypeError):
        return 0
    return max((abs(a) for w in ws for a in w), default=0)


def certify_margin(sheaf):
    """Widening used to certify a window: a one-step widening misses classes
    whose weights sit further out, so the margin follows the frame twist."""
    return 1 + _max_frame_weight(sheaf.src) + _max_frame_weight(sheaf.tgt)


def _sections(F):
    from .variety import sections_sheaf
    return sections_sheaf(F)


class CechClass:
    """Cohomology class of a Čech cocycle, reduced weight slice by weight slice."""

    def __init__(self, degree, coords, zero, basis=None):
        self.degree = degree
        self.coords = coords
        self.zero = zero
        self.basis = basis or {}

    def is_zero(self):
        return self.zero

    def to_dict(self):
        return {"degree": self.degree, "zero": self.zero,
                "coords": {",".join(map(str, W)): [str(c) for c in v] for W, v in sorted(self.coords.items())}}

    def __repr__(self):
        return f"CechClass(degree={self.degree}, zero={self.zero}, coords={self.coords})"


def _quotient_basis(cx, W, q):
    """Kernel vectors completing an image basis: representatives of H^q_W."""
    n = len(cx.basis(W, q))
    Dq, _, _ = cx.differential_matrix(W, q)
    ker = nullspace(Dq, n) if Dq else [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    Dp, ns, _ = cx.differential_matrix(W, q - 1)
    img = [[Dp[i][j] for i in range(n)] for j in range(ns)] if ns else []
    reps = []
    cur = [list(v) for v in img]
    r0 = rank(cur, n) if cur else 0
    for v in ker:
        trial = cur + [v]
        r1 = rank(trial, n)
        if r1 > r0:
            cur, r0 = trial, r1
            reps.append(v)
    return reps, img


def class_of(cx, cochains, q, check=True):
    coords = {}
    zero = True
    for W, part in sorted(cx.split_by_weight(cochains).items()):
        vec = cx.vectorize(part, W, q)
        if check and not cx.is_cocycle_vec(vec, W, q):
            raise TotError(f"input is not a cocycle at weight {W}")
        reps, img = _quotient_basis(cx, W, q)
        n = len(vec)
        gens = reps + img
        if not gens:
            continue
        rows = [[g[i] for g in gens] for i in range(n)]
        sol = solve(rows, vec, len(gens))
        if sol is None:
            raise TotError("decomposition failed")
        c = sol[:len(reps)]
        if any(c):
            zero = False
        if reps:
            coords[W] = c
    return CechClass(q, coords, zero)


def coordinates_in(cx, cochains, q, generators):
    """Solve cochains = sum lambda_i generators_i + boundary; returns the lambdas."""
    parts = cx.split_by_weight(cochains)
    gparts = [cx.split_by_weight(g) for g in generators]
    weights = set(parts)
    for gp in gparts:
        weights |= set(gp)
    rows_all, rhs_all = [], []
    k = len(generators)
    for W in sorted(weights):
        n = len(cx.basis(W, q))
        vec = cx.vectorize(parts.get(W, {}), W, q)
        gv = [cx.vectorize(gp.get(W, {}), W, q) for gp in gparts]
        Dp, ns, _ = cx.differential_matrix(W, q - 1)
        # unknowns: lambdas (shared) then the slice primitive
        for i in range(n):
            row = [gv[j][i] for j in range(k)]
            rows_all.append((W, row, [Dp[i][j] for j in range(ns)] if ns else []))
            rhs_all.append(vec[i])
    # assemble block system
    offsets, total = {}, k
    for W, _, prim in rows_all:
        if W not in offsets:
            offsets[W] = total
            total += len(prim)
    rows = []
    for (W, lam, prim) in rows_all:
        r = [Fraction(0)] * total
        r[:k] = lam
        o = offsets[W]
        for j, v in enumerate(prim):
            r[o + j] = v
        rows.append(r)
    sol = solve(rows, rhs_all, total)
    if sol is None:
        return None
    return sol[:k]


def class_in_hypercohomology(z, degree=2, atlas=None, shifted=True):
    """Class of a cocycle of the truncated de Rham complex Omega^{<=1}.

    ``z`` is a Tot element (integrated first) or a Čech dict.  ``degree`` is
    read in the grading of Omega^{<=1}[2] when ``shifted`` (natural degree + 2).
    """
    if isinstance(z, TotElement):
        atlas = z.atlas
        coch = whitney_integrate(z, ordered=False)
    else:
        coch = z
    sheaf = structure_sheaf(atlas, max_omega=1, de_rham=True)
    cx = CechComplex(sheaf, (0, 1))
    q = degree + 2 if shifted else degree
    return class_of(cx, coch, q)
