"""Chart atlases, locally free complexes with transition data, and the
sheaf constructions built from them (Omega^1, End, Omega-twists)."""

from fractions import Fraction
from functools import lru_cache
from itertools import product as _iproduct

from .exact_ring import LaurentPoly, PolyMatrix, RingError, ring_map
from .simplex_forms import MixedForm
from .super_matrix import FormMatrix


class AtlasError(ValueError):
    pass


def poly_to_form(p, nt=0):
    """LaurentPoly in chart variables -> t-free MixedForm (lifted to level nt)."""
    f = MixedForm._raw(0, p.nvars, {(e, 0): c for e, c in p.terms.items()})
    return f.lift_level(nt) if nt else f


def form_to_poly(f, inv, weights=None):
    if f.nt:
        raise AtlasError("form depends on simplex coordinates")
    terms = {}
    for (e, m), c in f.terms.items():
        if m:
            raise AtlasError("form has dy factors")
        terms[e] = c
    return LaurentPoly(f.ny, terms, inv, weights)


class ChartAtlas:
    """Finite atlas with Laurent-monomial-localized overlaps.

    ``coord_maps[(a, b)]`` lists chart-b coordinates as LaurentPoly in chart-a
    coordinates on U_a ∩ U_b; ``inverts[(a, b)]`` is the set of chart-a
    variables inverted on that overlap.
    """

    def __init__(self, names, weights, coord_maps, inverts, label="custom"):
        self.names = [list(n) for n in names]
        self.nchart = len(names)
        self.dim = len(names[0]) if names else 0
        if any(len(n) != self.dim for n in self.names):
            raise AtlasError("all charts must have the same dimension")
        self.weights = [tuple(tuple(w) for w in ws) for ws in weights] if weights is not None else None
        self.coord_maps = dict(coord_maps)
        self.inverts = {k: frozenset(v) for k, v in inverts.items()}
        self.label = label
        self._form_map_cache = {}
        self._check()

    # rings
    def inv_mask(self, chart, others):
        s = set()
        for b in others:
            if b != chart:
                s |= self.inverts[(chart, b)]
        return tuple(k in s for k in range(self.dim))

    def profile(self, chart, tup):
        """Profile of the ring of tup written in chart coordinates."""
        return self.inv_mask(chart, set(tup)), (self.weights[chart] if self.weights else None)

    def home(self, tup):
        return min(tup)

    def ring(self, tup):
        """Profile (inv mask, weights) of the overlap ring in home coordinates."""
        h = self.home(tup)
        return self.inv_mask(h, set(tup)), (self.weights[h] if self.weights else None)

    def zero_poly(self, tup):
        inv, w = self.ring(tup)
        return LaurentPoly(self.dim, {}, inv, w)

    def var(self, tup, k):
        inv, w = self.ring(tup)
        return LaurentPoly.var(k, self.dim, inv, w)

    def coords(self, a, b, tup=None):
        """Chart-b coordinates in chart-a coordinates, in the ring of tup."""
        if a == b:
            inv, w = self.profile(a, tup or (a,))
            return [LaurentPoly.var(k, self.dim, inv, w) for k in range(self.dim)]
        inv, w = self.profile(a, tup or (a, b))
        return [p.with_profile(inv, w) for p in self.coord_maps[(a, b)]]

    def form_coords(self, a, b):
        """t-free MixedForm images of chart-b coordinates in chart-a coordinates."""
        key = (a, b)
        r = self._form_map_cache.get(key)
        if r is None:
            if a == b:
                r = [MixedForm.y(k, 0, self.dim) for k in range(self.dim)]
            else:
                r = [poly_to_form(p) for p in self.coord_maps[(a, b)]]
            self._form_map_cache[key] = r
        return r

    def transport_form(self, f, a, b, cache=None):
        """Express a form written in chart-b coordinates in chart-a coordinates."""
        if a == b:
            return f
        return f.substitute_y(self.form_coords(a, b), cache)

    def is_graded(self):
        return self.weights is not None

    def var_weight(self, chart, k):
        return self.weights[chart][k]

    def grading_rank(self):
        return len(self.weights[0][0]) if self.weights and self.dim else 0

    # invariants
    def _check(self):
        N = self.nchart
        for a in range(N):
            for b in range(N):
                if a == b:
                    continue
                if (a, b) not in self.coord_maps:
                    raise AtlasError(f"missing transition ({a},{b})")
                imgs = self.coords(a, b)
                for k, p in enumerate(imgs):
                    if not p.is_unit_monomial() and self.inv_mask(b, {a})[k]:
                        raise AtlasError("invertible coordinate must map to a unit monomial")
        for a in range(N):
            for b in range(N):
                if a == b:
                    continue
                # phi_ab o phi_ba = id
                back = self.coords(b, a, (a, b))
                fwd = self.coords(a, b)
                for k in range(self.dim):
                    img = ring_map(back[k], fwd, target=fwd[0] if fwd else None)
                    if img != LaurentPoly.var(k, self.dim, img.inv, img.weights):
                        raise AtlasError(f"transition ({a},{b}) is not inverse to ({b},{a})")
        for a, b, c in _iproduct(range(N), repeat=3):
            if len({a, b, c}) < 3:
                continue
            tup = (a, b, c)
            ab = self.coords(a, b, tup)
            bc = self.coords(b, c, tup)
            ac = self.coords(a, c, tup)
            inv, w = self.profile(a, tup)
            for k in range(self.dim):
                p = bc[k]
                img = ring_map(p, [q.with_profile(inv, w) for q in ab], target=LaurentPoly(self.dim, {}, inv, w))
                if img != ac[k].with_profile(inv, w):
                    raise AtlasError(f"triple consistency fails on {tup}")
        if self.weights is not None:
            for a in range(N):
                for b in range(N):
                    if a != b:
                        for k, p in enumerate(self.coords(a, b)):
                            if p.weight() != tuple(self.weights[b][k]):
                                raise AtlasError("transition does not respect the weight grading")

    def tuples(self, n):
        return list(_iproduct(range(self.nchart), repeat=n + 1))

    def to_dict(self):
        return {"label": self.label, "charts": self.nchart, "dim": self.dim}


def build_projective_space(n):
    """Standard atlas of P^n, n in {1, 2}; chart i has coordinates x_k/x_i."""
    if n not in (1, 2):
        raise AtlasError("only P^1 and P^2 are built in")
    N = n + 1
    idx = [[k for k in range(N) if k != i] for i in range(N)]
    letters = {1: [["z"], ["w"]], 2: [["u1", "u2"], ["v0", "v2"], ["s0", "s1"]]}[n]

    def e(k):
        v = [0] * N
        v[k] = 1
        return v

    weights = [[tuple(x - y for x, y in zip(e(k), e(i))) for k in idx[i]] for i in range(N)]
    coord_maps, inverts = {}, {}
    for a in range(N):
        for b in range(N):
            if a == b:
                continue
            pos_b = idx[a].index(b)
            inverts[(a, b)] = {pos_b}
            inv = tuple(j == pos_b for j in range(n))
            imgs = []
            for l in idx[b]:
                ex = [0] * n
                ex[pos_b] -= 1
                if l != a:
                    ex[idx[a].index(l)] += 1
                imgs.append(LaurentPoly(n, {tuple(ex): 1}, inv, weights[a]))
            coord_maps[(a, b)] = imgs
    atlas = ChartAtlas(letters, weights, coord_maps, inverts, label=f"P{n}")
    atlas.chart_index = idx
    return atlas


def atlas_from_spec(spec):
    if isinstance(spec, str):
        if spec in ("P1", "P2"):
            return build_projective_space(int(spec[1]))
        raise AtlasError(f"unknown builtin atlas {spec!r}")
    names = spec["charts"]
    weights = spec.get("weights")
    dim = len(names[0])
    coord_maps, inverts = {}, {}
    for key, data in spec["transitions"].items():
        a, b = (int(x) for x in key.split(","))
        inv_set = set(data["inverts"])
        inv = tuple(k in inv_set for k in range(dim))
        w = weights[a] if weights else None
        coord_maps[(a, b)] = [LaurentPoly(dim, {tuple(t[1]): Fraction(t[0]) for t in img}, inv, w)
                              for img in data["images"]]
        inverts[(a, b)] = inv_set
    return ChartAtlas(names, weights, coord_maps, inverts, label=spec.get("label", "custom"))


# ------------------------------------------------------------------ complexes

class LocallyFreeComplex:
    """Free modules per chart with transitions c^(a) = G_ab c^(b) on coefficient
    columns, basis degrees, per-chart differentials and frame weights."""

    def __init__(self, atlas, degrees, transition, differential=None, frame_weights=None, name="E"):
        self.atlas = atlas
        self.degrees = tuple(degrees)
        self.rank = len(self.degrees)
        self._transition = transition
        self._differential = differential
        self._frame_weights = frame_weights
        self.name = name
        self._cache = {}

    # raw data
    def transition(self, a, b, tup=None):
        """G_ab as a PolyMatrix over the ring of tup (default (a, b)) in chart-a coordinates."""
        inv, w = self.atlas.profile(a, tup or (a, b))
        if a == b:
            one = LaurentPoly.const(1, self.atlas.dim, inv, w)
            zero = LaurentPoly(self.atlas.dim, {}, inv, w)
            return PolyMatrix([[one if i == j else zero for j in range(self.rank)] for i in range(self.rank)])
        G = self._transition(a, b)
        return G.map(lambda p: p.with_profile(inv, w))

    def differential(self, chart):
        inv, w = self.atlas.profile(chart, (chart,))
        if self._differential is None:
            return PolyMatrix.zeros(self.rank, self.rank, LaurentPoly(self.atlas.dim, {}, inv, w))
        return self._differential(chart).map(lambda p: p.with_profile(inv, w))

    def frame_weights(self, chart):
        if self._frame_weights is None:
            raise AtlasError("complex carries no frame weights")
        return [tuple(w) for w in self._frame_weights(chart)]

    def has_differential(self):
        return self._differential is not None

    # form-valued data, cached
    def G_form(self, a, b, nt=0):
        key = ("G", a, b, nt)
        r = self._cache.get(key)
        if r is None:
            G = self.transition(a, b)
            r = FormMatrix(self.degrees, self.degrees, nt, self.atlas.dim,
                           {(i, j): poly_to_form(G[i, j], nt) for i in range(self.rank) for j in range(self.rank)})
            self._cache[key] = r
        return r

    def Ginv_form(self, a, b, nt=0):
        """G_ab^{-1} = G_ba expressed in chart-a coordinates."""
        key = ("Gi", a, b, nt)
        r = self._cache.get(key)
        if r is None:
            Gba = self.G_form(b, a, 0)
            r = Gba.map_forms(lambda f: self.atlas.transport_form(f, a, b).lift_level(nt), nt=nt)
            self._cache[key] = r
        return r

    def delta_form(self, chart, nt=0):
        key = ("d", chart, nt)
        r = self._cache.get(key)
        if r is None:
            D = self.differential(chart)
            r = FormMatrix(self.degrees, self.degrees, nt, self.atlas.dim,
                           {(i, j): poly_to_form(D[i, j], nt) for i in range(self.rank) for j in range(self.rank)})
            self._cache[key] = r
        return r

    def dG_Ginv(self, a, b, nt=0):
        """Matrices C_l = (d'_l G_ab) G_ab^{-1}, d'_l the chart-b coordinate vector fields
        written in chart-a coordinates, together with the Jacobian J_kl = dy^a_k/dy^b_l."""
        key = ("C", a, b, nt)
        r = self._cache.get(key)
        if r is None:
            at = self.atlas
            m = at.dim
            ya_in_b = at.form_coords(b, a)
            J = [[at.transport_form(ya_in_b[k].partial_y(l), a, b).lift_level(nt) for l in range(m)] for k in range(m)]
            G = self.G_form(a, b, nt)
            Gi = self.Ginv_form(a, b, nt)
            Cs = []
            for l in range(m):
                dG = G.zero_like()
                for k in range(m):
                    dG = dG + G.map_forms(lambda f, k=k: f.partial_y(k)).left_mul(J[k][l])
                Cs.append(dG * Gi)
            r = (J, Cs)
            self._cache[key] = r
        return r

    # invariants
    def check(self):
        at = self.atlas
        N = at.nchart
        for c in range(N):
            d = self.delta_form(c)
            if not (d * d).is_zero():
                raise AtlasError(f"d^2 != 0 on chart {c}")
            for i in range(self.rank):
                for j in range(self.rank):
                    if d.get(i, j).terms and self.degrees[i] != self.degrees[j] + 1:
                        raise AtlasError("differential must raise degree by one")
        for a in range(N):
            for b in range(N):
                if a == b:
                    continue
                G, Gi = self.G_form(a, b), self.Ginv_form(a, b)
                if not (G * Gi == FormMatrix.identity(self.degrees, 0, at.dim)):
                    raise AtlasError(f"stored inverse wrong on ({a},{b})")
                for i in range(self.rank):
                    for j in range(self.rank):
                        if G.get(i, j).terms and self.degrees[i] != self.degrees[j]:
                            raise AtlasError("transitions must preserve degree")
                db = self.delta_form(b).map_forms(lambda f: at.transport_form(f, a, b))
                if not (self.delta_form(a) * G == G * db):
                    raise AtlasError(f"transition ({a},{b}) does not commute with d")
        for a, b, c in _iproduct(range(N), repeat=3):
            if len({a, b, c}) < 3:
                continue
            Gbc = self.G_form(b, c).map_forms(lambda f: at.transport_form(f, a, b))
            if not (self.G_form(a, c) == self.G_form(a, b) * Gbc):
                raise AtlasError(f"cocycle condition fails on {(a, b, c)}")
        if at.is_graded() and self._frame_weights is not None:
            for a in range(N):
                for b in range(N):
                    if a == b:
                        continue
                    G = self.transition(a, b)
                    wa, wb = self.frame_weights(a), self.frame_weights(b)
                    for i in range(self.rank):
                        for j in range(self.rank):
                            if G[i, j].terms and tuple(x + y for x, y in zip(G[i, j].weight(), wa[i])) != wb[j]:
                                raise AtlasError("transition is not weight-homogeneous")
            for c in range(N):
                D = self.differential(c)
                wc = self.frame_weights(c)
                for i in range(self.rank):
                    for j in range(self.rank):
                        if D[i, j].terms and tuple(x + y for x, y in zip(D[i, j].weight(), wc[i])) != wc[j]:
                            raise AtlasError("differential is not weight-homogeneous")
        return True


def _unit_vec(g, k):
    v = [0] * g
    v[k] = 1
    return v


def line_bundle(atlas, d, offset=None, degree=0):
    """O(d) on a projective-space atlas: G_ab = (x_b/x_a)^d in chart-a coordinates."""
    if not hasattr(atlas, "chart_index"):
        raise AtlasError("line_bundle needs a projective-space atlas")
    idx = atlas.chart_index
    N = atlas.nchart
    g = atlas.grading_rank()
    off = tuple(offset) if offset is not None else (0,) * g

    def transition(a, b):
        inv, w = atlas.profile(a, (a, b))
        y = LaurentPoly.var(idx[a].index(b), atlas.dim, inv, w)
        return PolyMatrix([[y ** d]])

    def fw(c):
        return [tuple(d * x + o for x, o in zip(_unit_vec(N, c), off))]

    E = LocallyFreeComplex(atlas, [degree], transition, None, fw, name=f"O({d})")
    E.twists = [d]
    return E


def direct_sum(*Fs, differential=None):
    atlas = Fs[0].atlas
    degrees = [d for F in Fs for d in F.degrees]
    n = len(degrees)
    offs = []
    o = 0
    for F in Fs:
        offs.append(o)
        o += F.rank

    def blockdiag(mats, ring):
        rows = [[ring.zero() for _ in range(n)] for _ in range(n)]
        for F, off, M in zip(Fs, offs, mats):
            for i in range(F.rank):
                for j in range(F.rank):
                    rows[off + i][off + j] = M[i, j]
        return PolyMatrix(rows)

    def transition(a, b):
        mats = [F.transition(a, b) for F in Fs]
        return blockdiag(mats, mats[0][0, 0])

    def diff(c):
        if differential is not None:
            return differential(c)
        mats = [F.differential(c) for F in Fs]
        return blockdiag(mats, mats[0][0, 0])

    has_w = all(F._frame_weights is not None for F in Fs)
    fw = (lambda c: [w for F in Fs for w in F.frame_weights(c)]) if has_w else None
    anyd = differential is not None or any(F.has_differential() for F in Fs)
    E = LocallyFreeComplex(atlas, degrees, transition, diff if anyd else None, fw,
                           name="+".join(F.name for F in Fs))
    return E


def shift(F, k):
    """F[k]: degrees lowered by k, differential multiplied by (-1)^k."""
    sign = -1 if k % 2 else 1

    def diff(c):
        return F.differential(c) * sign

    return LocallyFreeComplex(F.atlas, [d - k for d in F.degrees], F._transition,
                              diff if F.has_differential() else None, F._frame_weights,
                              name=f"{F.name}[{k}]")


def with_differential(F, diff):
    return LocallyFreeComplex(F.atlas, F.degrees, F._transition, diff, F._frame_weights, name=F.name)


def trivial_bundle(atlas, rank=1):
    g = atlas.grading_rank()

    def transition(a, b):
        inv, w = atlas.profile(a, (a, b))
        return PolyMatrix.identity(rank, LaurentPoly(atlas.dim, {}, inv, w))

    return LocallyFreeComplex(atlas, [0] * rank, transition, None,
                              (lambda c: [(0,) * g] * rank) if atlas.is_graded() else None, name="O")


def omega1(atlas, degree=0):
    """Cotangent sheaf on the frame dy_1..dy_m; transitions are Jacobians."""
    m = atlas.dim

    def transition(a, b):
        inv, w = atlas.profile(a, (a, b))
        yb = atlas.coords(a, b)
        return PolyMatrix([[yb[l].derivative(k) for l in range(m)] for k in range(m)])

    fw = (lambda c: [atlas.var_weight(c, k) for k in range(m)]) if atlas.is_graded() else None
    return LocallyFreeComplex(atlas, [degree] * m, transition, None, fw, name="Omega1")


def tangent(atlas):
    m = atlas.dim

    def transition(a, b):
        # d/dy^b_l = sum_k (dy^a_k/dy^b_l) d/dy^a_k
        inv, w = atlas.profile(a, (a, b))
        ya = atlas.coords(b, a, (a, b))
        yb = atlas.coords(a, b)
        rows = [[None] * m for _ in range(m)]
        for k in range(m):
            for l in range(m):
                p = ya[k].derivative(l)
                rows[k][l] = ring_map(p, yb, target=LaurentPoly(m, {}, inv, w))
        return PolyMatrix(rows)

    fw = (lambda c: [tuple(-x for x in atlas.var_weight(c, k)) for k in range(m)]) if atlas.is_graded() else None
    return LocallyFreeComplex(atlas, [0] * m, transition, None, fw, name="Theta")


def de_rham(atlas, chart, f):
    """d_dR of a function on a chart (LaurentPoly) as Omega^1 coordinates."""
    return [f.derivative(k) for k in range(atlas.dim)]


def tensor_complex(E, F):
    """E (x) F with Koszul-signed differential d(e(x)f) = de(x)f + (-1)^|e| e(x)df."""
    from .super_matrix import kron
    at = E.atlas

    def transition(a, b):
        return E.transition(a, b).kronecker(F.transition(a, b))

    def diff(c):
        dE = E.delta_form(c)
        dF = F.delta_form(c)
        IE = FormMatrix.identity(E.degrees, 0, at.dim)
        IF = FormMatrix.identity(F.degrees, 0, at.dim)
        D = kron(dE, IF) + kron(IE, dF)
        inv, w = at.profile(c, (c,))
        n = E.rank * F.rank
        return PolyMatrix([[form_to_poly(D.get(i, j), inv, w) for j in range(n)] for i in range(n)])

    fw = None
    if E._frame_weights is not None and F._frame_weights is not None:
        fw = lambda c: [tuple(x + y for x, y in zip(u, v)) for u in E.frame_weights(c) for v in F.frame_weights(c)]
    anyd = E.has_differential() or F.has_differential()
    degrees = [d1 + d2 for d1 in E.degrees for d2 in F.degrees]
    return LocallyFreeComplex(at, degrees, transition, diff if anyd else None, fw, name=f"({E.name})x({F.name})")


# ------------------------------------------------------------------ Hom sheaves

class HomSheaf:
    """Sheaf Hom(src, tgt) with values stored as FormMatrix in home-chart
    coordinates; dy factors in the coefficients realize Omega-twists.

    ``max_omega`` bounds the dy-degree kept (used for truncated de Rham
    targets); ``de_rham`` adds d_dR to the sheaf differential.
    """

    kind = "hom"

    def __init__(self, src, tgt, max_omega=None, de_rham=False, name=None):
        self.src = src
        self.tgt = tgt
        self.atlas = src.atlas
        self.max_omega = max_omega
        self.de_rham = de_rham
        self.name = name or f"Hom({src.name},{tgt.name})"
        self._tcache = {}

    @property
    def is_end(self):
        return self.src is self.tgt

    def zero_value(self, nt):
        return FormMatrix.zero(self.tgt.degrees, self.src.degrees, nt, self.atlas.dim)

    def transport(self, X, a, b):
        """Value written in chart b (frame and coordinates) -> chart a."""
        if a == b:
            return X
        at = self.atlas
        cache = self._tcache.setdefault((a, b), {})
        Y = X.map_forms(lambda f: at.transport_form(f, a, b, cache))
        nt = X.nt
        return self.tgt.G_form(a, b, nt) * Y * self.src.Ginv_form(a, b, nt)

    def d_V(self, X, chart):
        nt = X.nt
        out = self.tgt.delta_form(chart, nt) * X - X.total_parity() * self.src.delta_form(chart, nt) \
            if (self.tgt.has_differential() or self.src.has_differential()) else X.zero_like()
        if self.de_rham:
            out = out + X.map_forms(lambda f: f.d_y())
        return self.truncate(out)

    def truncate(self, X):
        if self.max_omega is None:
            return X
        return X.map_forms(lambda f: f.truncate_dy(self.max_omega))

    def entry_weight(self, chart, r, c):
        """Weight of the (r, c) coefficient of a weight-zero section."""
        wt = self.tgt.frame_weights(chart)[r]
        ws = self.src.frame_weights(chart)[c]
        return tuple(y - x for x, y in zip(wt, ws))

    def bracket(self, X, Y):
        if not self.is_end:
            raise TypeError("bracket needs an End sheaf")
        return X.commutator(Y)


def end_complex(E):
    return HomSheaf(E, E, name=f"End({E.name})")


def sections_sheaf(F, max_omega=None, de_rham=False):
    """F itself, viewed as Hom(O, F)."""
    return HomSheaf(trivial_bundle(F.atlas), F, max_omega, de_rham, name=F.name)


def structure_sheaf(atlas, max_omega=None, de_rham=False):
    O = trivial_bundle(atlas)
    return HomSheaf(O, O, max_omega, de_rham, name="O" if not max_omega else f"Omega<={max_omega}")


def tensor_with_omega(F, p):
    """Omega^p[-p] (x) F as the sheaf whose values carry exactly p dy factors.

    Returned as a HomSheaf over F (or over End(F) when given one); the
    Omega-degree is enforced by ``omega_degree`` on the returned object."""
    if p not in (0, 1):
        raise ValueError("only p in {0, 1} is supported")
    if isinstance(F, HomSheaf):
        S = HomSheaf(F.src, F.tgt, F.max_omega, F.de_rham, name=f"Omega{p}x{F.name}" if p else F.name)
    else:
        S = sections_sheaf(F)
        S.name = f"Omega{p}x{F.name}" if p else F.name
    S.omega_degree = p
    return S


def two_term_complex(E0, E1, phi):
    """E0 (+) E1[-1] with differential phi: E0 -> E1 given per chart as a PolyMatrix."""
    at = E0.atlas
    n0, n1 = E0.rank, E1.rank
    n = n0 + n1

    def diff(c):
        P = phi(c)
        inv, w = at.profile(c, (c,))
        z = LaurentPoly(at.dim, {}, inv, w)
        rows = [[z] * n for _ in range(n)]
        rows = [list(r) for r in rows]
        for i in range(n1):
            for j in range(n0):
                rows[n0 + i][j] = P[i, j].with_profile(inv, w)
        return PolyMatrix(rows)

    F = direct_sum(E0, shift(E1, -1), differential=diff)
    F.check()
    return F


def standard_two_term(atlas=None):
    """O (+) O(2)[-1] on P^1 with differential x0*x1 (z on chart 0, w on chart 1)."""
    at = atlas or build_projective_space(1)
    E0 = line_bundle(at, 0, offset=(1, 1))
    E1 = line_bundle(at, 2)

    def phi(c):
        inv, w = at.profile(c, (c,))
        return PolyMatrix([[LaurentPoly.var(0, 1, inv, w)]])

    F = two_term_complex(E0, E1, phi)
    F.name = "O+O(2)[-1]"
    return F
