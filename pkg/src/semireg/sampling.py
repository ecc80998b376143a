"""Seeded random sections and Tot elements.

Distribution: Laurent monomials with exponents in [-1, 2] (negative only on
variables inverted on the overlap), integer coefficients in [-3, 3] with an
occasional denominator 2, at most two terms per entry.  A random Tot element
is a sum of pieces phi^a (dphi) E(c) where E(c) is the Whitney extension of a
cochain supported on one tuple and phi_j are the barycentric functions of
the nerve.
"""

import random
from fractions import Fraction
from itertools import combinations, product as _iproduct

from .cech_tot import AlgebroidSheaf, TotElement, all_tuples, restrict, v_lift
from .simplex_forms import MixedForm, whitney_form
from .super_matrix import AlgVal, FormMatrix


def rng(seed):
    return random.Random(seed)


def _coef(r):
    c = Fraction(r.randint(-3, 3) or 1)
    if r.random() < 0.2:
        c /= 2
    return c


def random_poly_form(r, atlas, J, dymask_choices, nterms=2, expo=(-1, 2), nt=0):
    """t-free form in home-chart coordinates of J with dy-subsets drawn from the choices."""
    h = min(J)
    inv = atlas.inv_mask(h, set(J))
    m = atlas.dim
    terms = {}
    if not dymask_choices:
        return MixedForm.zero(nt, m)
    for _ in range(r.randint(1, nterms)):
        e = tuple(r.randint(expo[0] if inv[k] else 0, expo[1]) for k in range(m))
        mask = r.choice(dymask_choices)
        key = ((0,) * nt + e, mask << nt)
        terms[key] = terms.get(key, 0) + _coef(r)
    return MixedForm(nt, m, terms)


def _masks_of_size(m, s):
    return [sum(1 << i for i in S) for S in combinations(range(m), s)] if 0 <= s <= m else []


def random_hom_value(r, sheaf, J, degree, omega=(0, 0), density=0.7):
    """Homogeneous value of total degree ``degree`` (Hom degree + dy degree)."""
    at = sheaf.atlas
    m = at.dim
    ent = {}
    for i, dr in enumerate(sheaf.tgt.degrees):
        for j, dc in enumerate(sheaf.src.degrees):
            s = degree - (dr - dc)
            if not omega[0] <= s <= omega[1]:
                continue
            masks = _masks_of_size(m, s)
            if masks and r.random() < density:
                ent[(i, j)] = random_poly_form(r, at, J, masks)
    return FormMatrix(sheaf.tgt.degrees, sheaf.src.degrees, 0, m, ent)


def random_alg_value(r, sheaf, J, degree, omega=(0, 1)):
    at = sheaf.atlas
    m = at.dim
    s = degree
    masks = _masks_of_size(m, s) if omega[0] <= s <= omega[1] else []
    vec = [random_poly_form(r, at, J, masks) if masks and r.random() < 0.7 else MixedForm.zero(0, m)
           for _ in range(m)]
    hs = type("H", (), {})()
    hs.atlas, hs.tgt, hs.src = at, sheaf.E, sheaf.E
    mat = random_hom_value(r, hs, J, degree, omega)
    return AlgVal(vec, mat)


def phi(j, J):
    """Barycentric function of chart j on the simplex of tuple J."""
    n = len(J) - 1
    return MixedForm._raw(n, 0, {}) + sum((MixedForm.t(k, n) for k, c in enumerate(J) if c == j),
                                         MixedForm.zero(n))


class Piece:
    """phi-monomial * dphi-product * E(c) with c supported on one tuple K."""

    def __init__(self, coef, phis, dphis, K, value):
        self.coef = Fraction(coef)
        self.phis = tuple(phis)
        self.dphis = tuple(dphis)
        self.K = tuple(K)
        self.value = value

    def scalar(self, J, ny):
        n = len(J) - 1
        f = MixedForm.const(self.coef, n)
        for j in self.phis:
            f = f * phi(j, J)
        for j in self.dphis:
            f = f * phi(j, J).d_t()
        return _with_ny(f, ny)

    def describe(self):
        return {"coef": str(self.coef), "phi": list(self.phis), "dphi": list(self.dphis),
                "tuple": list(self.K), "value": repr(self.value)}


def _with_ny(f, ny):
    if ny == 0:
        return f
    n = f.nt
    return MixedForm._raw(n, ny, {(e + (0,) * ny, m): c for (e, m), c in f.terms.items()})


def whitney_extension(sheaf, K, value, L):
    """E(c) for the cochain c with c(K) = value and zero elsewhere."""
    at = sheaf.atlas
    ny = at.dim
    out = {}
    p = len(K) - 1
    for J in all_tuples(at.nchart, L):
        n = len(J) - 1
        if n < p:
            continue
        acc = None
        for a in combinations(range(n + 1), p + 1):
            if tuple(J[i] for i in a) != K:
                continue
            w = _with_ny(whitney_form(list(a), n), ny)
            v = restrict(sheaf, v_lift(value, n), K, J).left_mul(w)
            acc = v if acc is None else acc + v
        if acc is not None and not acc.is_zero():
            out[J] = acc
    return out


def assemble(sheaf, pieces, L):
    out = {}
    cache = {}
    for pc in pieces:
        key = (pc.K, id(pc.value))
        ext = cache.get(key)
        if ext is None:
            ext = whitney_extension(sheaf, pc.K, pc.value, L)
            cache[key] = ext
        for J, v in ext.items():
            w = v.left_mul(pc.scalar(J, sheaf.atlas.dim))
            out[J] = out[J] + w if J in out else w
    return TotElement(sheaf, out, L)


class Sample:
    """A random homogeneous Tot element kept as a list of pieces, so that a
    failing sample can be shrunk."""

    def __init__(self, sheaf, pieces, L, degree):
        self.sheaf = sheaf
        self.pieces = list(pieces)
        self.L = L
        self.degree = degree
        self._elt = None

    @property
    def element(self):
        if self._elt is None:
            self._elt = assemble(self.sheaf, self.pieces, self.L)
        return self._elt

    def without(self, i):
        return Sample(self.sheaf, self.pieces[:i] + self.pieces[i + 1:], self.L, self.degree)

    def describe(self):
        return {"degree": self.degree, "pieces": [p.describe() for p in self.pieces]}


def random_sample(r, sheaf, degree, L=None, npieces=3, omega=(0, 0), allow_dphi=True):
    at = sheaf.atlas
    L = at.nchart - 1 if L is None else L
    pieces = []
    tries = 0
    while len(pieces) < npieces and tries < 50 * npieces:
        tries += 1
        p = r.randint(0, L)
        K = tuple(r.randrange(at.nchart) for _ in range(p + 1))
        nd = 1 if allow_dphi and p < L and r.random() < 0.3 else 0
        vdeg = degree - p - nd
        if isinstance(sheaf, AlgebroidSheaf):
            val = random_alg_value(r, sheaf, K, vdeg, omega)
        else:
            val = random_hom_value(r, sheaf, K, vdeg, omega)
        if val.is_zero():
            continue
        phis = [r.randrange(at.nchart) for _ in range(r.randint(0, 1))]
        dphis = [r.randrange(at.nchart) for _ in range(nd)]
        pieces.append(Piece(_coef(r), phis, dphis, K, val))
    return Sample(sheaf, pieces, L, degree)


def random_tot(r, sheaf, degree, L=None, npieces=3, omega=(0, 0)):
    return random_sample(r, sheaf, degree, L, npieces, omega).element


def feasible_degrees(sheaf, L=None, omega=(0, 0)):
    """Degrees for which random homogeneous samples can be nonzero."""
    at = sheaf.atlas
    L = at.nchart - 1 if L is None else L
    if isinstance(sheaf, AlgebroidSheaf):
        hds = {a - b for a in sheaf.E.degrees for b in sheaf.E.degrees} | {0}
    else:
        hds = {a - b for a in sheaf.tgt.degrees for b in sheaf.src.degrees}
    out = set()
    for p in range(L + 1):
        for nd in (0, 1):
            for h in hds:
                for s in range(omega[0], omega[1] + 1):
                    out.add(p + nd + h + s)
    return sorted(out)


def shrink(sample, still_fails):
    """Greedy removal of pieces while the failure persists."""
    cur = sample
    changed = True
    while changed and len(cur.pieces) > 1:
        changed = False
        for i in range(len(cur.pieces)):
            cand = cur.without(i)
            if still_fails(cand):
                cur = cand
                changed = True
                break
    return cur
