"""Derivations of pairs, simplicial liftings of the identity, extension
cocycles and the associated connections."""

from fractions import Fraction

from .cech_tot import (AlgebroidSheaf, TotElement, TotError, all_tuples, alg_act, alg_bracket,
                       tot_bracket, tot_check, tot_differential, v_lift)
from .simplex_forms import MixedForm
from .super_matrix import AlgVal, FormMatrix
from .variety import HomSheaf, end_complex, poly_to_form


class LiftingError(ValueError):
    pass


class DerPairElement:
    """A chart-level derivation of pairs: sum_k vec[k] d/dy_k + mat, acting on
    coefficient columns of the chart trivialization."""

    def __init__(self, algebroid, chart, value):
        self.algebroid = algebroid
        self.chart = chart
        self.value = value

    @property
    def vector_field(self):
        return self.value.vec

    @property
    def matrix_part(self):
        return self.value.mat

    def act(self, col):
        """Apply to a section given as a one-column FormMatrix."""
        out = self.value.mat * col
        for k, a in enumerate(self.value.vec):
            if a.terms:
                out = out + col.map_forms(lambda f: f.partial_y(k)).left_mul(a)
        return out

    def bracket(self, other):
        return DerPairElement(self.algebroid, self.chart, alg_bracket(self.value, other.value))

    def anchor(self):
        return self.value.vec

    def left_mul(self, f):
        return DerPairElement(self.algebroid, self.chart, self.value.left_mul(f))

    def __sub__(self, other):
        return DerPairElement(self.algebroid, self.chart, self.value - other.value)

    def is_zero(self):
        return self.value.is_zero()

    def derivative_of(self, f):
        """rho(self)(f) for a scalar function f."""
        acc = f.zero_like()
        for k, a in enumerate(self.value.vec):
            if a.terms:
                acc = acc + a * f.partial_y(k)
        return acc


class Algebroid:
    """Handle for the transitive DG-Lie algebroid of derivations of pairs of E."""

    def __init__(self, E, frame_bundle=False):
        self.E = E
        self.atlas = E.atlas
        self.sheaf = AlgebroidSheaf(E)
        self.kernel = self.sheaf.kernel
        self.frame_bundle = frame_bundle

    def element(self, chart, vec, mat):
        return DerPairElement(self, chart, AlgVal(vec, mat))

    def bracket(self, a, b):
        return a.bracket(b)

    def anchor(self, a):
        return a.anchor()

    def kernel_inclusion(self, chart, x):
        m = self.atlas.dim
        return DerPairElement(self, chart, AlgVal([MixedForm.zero(x.nt, m)] * m, x))

    def lift_vector_field(self, chart, vec):
        """Chartwise section of the anchor: (v, 0)."""
        E = self.E
        m = self.atlas.dim
        nt = vec[0].nt if vec else 0
        return DerPairElement(self, chart, AlgVal(vec, FormMatrix.zero(E.degrees, E.degrees, nt, m)))


def der_pairs_algebroid(E):
    return Algebroid(E)


def atiyah_algebroid_frame(E):
    if any(d != 0 for d in E.degrees) or E.has_differential():
        raise LiftingError("the frame-bundle Atiyah algebroid needs a vector bundle in degree 0")
    return Algebroid(E, frame_bundle=True)


def omega_bracket(b, x):
    """[eta (x) a, x] for an Omega^1[-1]-twisted algebroid value b and a kernel value x."""
    if not isinstance(x, FormMatrix):
        raise TypeError("second argument must be a kernel value")
    return alg_act(b, x)


def trivial_local_lift(algebroid, chart):
    """Coefficientwise de Rham differential in the chart trivialization."""
    m = algebroid.atlas.dim
    E = algebroid.E
    vec = [MixedForm.dy(k, 0, m) for k in range(m)]
    return AlgVal(vec, FormMatrix.zero(E.degrees, E.degrees, 0, m))


def identity_omega(atlas, nt=0):
    m = atlas.dim
    return [MixedForm.dy(k, nt, m) for k in range(m)]


class SimplicialLifting:
    def __init__(self, algebroid, D, local_lifts):
        self.algebroid = algebroid
        self.D = D
        self.local_lifts = local_lifts

    def anchor_image(self):
        return {J: list(v.vec) for J, v in self.D.comps.items()}

    def check(self):
        at = self.algebroid.atlas
        for J in all_tuples(at.nchart, self.D.L):
            v = self.D.value(J)
            if list(v.vec) != identity_omega(at, len(J) - 1):
                return False
        return tot_check(self.D)


def build_simplicial_lifting(algebroid, local_lifts=None, L=None):
    """Barycentric assembly D(J) = sum_k t_k * (lift of chart J_k transported to min J)."""
    at = algebroid.atlas
    sh = algebroid.sheaf
    if local_lifts is None:
        local_lifts = {c: trivial_local_lift(algebroid, c) for c in range(at.nchart)}
    for c, v in local_lifts.items():
        if list(v.vec) != identity_omega(at):
            raise LiftingError(f"local lift on chart {c} does not map to the identity of Omega^1")
    Lx = at.nchart - 1 if L is None else L
    comps = {}
    for J in all_tuples(at.nchart, Lx):
        n = len(J) - 1
        h = min(J)
        acc = None
        for k, c in enumerate(J):
            t = MixedForm.t(k, n, at.dim)
            v = sh.transport(v_lift(local_lifts[c], n), h, c).left_mul(t)
            acc = v if acc is None else acc + v
        comps[J] = acc
    D = TotElement(sh, comps, Lx)
    return SimplicialLifting(algebroid, D, local_lifts)


def extension_cocycle(lifting):
    """u = d_Tot D, returned as a Tot element of Omega^1[-1] (x) End(E)."""
    dD = tot_differential(lifting.D)
    ker = lifting.algebroid.kernel
    out = {}
    for J, v in dD.comps.items():
        if any(a.terms for a in v.vec):
            raise LiftingError("d_Tot D is not killed by the anchor")
        out[J] = v.mat
    return TotElement(ker, out, lifting.D.L)


def kernel_part(x_alg, kernel_sheaf):
    """View an anchor-killed algebroid Tot element as a kernel Tot element."""
    out = {}
    for J, v in x_alg.comps.items():
        if any(a.terms for a in v.vec):
            raise LiftingError("element is not in the kernel of the anchor")
        out[J] = v.mat
    return TotElement(kernel_sheaf, out, x_alg.L)


def connection_apply(lifting, x):
    return tot_bracket(lifting.D, x, x.sheaf)


def anchor_tot(x_alg):
    return {J: list(v.vec) for J, v in x_alg.comps.items()}


def random_local_lifts(r, algebroid, nterms=1):
    """Local lifts (d_dR, Theta_c) with random matrix-valued 1-forms Theta_c."""
    from .sampling import random_hom_value
    at = algebroid.atlas
    out = {}
    for c in range(at.nchart):
        base = trivial_local_lift(algebroid, c)
        mat = random_hom_value(r, algebroid.kernel, (c,), 1, omega=(1, 1))
        out[c] = AlgVal(base.vec, mat)
    return out


def local_splitting(algebroid, vec, home, chart):
    """s_chart(v) = (v, 0) in the chart trivialization, expressed in home coordinates."""
    sh = algebroid.sheaf
    E = algebroid.E
    nt = vec[0].nt
    zero = FormMatrix.zero(E.degrees, E.degrees, nt, algebroid.atlas.dim)
    if chart == home:
        return AlgVal(vec, zero)
    there = sh.transport(AlgVal(vec, zero), chart, home)
    return sh.transport(AlgVal(there.vec, zero), home, chart)


def anchor_preimage(algebroid, theta):
    """Barycentric preimage under Id (x) rho of a Tot family of (twisted) vector fields.

    ``theta`` maps tuples J to vector-field coordinates in the home chart of J."""
    at = algebroid.atlas
    comps = {}
    L = None
    for J, vec in theta.items():
        n = len(J) - 1
        h = min(J)
        acc = None
        for k, c in enumerate(J):
            t = MixedForm.t(k, n, at.dim)
            v = local_splitting(algebroid, list(vec), h, c).left_mul(t)
            acc = v if acc is None else acc + v
        comps[J] = acc
        L = max(L or 0, n)
    return TotElement(algebroid.sheaf, comps, L)
