"""Cyclic forms, Koszul signs and shuffles, and the L-infinity components
f (any d_Tot-closed cyclic form) and g (trace form), with an exact checker
for the conditions C_n."""

from fractions import Fraction
from itertools import combinations

from .algebroid_conn import (SimplicialLifting, connection_apply, extension_cocycle)
from .cech_tot import (AlgebroidSheaf, TotElement, TotError, tot_bracket, tot_differential)
from .simplex_forms import MixedForm
from .super_matrix import AlgVal, FormMatrix, kron
from .variety import HomSheaf, end_complex, structure_sheaf, tensor_complex

HALF = Fraction(1, 2)


# ------------------------------------------------------------------ signs

def koszul_chi(sigma, degrees, symmetric=False):
    """Sign chi with v_{s(1)} ^ ... ^ v_{s(n)} = chi v_1 ^ ... ^ v_n (0-based sigma).

    ``symmetric`` gives the symmetric rule (no extra minus per swap); it is
    only used as a deliberately wrong variant in negative controls."""
    if len(sigma) != len(degrees):
        raise ValueError("permutation and degree list differ in length")
    seq = list(sigma)
    sign = 1
    n = len(seq)
    for i in range(n):
        for j in range(n - 1 - i):
            if seq[j] > seq[j + 1]:
                a, b = degrees[seq[j]], degrees[seq[j + 1]]
                s = -1 if (a * b) % 2 else 1
                sign *= s if symmetric else -s
                seq[j], seq[j + 1] = seq[j + 1], seq[j]
    return sign


def shuffles(p, q):
    """(p, q)-shuffles as 0-based tuples (sigma(0), ..., sigma(p+q-1))."""
    n = p + q
    out = []
    for first in combinations(range(n), p):
        rest = [i for i in range(n) if i not in first]
        out.append(tuple(first) + tuple(rest))
    return out


# ------------------------------------------------------------------ representations

class Representation:
    """Tensor-square representation theta: D(E) -> D(E (x) E), x -> x(x)1 + 1(x)x."""

    def __init__(self, E):
        self.E = E
        self.F = tensor_complex(E, E)
        self.F.name = f"{E.name}^2"
        self.kernel_F = end_complex(self.F)
        self.alg_F = AlgebroidSheaf(self.F)

    def on_matrix(self, X):
        IE = FormMatrix.identity(self.E.degrees, X.nt, X.ny)
        return kron(X, IE) + kron(IE, X)

    def on_value(self, v):
        if isinstance(v, AlgVal):
            return AlgVal(v.vec, self.on_matrix(v.mat))
        return self.on_matrix(v)

    def on_tot(self, x):
        sheaf = self.alg_F if isinstance(x.sheaf, AlgebroidSheaf) else self.kernel_F
        return TotElement(sheaf, {J: self.on_value(v) for J, v in x.comps.items()}, x.L)


def adjoint_matrix(X):
    """ad X on End of a degree-0 bundle, basis E_ab in lexicographic order."""
    r = len(X.rdeg)
    if any(X.rdeg) or any(X.cdeg):
        raise ValueError("the Killing flavor needs a bundle concentrated in degree 0")
    n = r * r
    ent = {}
    for a in range(r):
        for b in range(r):
            for c in range(r):
                for d in range(r):
                    f = MixedForm.zero(X.nt, X.ny)
                    if b == d:
                        f = f + X.get(a, c)
                    if a == c:
                        f = f - X.get(d, b)
                    if f.terms:
                        ent[(a * r + b, c * r + d)] = f
    deg = (0,) * n
    return FormMatrix(deg, deg, X.nt, X.ny, ent)


class CyclicForm:
    """Cyclic pairing on the kernel End(E) of D(E), extended to Omega-twists and Tot.

    Flavors: ``trace_neg`` (-Str(xy)), ``representation`` (Str(theta x theta y),
    theta the tensor square), ``killing`` (Tr(ad x ad y))."""

    FLAVORS = ("trace_neg", "representation", "killing")

    def __init__(self, E, flavor="trace_neg"):
        if flavor not in self.FLAVORS:
            raise ValueError(f"unknown flavor {flavor!r}")
        self.E = E
        self.flavor = flavor
        self.theta = Representation(E) if flavor == "representation" else None
        if flavor == "killing" and (any(E.degrees) or E.has_differential()):
            raise ValueError("the Killing flavor needs a bundle concentrated in degree 0")

    def pair(self, X, Y, chart=None):
        if self.flavor == "trace_neg":
            return -(X * Y).supertrace()
        if self.flavor == "representation":
            return (self.theta.on_matrix(X) * self.theta.on_matrix(Y)).supertrace()
        return (adjoint_matrix(X) * adjoint_matrix(Y)).trace()

    def target_sheaf(self, atlas, de_rham=False):
        return structure_sheaf(atlas, max_omega=1 if de_rham else None, de_rham=de_rham)

    def tot(self, x, y, sheaf=None):
        sheaf = sheaf or self.target_sheaf(x.atlas)
        out = {}
        for J, a in x.comps.items():
            b = y.comps.get(J)
            if b is not None:
                f = self.pair(a, b)
                if f.terms:
                    out[J] = sheaf.truncate(FormMatrix.scalar(f))
        return TotElement(sheaf, out, x.L)


def form_eval(F, x, y, sheaf=None):
    if isinstance(x, TotElement):
        return F.tot(x, y, sheaf)
    return F.pair(x, y)


def rho_action_scalar(b, f):
    """(Id (x) rho)(b) applied to a scalar form f: sum_k b_k d_k f."""
    acc = f.zero_like()
    for k, a in enumerate(b.vec):
        if a.terms:
            acc = acc + a * f.partial_y(k)
    return acc


# ------------------------------------------------------------------ L-infinity components

def _deg(x, default=0):
    d = x.degree()
    return default if d is None else d


class LinfContext:
    """Shared data of the components: lifting D, cocycle u, form, target sheaf."""

    def __init__(self, lifting, form, mutation=None):
        self.lifting = lifting
        self.form = form
        self.atlas = lifting.algebroid.atlas
        self.u = extension_cocycle(lifting)
        self.target = structure_sheaf(self.atlas, max_omega=1, de_rham=True)
        self.mutation = mutation

    def pair(self, x, y):
        return self.form.tot(x, y, self.target)

    def nabla(self, x):
        return connection_apply(self.lifting, x)

    def d_source(self, x):
        return tot_differential(x)

    def d_target(self, m):
        return tot_differential(m)

    def bracket(self, x, y):
        return tot_bracket(x, y)

    def zero(self, L):
        return TotElement(self.target, {}, L)


class LinfF:
    """f_1 = <u,x>, f_2 = 1/2(<Nx,y> - (-1)^{xy}<Ny,x>), f_3 = -1/2 <x,[y,z]>."""

    def __init__(self, ctx):
        self.ctx = ctx

    def __call__(self, n, args, degs=None):
        c = self.ctx
        if degs is None:
            degs = [_deg(a) for a in args]
        if n == 1:
            return c.pair(c.u, args[0])
        if n == 2:
            x, y = args
            s = -1 if degs[0] * degs[1] % 2 else 1
            if c.mutation == "f2_sign":
                s = -s
            a = c.pair(c.nabla(x), y)
            b = c.pair(c.nabla(y), x)
            return (a - b.scale(s)).scale(HALF)
        if n == 3:
            x, y, z = args
            return c.pair(x, c.bracket(y, z)).scale(-HALF)
        return c.zero(args[0].L)


class LinfG:
    """g_1 = -Tr(ux), g_2 = -1/2 Tr(Nx y - (-1)^{xy} Ny x), g_3 = 1/2 Tr(x[y,z])."""

    def __init__(self, ctx):
        self.ctx = ctx

    def _tr(self, x, y):
        sh = self.ctx.target
        out = {}
        for J, a in x.comps.items():
            b = y.comps.get(J)
            if b is not None:
                f = (a * b).supertrace()
                if f.terms:
                    out[J] = sh.truncate(FormMatrix.scalar(f))
        return TotElement(sh, out, x.L)

    def __call__(self, n, args, degs=None):
        c = self.ctx
        if degs is None:
            degs = [_deg(a) for a in args]
        if n == 1:
            return self._tr(c.u, args[0]).scale(-1)
        if n == 2:
            x, y = args
            s = -1 if degs[0] * degs[1] % 2 else 1
            if c.mutation == "f2_sign":
                s = -s
            return (self._tr(c.nabla(x), y) - self._tr(c.nabla(y), x).scale(s)).scale(-HALF)
        if n == 3:
            x, y, z = args
            return self._tr(x, c.bracket(y, z)).scale(HALF)
        return c.zero(args[0].L)


def linf_f(n, args, ctx):
    return LinfF(ctx)(n, args)


def linf_g(n, args, ctx):
    return LinfG(ctx)(n, args)


def cn_residual(n, comp, ctx, args, degs, symmetric_chi=False):
    """LHS - RHS of condition C_n for the component family ``comp``."""
    L = args[0].L
    lhs = ctx.d_target(comp(n, args, degs)) if n <= 3 else ctx.zero(L)
    rhs = ctx.zero(L)
    sgn1 = -1 if (1 - n) % 2 else 1
    if n <= 3:
        for sig in shuffles(1, n - 1):
            chi = koszul_chi(sig, degs, symmetric_chi)
            a = [ctx.d_source(args[sig[0]])] + [args[i] for i in sig[1:]]
            d = [degs[sig[0]] + 1] + [degs[i] for i in sig[1:]]
            rhs = rhs + comp(n, a, d).scale(sgn1 * chi)
    if 2 <= n <= 4:
        sgn2 = -1 if (2 - n) % 2 else 1
        for sig in shuffles(2, n - 2):
            chi = koszul_chi(sig, degs, symmetric_chi)
            br = ctx.bracket(args[sig[0]], args[sig[1]])
            a = [br] + [args[i] for i in sig[2:]]
            d = [degs[sig[0]] + degs[sig[1]]] + [degs[i] for i in sig[2:]]
            rhs = rhs + comp(n - 1, a, d).scale(sgn2 * chi)
    return lhs - rhs


def verify_Cn(n, comp, ctx, samples, symmetric_chi=False, shrink_failures=True):
    """Check C_n on a list of tuples of ``Sample`` objects.

    Returns a report dict: samples run, max residual (0 or 1 as 'nonzero'),
    and on failure a minimal reproducing sample."""
    from .sampling import shrink
    failures = 0
    minimal = None
    for tup in samples:
        args = [s.element for s in tup]
        degs = [s.degree for s in tup]
        res = cn_residual(n, comp, ctx, args, degs, symmetric_chi)
        if not res.is_zero():
            failures += 1
            if minimal is None:
                minimal = _shrink_tuple(n, comp, ctx, tup, symmetric_chi) if shrink_failures else tup
    rep = {"condition": f"C{n}", "samples": len(samples), "failures": failures,
           "residual": "0" if failures == 0 else "nonzero"}
    if minimal is not None:
        rep["minimal_sample"] = [s.describe() for s in minimal]
    return rep


def _shrink_tuple(n, comp, ctx, tup, symmetric_chi):
    from .sampling import shrink
    cur = list(tup)

    def fails(candidate):
        args = [s.element for s in candidate]
        degs = [s.degree for s in candidate]
        return not cn_residual(n, comp, ctx, args, degs, symmetric_chi).is_zero()

    for i in range(len(cur)):
        def f_i(s, i=i):
            trial = cur[:i] + [s] + cur[i + 1:]
            return fails(trial)
        cur[i] = shrink(cur[i], f_i)
    return cur


def pushed_lifting(lifting, theta):
    """The simplicial lifting theta(D) of D(E (x) E) induced by the tensor square."""
    from .algebroid_conn import Algebroid
    algF = Algebroid(theta.F)
    algF.sheaf = theta.alg_F
    algF.kernel = theta.alg_F.kernel
    D = theta.on_tot(lifting.D)
    return SimplicialLifting(algF, D, None)


def composition_residual(lifting, n, args, degs=None):
    """f^theta_n(x..) + g^{theta D}_n(theta x..): zero when f^theta = (-g) o theta."""
    E = lifting.algebroid.E
    ctx_f = LinfContext(lifting, CyclicForm(E, "representation"))
    theta = ctx_f.form.theta
    ctx_g = LinfContext(pushed_lifting(lifting, theta), CyclicForm(theta.F, "trace_neg"))
    lhs = LinfF(ctx_f)(n, args, degs)
    rhs = LinfG(ctx_g)(n, [theta.on_tot(a) for a in args], degs)
    return lhs + rhs


# ------------------------------------------------------------------ lemma residuals

def _sign(a):
    return -1 if a % 2 else 1


def omega_linearity_residual(b, x, f):
    """[f b, x] - f [b, x] for an Omega-twisted algebroid value b and a kernel value x."""
    from .cech_tot import alg_act
    return alg_act(b.left_mul(f), x) - alg_act(b, x).left_mul(f)


def exchange_residual(lifting, x):
    """N(dx) - ([u, x] - d N x)."""
    u = extension_cocycle(lifting)
    lhs = connection_apply(lifting, tot_differential(x))
    rhs = tot_bracket(u, x) - tot_differential(connection_apply(lifting, x))
    return lhs - rhs


def cyclicity_residual(F, a, x, y, deg_a, deg_x):
    """<[a,x],y> + (-1)^{a x}<x,[a,y]> - rho(a)<x,y> on one chart."""
    from .cech_tot import alg_act
    lhs = F.pair(alg_act(a, x), y) + F.pair(x, alg_act(a, y)) * _sign(deg_a * deg_x)
    return lhs - rho_action_scalar(a, F.pair(x, y))


def d_closure_residual(F, kernel, x, y, deg_x, chart):
    """<dx, y> + (-1)^x <x, dy> for the sheaf differential on one chart."""
    return F.pair(kernel.d_V(x, chart), y) + F.pair(x, kernel.d_V(y, chart)) * _sign(deg_x)


def tot_closure_residual(F, x, y, deg_x):
    """d_Tot<x,y> - <d x, y> - (-1)^x <x, d y> in the Tot complex of O."""
    lhs = tot_differential(F.tot(x, y))
    rhs = F.tot(tot_differential(x), y) + F.tot(x, tot_differential(y)).scale(_sign(deg_x))
    return lhs - rhs


def nabla_derham_residual(ctx, x, y, deg_x):
    """<N x, y> + (-1)^x <x, N y> - d_dR <x, y>."""
    lhs = ctx.pair(ctx.nabla(x), y) + ctx.pair(x, ctx.nabla(y)).scale(_sign(deg_x))
    p = ctx.pair(x, y)
    sh = ctx.target
    dp = p.like({J: sh.truncate(v.map_forms(lambda f: f.d_y())) for J, v in p.comps.items()})
    return lhs - dp


def killing_oracle(X, Y):
    """2r Tr(xy) - 2 Tr(x) Tr(y) for degree-0 matrices."""
    r = len(X.rdeg)
    return (X * Y).trace() * (2 * r) - X.trace() * Y.trace() * 2
