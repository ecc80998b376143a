"""Deformation calculus over Artin rings with monomial ideals.

Nilpotent elements are stored as dicts {monomial: value} over the basis of
the maximal ideal; any value type with +, - and scale works.  Lie data is
supplied by a bracket callable.
"""

from fractions import Fraction
from itertools import product as _iproduct
from math import factorial

from .cech_tot import (CechComplex, TotElement, TotError, class_in_hypercohomology, class_of, restrict,
                       tot_bracket, tot_differential, whitney_integrate)
from .super_matrix import FormMatrix
from .variety import end_complex, structure_sheaf


class DeformError(ValueError):
    pass


class ArtinRing:
    """K[t_1..t_s]/I with I generated by monomials and of finite codimension."""

    def __init__(self, ngens, ideal, bound=12):
        self.ngens = ngens
        self.ideal = [tuple(g) for g in ideal]
        if any(len(g) != ngens for g in self.ideal):
            raise DeformError("ideal generator has the wrong number of exponents")
        basis = []
        frontier = [(0,) * ngens]
        seen = set(frontier)
        while frontier:
            m = frontier.pop()
            if self.in_ideal(m):
                continue
            if sum(m) > bound:
                raise DeformError("quotient is not finite dimensional within the search bound")
            basis.append(m)
            for i in range(ngens):
                n = tuple(a + (j == i) for j, a in enumerate(m))
                if n not in seen:
                    seen.add(n)
                    frontier.append(n)
        self.basis = sorted(basis, key=lambda m: (sum(m), m))
        self.max_basis = [m for m in self.basis if sum(m)]
        self.N = max(sum(m) for m in self.basis) + 1

    @classmethod
    def truncated_polynomial(cls, order):
        """K[t]/(t^order)."""
        return cls(1, [(order,)])

    def in_ideal(self, m):
        return any(all(a >= b for a, b in zip(m, g)) for g in self.ideal)

    def mul(self, m1, m2):
        m = tuple(a + b for a, b in zip(m1, m2))
        return None if self.in_ideal(m) else m

    def quotient(self, k):
        """A / m^k."""
        extra = [m for m in _monomials(self.ngens, k)]
        return ArtinRing(self.ngens, self.ideal + extra)

    def power_part(self, k):
        """Basis monomials of m^k / m^{k+1} (monomial ideals: exactly the degree-k basis)."""
        return [m for m in self.basis if sum(m) == k]

    def __repr__(self):
        return f"ArtinRing(ngens={self.ngens}, ideal={self.ideal})"


def _monomials(n, k):
    if n == 1:
        return [(k,)]
    out = []
    for a in range(k + 1):
        for rest in _monomials(n - 1, k - a):
            out.append((a,) + rest)
    return out


# ------------------------------------------------------------------ nilpotent arithmetic

def nil_add(a, b):
    out = dict(a)
    for m, v in b.items():
        out[m] = out[m] + v if m in out else v
    return out


def nil_scale(a, c):
    return {m: v.scale(c) for m, v in a.items()}


def nil_neg(a):
    return nil_scale(a, -1)


def nil_mul(ring, a, b, op):
    """Bilinear op extended A-bilinearly (coefficients are even scalars)."""
    out = {}
    for m1, v1 in a.items():
        for m2, v2 in b.items():
            m = ring.mul(m1, m2)
            if m is None:
                continue
            w = op(v1, v2)
            out[m] = out[m] + w if m in out else w
    return out


def nil_is_zero(a):
    return all(v.is_zero() for v in a.values())


def nil_equal(a, b):
    return nil_is_zero(nil_add(a, nil_neg(b)))


def nil_map(a, fn):
    return {m: fn(v) for m, v in a.items()}


def _nested(ring, word, X, Y, br):
    """Right-nested bracket [w1,[w2,...[w_{k-1}, w_k]]] of the letters in ``word``."""
    letters = {"X": X, "Y": Y}
    acc = letters[word[-1]]
    for ch in reversed(word[:-1]):
        acc = nil_mul(ring, letters[ch], acc, br)
        if not acc:
            break
    return acc


def bch(ring, X, Y, br):
    """Baker-Campbell-Hausdorff product by Dynkin's formula, exact in a nilpotent ring."""
    N = ring.N
    out = {}
    for n in range(1, N):
        for pairs in _iproduct([(r, s) for r in range(N) for s in range(N) if 0 < r + s < N], repeat=n):
            total = sum(r + s for r, s in pairs)
            if total >= N:
                continue
            rs, ss = pairs[-1]
            if ss > 1 or (ss == 0 and rs > 1):
                continue
            word = "".join("X" * r + "Y" * s for r, s in pairs)
            term = _nested(ring, word, X, Y, br)
            if not term:
                continue
            den = n * total
            for r, s in pairs:
                den *= factorial(r) * factorial(s)
            c = Fraction((-1) ** (n - 1), den)
            out = nil_add(out, nil_scale(term, c))
    return {m: v for m, v in out.items() if not v.is_zero()}


# ------------------------------------------------------------------ associative (matrix) side

def mat_one(ring, like):
    return {(0,) * ring.ngens: FormMatrix.identity(like.rdeg, like.nt, like.ny)}


def mat_mul(ring, A, B):
    return nil_mul(ring, A, B, lambda a, b: a * b)


def mat_exp(ring, X):
    """exp of a nilpotent matrix X (coefficients in the maximal ideal)."""
    if not X:
        raise DeformError("exp of an empty element needs a shape; pass a zero matrix")
    like = next(iter(X.values()))
    out = mat_one(ring, like)
    term = mat_one(ring, like)
    for k in range(1, ring.N):
        term = nil_scale(mat_mul(ring, term, X), Fraction(1, k))
        out = nil_add(out, term)
    return out


def mat_log(ring, G):
    """log of a unipotent G = 1 + Y."""
    one = (0,) * ring.ngens
    if one not in G:
        raise DeformError("log needs a unipotent element")
    like = G[one]
    Y = dict(G)
    Y[one] = G[one] - FormMatrix.identity(like.rdeg, like.nt, like.ny)
    if not Y[one].is_zero():
        raise DeformError("constant term of log argument is not the identity")
    del Y[one]
    out = {}
    power = mat_one(ring, like)
    for k in range(1, ring.N):
        power = mat_mul(ring, power, Y)
        out = nil_add(out, nil_scale(power, Fraction((-1) ** (k + 1), k)))
    return {m: v for m, v in out.items() if not v.is_zero()}


def commutator(a, b):
    return a.commutator(b)


# ------------------------------------------------------------------ Maurer-Cartan in Tot

class MCElement:
    """Degree-one Tot element with coefficients in the maximal ideal of ``ring``."""

    def __init__(self, ring, comps):
        self.ring = ring
        self.comps = {m: v for m, v in comps.items() if m in ring.basis and sum(m)}

    def d(self):
        return {m: tot_differential(v) for m, v in self.comps.items()}

    def bracket(self, other):
        return nil_mul(self.ring, self.comps, other.comps, lambda a, b: tot_bracket(a, b))

    def lift(self, ring, extra=None):
        """Same coefficients over a larger ring, plus ``extra`` {monomial: TotElement}."""
        comps = dict(self.comps)
        for m, v in (extra or {}).items():
            comps[m] = comps[m] + v if m in comps else v
        return MCElement(ring, comps)


def mc_residual(x):
    """dx + 1/2 [x, x]."""
    return nil_add(x.d(), nil_scale(x.bracket(x), Fraction(1, 2)))


def is_mc(x):
    return nil_is_zero(mc_residual(x))


def obstruction_cocycles(x_big):
    """Top-order part of the residual of a lift to A/m^{k+1}: {monomial: TotElement}."""
    res = mc_residual(x_big)
    k = x_big.ring.N - 1
    top = {m: v for m, v in res.items() if sum(m) == k}
    low = {m: v for m, v in res.items() if sum(m) < k and not v.is_zero()}
    if low:
        raise DeformError("input is not Maurer-Cartan below the top order")
    return top


def obstruction_class(x, ring_big, lift_extra=None, E=None):
    """Class in H^2(End E) (x) m^k/m^{k+1} of the lifted residual.

    ``x`` is MC over A/m^k; ``lift_extra`` adds arbitrary top-order terms.
    Returns {monomial: CechClass}.
    """
    if not is_mc(x):
        raise DeformError("input is not Maurer-Cartan")
    big = x.lift(ring_big, lift_extra)
    tops = obstruction_cocycles(big)
    if E is None:
        E = _bundle_of(x)
    cx = CechComplex(end_complex(E))
    out = {}
    for m in ring_big.power_part(ring_big.N - 1):
        v = tops.get(m)
        coch = whitney_integrate(v, ordered=False) if v is not None else {}
        out[m] = class_of(cx, coch, 2)
    return out, tops


def lift_independence(x, ring_big, extra1, extra2, E=None):
    """Certify that two lifts give cohomologous obstruction cocycles.

    The residual difference is integrated and solved against the Čech
    differential slice by slice."""
    if E is None:
        E = _bundle_of(x)
    _, t1 = obstruction_class(x, ring_big, extra1, E)
    _, t2 = obstruction_class(x, ring_big, extra2, E)
    cx = CechComplex(end_complex(E))
    for m in ring_big.power_part(ring_big.N - 1):
        a = t1.get(m)
        b = t2.get(m)
        if a is None and b is None:
            continue
        diff = (a if a is not None else b.scale(0)) - (b if b is not None else a.scale(0))
        coch = whitney_integrate(diff, ordered=False)
        for W, part in cx.split_by_weight(coch).items():
            vec = cx.vectorize(part, W, 2)
            if not cx.in_image(vec, W, 2):
                return False
    return True


def _bundle_of(x):
    for v in x.comps.values():
        return v.sheaf.src
    raise DeformError("cannot infer the bundle of a zero element")


# ------------------------------------------------------------------ non-abelian Čech cocycles

class CechLie:
    """Semicosimplicial Lie algebra of degree-0 End(E) sections on ordered
    overlaps; values live in the home chart min(J)."""

    def __init__(self, E, ring):
        if any(E.degrees) or E.has_differential():
            raise DeformError("non-abelian cocycles are implemented for vector bundles in degree 0")
        self.E = E
        self.ring = ring
        self.sheaf = end_complex(E)
        self.atlas = E.atlas

    def zero_matrix(self):
        return self.sheaf.zero_value(0)

    def tuples(self, p):
        return list(_iproduct(range(self.atlas.nchart), repeat=p + 1))

    def move(self, v, src, dst):
        """Re-express a nilpotent value from home chart src to home chart dst."""
        if src == dst:
            return v
        return nil_map(v, lambda X: self.sheaf.transport(X, dst, src))

    def exp_at(self, v, src, dst):
        v = self.move(v, src, dst)
        if not v:
            return mat_one(self.ring, self.zero_matrix())
        return mat_exp(self.ring, v)


class NonAbelianCocycle:
    def __init__(self, lie, values):
        self.lie = lie
        self.values = values  # ordered pair (i, j) -> {monomial: FormMatrix}

    def value(self, J):
        return self.values.get(J, {})


def z1_check(x):
    """e^{x_ik} = e^{x_ij} e^{x_jk} on every ordered triple."""
    lie = x.lie
    R = lie.ring
    for (i, j, k) in lie.tuples(2):
        h = min(i, j, k)
        lhs = lie.exp_at(x.value((i, k)), min(i, k), h)
        rhs = mat_mul(R, lie.exp_at(x.value((i, j)), min(i, j), h),
                      lie.exp_at(x.value((j, k)), min(j, k), h))
        if not nil_equal(lhs, rhs):
            return False
    return True


def gauge_act(a, x):
    """(a.x)_ij = log(e^{a_i} e^{x_ij} e^{-a_j}); ``a`` maps chart -> nilpotent value."""
    lie = x.lie
    R = lie.ring
    out = {}
    for (i, j) in lie.tuples(1):
        h = min(i, j)
        g = mat_mul(R, lie.exp_at(a.get(i, {}), i, h), lie.exp_at(x.value((i, j)), h, h))
        g = mat_mul(R, g, lie.exp_at(nil_neg(a.get(j, {})), j, h))
        lg = mat_log(R, g)
        if lg:
            out[(i, j)] = lg
    return NonAbelianCocycle(lie, out)


def compose_gauges(lie, a, b):
    """Chartwise BCH product, so that (a * b).x = a.(b.x)."""
    return {c: bch(lie.ring, a.get(c, {}), b.get(c, {}), commutator) for c in set(a) | set(b)}


# ------------------------------------------------------------------ semiregularity

def _scalar_tot(atlas, comps, L, de_rham=False):
    sh = structure_sheaf(atlas, max_omega=1 if de_rham else None, de_rham=de_rham)
    return TotElement(sh, {J: FormMatrix.scalar(f) for J, f in comps.items() if f.terms}, L)


def _check_degree_two(a):
    degs = a.degrees()
    if degs and degs != {2}:
        raise DeformError(f"semiregularity maps take degree-2 classes, got degrees {sorted(degs)}")


def semireg_sigma1(a, u, check=True):
    """Class of -Tr(u a) in H^3(Omega^1), after Whitney integration."""
    _check_degree_two(a)
    if check and not tot_differential(a).is_zero():
        raise DeformError("argument is not a d_Tot cocycle")
    comps = {}
    for J, v in u.comps.items():
        b = a.comps.get(J)
        if b is not None:
            comps[J] = -(v * b).supertrace()
    T = _scalar_tot(u.atlas, comps, u.L)
    cx = CechComplex(structure_sheaf(u.atlas), omega=(1, 1))
    return class_of(cx, whitney_integrate(T, ordered=False), 4)


def semireg_tau1(a, ctx, check=True):
    """Class of f_1(a) in H^2 of Omega^{<=1}[2]."""
    from .cyclic_linf import LinfF
    _check_degree_two(a)
    if check and not tot_differential(a).is_zero():
        raise DeformError("argument is not a d_Tot cocycle")
    return class_in_hypercohomology(LinfF(ctx)(1, [a]), degree=2)


def cup_pairing_class(u, x_cochains, x_degree, form):
    """<[u], [x]> computed on the Čech side: the cup product of the integrated
    extension cocycle with an alternating cocycle of End, paired by ``form``.

    (u cup x)(J) = (-1)^{q |u_p|} <u_p(J_0..J_p), x_q(J_p..J_{p+q})> on increasing J,
    where |u_p| is the degree of the level-p value of u.
    """
    from itertools import combinations
    from .cech_tot import whitney_integrate
    at = u.atlas
    cu = whitney_integrate(u, ordered=True)
    ubar = max(u.degrees(), default=0)
    out = {}
    for p, upart in cu.items():
        for q, xpart in x_cochains.items():
            sign = -1 if q * (ubar - p) % 2 else 1
            for J in combinations(range(at.nchart), p + q + 1):
                a = upart.get(J[:p + 1])
                b = xpart.get(J[p:])
                if a is None or b is None:
                    continue
                f = form.pair(restrict(u.sheaf, a, J[:p + 1], J), restrict(u.sheaf, b, J[p:], J))
                if not f.terms:
                    continue
                v = FormMatrix.scalar(f if sign > 0 else -f)
                lvl = out.setdefault(p + q, {})
                lvl[J] = lvl[J] + v if J in lvl else v
    return class_in_hypercohomology(out, degree=x_degree, atlas=at)


def i1_images(atlas, q, window=(-4, 4)):
    """Images of a basis of the Čech H^q of Omega^1 (total degree q) in the
    hypercohomology of Omega^{<=1}; returns (generators, classes)."""
    cx = CechComplex(structure_sheaf(atlas), omega=(1, 1))
    weights = [W for W in cx.window_weights(*window) if cx.slice_dim(W, q)]
    gens = cohomology_generators(cx, q, weights)
    return gens, [class_in_hypercohomology(g, degree=q, atlas=atlas, shifted=False) for g in gens]


def classes_independent(classes):
    """Exact linear independence of CechClass coordinate vectors."""
    from .exact_ring import rank
    keys = sorted({(W, i) for c in classes for W, v in c.coords.items() for i in range(len(v))})
    rows = [[c.coords.get(W, [0] * (i + 1))[i] if W in c.coords else 0 for (W, i) in keys]
            for c in classes]
    return rank(rows, len(keys)) == len(classes) if classes else True


def _perm_sign(seq):
    s = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                s = -s
    return s


def tot_from_alternating(sheaf, cochains, L=None, check=True):
    """Whitney extension of an alternating Čech cochain {p: {J increasing: value}}.

    Values are extended to every permutation of J with the permutation sign
    and to zero on degenerate tuples before extending over the simplices."""
    from itertools import permutations
    from .sampling import whitney_extension
    at = sheaf.atlas
    L = at.nchart - 1 if L is None else L
    comps = {}
    for p, part in cochains.items():
        for J, v in part.items():
            for perm in set(permutations(J)):
                w = restrict(sheaf, v, J, perm) if min(perm) != min(J) else v
                if _perm_sign(perm) < 0:
                    w = -w
                for K, e in whitney_extension(sheaf, perm, w, L).items():
                    comps[K] = comps[K] + e if K in comps else e
    x = TotElement(sheaf, comps, L)
    if check and not (tot_differential(x).is_zero() or not _is_cech_cocycle(sheaf, cochains)):
        raise DeformError("Whitney extension of a Čech cocycle is not d_Tot-closed")
    return x


def _is_cech_cocycle(sheaf, cochains):
    from .cech_tot import cech_total_differential
    top = max(cochains) + 1 if cochains else 0
    return not cech_total_differential(sheaf, cochains, top, ordered=False)


def cohomology_generators(cx, q, weights):
    """Representatives of H^q on the given weight slices, as Čech cochains."""
    from .cech_tot import _quotient_basis
    out = []
    for W in weights:
        reps, _ = _quotient_basis(cx, W, q)
        keys = cx.basis(W, q)
        for v in reps:
            coch = {}
            for key, c in zip(keys, v):
                if c:
                    for p, part in cx.element(key).items():
                        for J, val in part.items():
                            cur = coch.setdefault(p, {}).get(J)
                            coch[p][J] = val.scale(c) if cur is None else cur + val.scale(c)
            out.append(coch)
    return out
