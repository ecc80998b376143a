import random
from itertools import permutations
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from semireg.algebroid_conn import Algebroid, build_simplicial_lifting, random_local_lifts
from semireg.cech_tot import tot_differential
from semireg.cyclic_linf import (CyclicForm, LinfContext, LinfF, LinfG, adjoint_matrix, cn_residual,
                                 killing_oracle, koszul_chi, shuffles)
from semireg.sampling import random_hom_value, random_sample
from semireg.variety import (build_projective_space, direct_sum, end_complex, line_bundle,
                             standard_two_term)

P1 = build_projective_space(1)
E2 = standard_two_term(P1)
ALG = Algebroid(E2)
LIFT = build_simplicial_lifting(ALG, random_local_lifts(random.Random(11), ALG))
CTX = LinfContext(LIFT, CyclicForm(E2, "trace_neg"))
KER = ALG.kernel


def test_koszul_examples():
    assert koszul_chi((0, 1), (1, 1)) == 1
    assert koszul_chi((1, 0), (1, 1)) == 1
    assert koszul_chi((1, 0), (0, 1)) == -1
    assert koszul_chi((1, 0), (0, 0)) == -1
    assert koszul_chi((1, 0), (1, 1), symmetric=True) == -1
    with pytest.raises(ValueError):
        koszul_chi((0, 1), (1,))


def compose(s, t):
    return tuple(s[t[i]] for i in range(len(t)))


@given(st.permutations(range(4)), st.permutations(range(4)),
       st.lists(st.integers(-2, 2), min_size=4, max_size=4))
@settings(max_examples=100, deadline=None)
def test_koszul_sign_is_a_cocycle(s, t, degs):
    # chi(s o t; v) = chi(s; v) chi(t; v_s)
    permuted = [degs[i] for i in s]
    assert koszul_chi(compose(s, t), degs) == koszul_chi(s, degs) * koszul_chi(t, permuted)


@pytest.mark.parametrize("p,q", [(1, 1), (1, 2), (2, 2), (1, 3), (2, 3)])
def test_shuffle_counts(p, q):
    sh = shuffles(p, q)
    assert len(sh) == comb(p + q, p) == len(set(sh))
    for s in sh:
        assert list(s[:p]) == sorted(s[:p]) and list(s[p:]) == sorted(s[p:])


def sample(r, deg):
    for _ in range(30):
        s = random_sample(r, KER, deg, 1)
        if not s.element.is_zero():
            return s.element
    raise AssertionError("sampler returned only zeros")


def test_graded_symmetry_of_components():
    r = random.Random(21)
    f, g = LinfF(CTX), LinfG(CTX)
    for _ in range(10):
        dx, dy = r.randint(-1, 1), r.randint(-1, 1)
        x, y = sample(r, dx), sample(r, dy)
        s = -1 if dx * dy % 2 else 1
        assert f(2, [x, y], [dx, dy]) == f(2, [y, x], [dy, dx]).scale(-s)
        assert g(2, [x, y], [dx, dy]) == g(2, [y, x], [dy, dx]).scale(-s)


def test_g1_equals_f1_for_trace_flavor():
    r = random.Random(5)
    f, g = LinfF(CTX), LinfG(CTX)
    for _ in range(10):
        x = sample(r, r.randint(-1, 1))
        assert f(1, [x]) == g(1, [x])


def test_higher_components_vanish():
    r = random.Random(6)
    x = sample(r, 0)
    assert LinfF(CTX)(4, [x] * 4).is_zero()
    assert LinfG(CTX)(5, [x] * 5).is_zero()


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_conditions_hold_and_are_nonvacuous(n):
    r = random.Random(40 + n)
    f = LinfF(CTX)
    nonzero = 0
    for _ in range(12):
        degs = [r.randint(-1, 1) for _ in range(n)]
        args = [sample(r, d) for d in degs]
        assert cn_residual(n, f, CTX, args, degs).is_zero()
        if n <= 3:
            nonzero += not f(n, args, degs).is_zero()
    if n <= 3:
        assert nonzero >= 3


def test_wrong_koszul_rule_breaks_c2():
    r = random.Random(8)
    f = LinfF(CTX)
    broken = 0
    for _ in range(30):
        degs = [r.randint(-1, 1) for _ in range(2)]
        args = [sample(r, d) for d in degs]
        broken += not cn_residual(2, f, CTX, args, degs, symmetric_chi=True).is_zero()
    assert broken > 0


def test_killing_form_oracle():
    E = direct_sum(line_bundle(P1, 0), line_bundle(P1, 2))
    F = CyclicForm(E, "killing")
    K = end_complex(E)
    r = random.Random(1)
    for _ in range(20):
        x, y = random_hom_value(r, K, (0,), 0), random_hom_value(r, K, (0,), 0)
        assert F.pair(x, y) == killing_oracle(x, y)
        assert adjoint_matrix(x * y - y * x) == adjoint_matrix(x) * adjoint_matrix(y) - adjoint_matrix(y) * adjoint_matrix(x)


def test_killing_flavor_rejects_graded_bundle():
    with pytest.raises(ValueError):
        CyclicForm(E2, "killing")
    with pytest.raises(ValueError):
        CyclicForm(E2, "nonsense")


def test_f1_of_boundary_is_boundary_up_to_sign():
    # C1: d f1(x) = f1(dx), so f1 maps boundaries to boundaries
    r = random.Random(13)
    f = LinfF(CTX)
    for _ in range(8):
        x = sample(r, 0)
        assert tot_differential(f(1, [x], [0])) == f(1, [tot_differential(x)], [1])
