import random

import pytest

from semireg.algebroid_conn import (Algebroid, LiftingError, anchor_preimage, atiyah_algebroid_frame,
                                    build_simplicial_lifting, connection_apply, extension_cocycle,
                                    kernel_part, random_local_lifts)
from semireg.cech_tot import tot_bracket, tot_check, tot_differential
from semireg.sampling import random_alg_value, random_poly_form, random_sample
from semireg.cech_tot import alg_bracket
from semireg.variety import build_projective_space, direct_sum, line_bundle, standard_two_term

P1 = build_projective_space(1)
P2 = build_projective_space(2)


@pytest.mark.parametrize("E", [standard_two_term(P1), line_bundle(P1, 3),
                               direct_sum(line_bundle(P2, 0), line_bundle(P2, -3))],
                         ids=["two_term", "O3", "P2sum"])
def test_random_lifting_is_valid(E):
    alg = Algebroid(E)
    lift = build_simplicial_lifting(alg, random_local_lifts(random.Random(5), alg))
    assert lift.check()
    u = extension_cocycle(lift)
    assert tot_check(u)
    assert tot_differential(u).is_zero()


def test_extension_cocycle_nonzero_for_nontrivial_bundle():
    lift = build_simplicial_lifting(Algebroid(line_bundle(P1, 2)))
    assert not extension_cocycle(lift).is_zero()
    lift0 = build_simplicial_lifting(Algebroid(line_bundle(P1, 0)))
    assert extension_cocycle(lift0).is_zero()


def test_frame_algebroid_needs_degree_zero_bundle():
    with pytest.raises(LiftingError):
        atiyah_algebroid_frame(standard_two_term(P1))
    assert atiyah_algebroid_frame(direct_sum(line_bundle(P1, 0), line_bundle(P1, 2))).frame_bundle


def test_bracket_is_leibniz_in_the_anchor():
    E = line_bundle(P1, 1)
    alg = Algebroid(E)
    r = random.Random(2)
    for _ in range(20):
        a = random_alg_value(r, alg.sheaf, (0,), 0, omega=(0, 0))
        b = random_alg_value(r, alg.sheaf, (0,), 0, omega=(0, 0))
        f = random_poly_form(r, P1, (0,), [0])
        da = alg.element(0, a.vec, a.mat)
        # [a, f b] = f [a, b] + rho(a)(f) b
        lhs = alg_bracket(a, b.left_mul(f))
        rhs = alg_bracket(a, b).left_mul(f) + b.left_mul(da.derivative_of(f))
        assert lhs == rhs


def test_connection_exchange_with_differential():
    E = standard_two_term(P1)
    alg = Algebroid(E)
    lift = build_simplicial_lifting(alg, random_local_lifts(random.Random(9), alg))
    u = extension_cocycle(lift)
    r = random.Random(3)
    for _ in range(10):
        x = random_sample(r, alg.kernel, r.randint(-1, 1), 1).element
        lhs = connection_apply(lift, tot_differential(x))
        assert lhs == tot_bracket(u, x) - tot_differential(connection_apply(lift, x))


def test_anchor_preimage_and_kernel():
    E = direct_sum(line_bundle(P1, 0), line_bundle(P1, 2))
    alg = Algebroid(E)
    r = random.Random(4)
    for _ in range(10):
        b = random_sample(r, alg.sheaf, 1, 1, omega=(1, 1)).element
        pre = anchor_preimage(alg, {J: v.vec for J, v in b.comps.items()})
        assert tot_check(pre)
        for J in b.comps:
            assert list(pre.value(J).vec) == list(b.value(J).vec)
        assert tot_check(kernel_part(b - pre, alg.kernel))


def test_kernel_part_rejects_anchored_elements():
    alg = Algebroid(line_bundle(P1, 1))
    lift = build_simplicial_lifting(alg)
    with pytest.raises(LiftingError):
        kernel_part(lift.D, alg.kernel)
