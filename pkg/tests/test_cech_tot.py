import random
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from semireg.cech_tot import (WindowError, cech_equal, cech_total_differential, cohomology_dim,
                              tot_bracket, tot_check, tot_differential, whitney_integrate)
from semireg.sampling import random_sample
from semireg.variety import (build_projective_space, direct_sum, end_complex, line_bundle, omega1,
                             standard_two_term)

P1 = build_projective_space(1)
P2 = build_projective_space(2)


def binom_h(n, d, q):
    """Bott formula for line bundles on P^n."""
    if q == 0:
        return comb(n + d, n) if d >= 0 else 0
    if q == n:
        return comb(-d - 1, n) if d <= -n - 1 else 0
    return 0


@pytest.mark.parametrize("d", range(-4, 4))
def test_line_bundles_on_p1(d):
    for q in (0, 1):
        dim, _ = cohomology_dim(line_bundle(P1, d), q, window=(-5, 5))
        assert dim == binom_h(1, d, q)


@pytest.mark.parametrize("d", [-4, -3, -1, 0, 1, 2])
def test_line_bundles_on_p2(d):
    for q in (0, 1, 2):
        dim, _ = cohomology_dim(line_bundle(P2, d), q, window=(-4, 4))
        assert dim == binom_h(2, d, q)


def test_cotangent_classes():
    assert cohomology_dim(omega1(P1), 1)[0] == 1
    assert cohomology_dim(omega1(P1), 0)[0] == 0
    assert cohomology_dim(omega1(P2), 1)[0] == 1


def test_two_term_hypercohomology():
    F = standard_two_term()
    assert cohomology_dim(F, 0)[0] == 0
    assert cohomology_dim(F, 1)[0] == 2


def test_small_window_not_certified():
    with pytest.raises(WindowError):
        cohomology_dim(line_bundle(P1, 4), 0, window=(-1, 1))
    # sections of O(5) all lie two or more steps outside -1..1
    with pytest.raises(WindowError):
        cohomology_dim(line_bundle(P1, 5), 0, window=(-1, 1))
    with pytest.raises(WindowError):
        cohomology_dim(line_bundle(P2, -6), 2, window=(-2, 2))


def test_end_of_frame_bundle_on_p2():
    E = direct_sum(line_bundle(P2, 0), line_bundle(P2, -3))
    assert cohomology_dim(end_complex(E), 2)[0] == 1


def _samples(draw, sheaf, L):
    seed = draw(st.integers(0, 10 ** 6))
    r = random.Random(seed)
    deg = draw(st.integers(-1, 2))
    return random_sample(r, sheaf, deg, L, npieces=2)


KER1 = end_complex(standard_two_term(P1))
KER2 = end_complex(direct_sum(line_bundle(P2, 0), line_bundle(P2, -3)))
samples1 = st.composite(lambda draw: _samples(draw, KER1, 1))
samples2 = st.composite(lambda draw: _samples(draw, KER2, 2))


@given(samples1(), samples1())
@settings(max_examples=40, deadline=None)
def test_dg_lie_axioms_p1(xs, ys):
    x, y = xs.element, ys.element
    assert tot_check(x)
    dx, dy = tot_differential(x), tot_differential(y)
    assert tot_differential(dx).is_zero()
    xy = tot_bracket(x, y)
    assert tot_check(xy)
    sx = -1 if xs.degree % 2 else 1
    assert tot_differential(xy) == tot_bracket(dx, y) + tot_bracket(x, dy).scale(sx)
    s = -1 if xs.degree * ys.degree % 2 else 1
    assert (xy + tot_bracket(y, x).scale(s)).is_zero()


@given(samples2())
@settings(max_examples=10, deadline=None)
def test_tot_d_squared_p2(xs):
    x = xs.element
    assert tot_check(x)
    assert tot_differential(tot_differential(x)).is_zero()


@given(samples1(), st.booleans())
@settings(max_examples=40, deadline=None)
def test_whitney_integration_is_chain_map(xs, ordered):
    x = xs.element
    a = whitney_integrate(tot_differential(x), ordered=ordered)
    b = cech_total_differential(KER1, whitney_integrate(x, ordered=ordered), x.L, ordered=ordered)
    assert cech_equal(a, b, KER1)


def test_samples_are_nonvacuous():
    r = random.Random(1)
    nonzero = sum(not random_sample(r, KER1, 1, 1).element.is_zero() for _ in range(30))
    assert nonzero >= 25
