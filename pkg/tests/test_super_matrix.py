import random

import pytest

from semireg.sampling import random_hom_value
from semireg.simplex_forms import MixedForm
from semireg.super_matrix import FormMatrix, kron
from semireg.variety import build_projective_space, direct_sum, end_complex, line_bundle, shift

A = build_projective_space(1)
E = direct_sum(line_bundle(A, 0), shift(line_bundle(A, 1), 1))
END = end_complex(E)


def homogeneous(r, deg, omega=(0, 1)):
    for _ in range(30):
        X = random_hom_value(r, END, (0,), deg, omega=omega)
        if not X.is_zero():
            return X
    pytest.skip("no nonzero sample")


@pytest.mark.parametrize("seed", range(25))
def test_supertrace_graded_cyclic(seed):
    r = random.Random(seed)
    a, b = r.randint(-1, 2), r.randint(-1, 2)
    X, Y = homogeneous(r, a), homogeneous(r, b)
    s = -1 if a * b % 2 else 1
    assert (X * Y).supertrace() == (Y * X).supertrace().scale(s)


@pytest.mark.parametrize("seed", range(15))
def test_graded_jacobi(seed):
    r = random.Random(100 + seed)
    degs = [r.randint(-1, 1) for _ in range(3)]
    X, Y, Z = (homogeneous(r, d, omega=(0, 0)) for d in degs)
    a, b, c = degs

    def br(P, Q, p, q):
        return P * Q - (Q * P).scale(-1 if p * q % 2 else 1)

    def sg(k):
        return -1 if k % 2 else 1

    total = (br(X, br(Y, Z, b, c), a, b + c).scale(sg(a * c))
             + br(Y, br(Z, X, c, a), b, c + a).scale(sg(b * a))
             + br(Z, br(X, Y, a, b), c, a + b).scale(sg(c * b)))
    assert total.is_zero()


def test_product_associative():
    r = random.Random(7)
    X, Y, Z = (homogeneous(r, r.randint(-1, 1)) for _ in range(3))
    assert (X * Y) * Z == X * (Y * Z)


def test_total_parity_counts_hom_degree():
    # an odd Hom-degree entry without forms is odd in total
    m = MixedForm.const(1, 0, 1)
    X = FormMatrix(E.degrees, E.degrees, 0, 1, {(0, 1): m})
    P = X.total_parity()
    assert P.get(0, 1) == -m
    I = FormMatrix.identity(E.degrees, 0, 1)
    assert I.total_parity() == I
    dy = MixedForm.dy(0, 0, 1)
    Y = FormMatrix(E.degrees, E.degrees, 0, 1, {(0, 0): dy})
    assert Y.total_parity().get(0, 0) == -dy


def test_kron_multiplicative_degree_zero():
    B = direct_sum(line_bundle(A, 0), line_bundle(A, 2))
    K = end_complex(B)
    r = random.Random(3)
    X1, X2, Y1, Y2 = (random_hom_value(r, K, (0,), 0) for _ in range(4))
    assert kron(X1, Y1) * kron(X2, Y2) == kron(X1 * X2, Y1 * Y2)
