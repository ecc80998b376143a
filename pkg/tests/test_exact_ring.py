from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from semireg.exact_ring import (LaurentPoly, PolyMatrix, RingError, nullspace, rank, ring_map,
                                rref, solve)

X, Y = sympy.symbols("x y")

coef = st.fractions(min_value=-5, max_value=5, max_denominator=3)
expo = st.tuples(st.integers(-2, 3), st.integers(0, 3))
polys = st.dictionaries(expo, coef, max_size=4)


def lp(terms):
    return LaurentPoly(2, terms, inv=(True, False))


def to_sympy(p):
    return sum((sympy.Rational(c.numerator, c.denominator) * X ** e[0] * Y ** e[1]
                for e, c in p.terms.items()), sympy.Integer(0))


@given(polys, polys)
@settings(max_examples=60, deadline=None)
def test_product_matches_sympy(a, b):
    p, q = lp(a), lp(b)
    assert sympy.expand(to_sympy(p * q) - to_sympy(p) * to_sympy(q)) == 0
    assert sympy.expand(to_sympy(p + q) - to_sympy(p) - to_sympy(q)) == 0


@given(polys)
@settings(max_examples=40, deadline=None)
def test_derivative_matches_sympy(a):
    p = lp(a)
    assert sympy.expand(to_sympy(p.derivative(0)) - sympy.diff(to_sympy(p), X)) == 0
    assert sympy.expand(to_sympy(p.derivative(1)) - sympy.diff(to_sympy(p), Y)) == 0


def test_negative_exponent_needs_inverted_variable():
    with pytest.raises(RingError):
        LaurentPoly(2, {(0, -1): 1}, inv=(True, False))


def test_unit_monomial_inverse():
    p = LaurentPoly(2, {(2, 0): 3}, inv=(True, True))
    assert p * p.inverse() == p.one()


def test_ring_map_substitution():
    # x -> 1/x on the overlap, y -> y/x
    src = LaurentPoly(2, {(1, 0): 1, (0, 1): 2}, inv=(True, False))
    tgt = LaurentPoly.const(0, 2, inv=(True, False))
    images = [LaurentPoly.var(0, 2, inv=(True, False), power=-1),
              LaurentPoly(2, {(-1, 1): 1}, inv=(True, False))]
    out = ring_map(src, images, tgt)
    assert out == LaurentPoly(2, {(-1, 0): 1, (-1, 1): 2}, inv=(True, False))


mats = st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=4)


@given(mats)
@settings(max_examples=60, deadline=None)
def test_rank_and_nullspace_match_sympy(rows):
    fr = [[Fraction(v) for v in r] for r in rows]
    M = sympy.Matrix(rows)
    assert rank(fr, 4) == M.rank()
    ns = nullspace(fr, 4)
    assert len(ns) == 4 - M.rank()
    for v in ns:
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in fr)


@given(mats, st.lists(st.integers(-3, 3), min_size=4, max_size=4))
@settings(max_examples=60, deadline=None)
def test_solve_consistency(rows, x0):
    fr = [[Fraction(v) for v in r] for r in rows]
    rhs = [sum(a * b for a, b in zip(r, x0)) for r in fr]
    x = solve(fr, rhs, 4)
    assert x is not None
    assert [sum(a * b for a, b in zip(r, x)) for r in fr] == rhs


def test_solve_detects_inconsistency():
    rows = [[Fraction(1), Fraction(1)], [Fraction(2), Fraction(2)]]
    assert solve(rows, [Fraction(1), Fraction(3)], 2) is None


def test_rref_pivots():
    red, piv = rref([[Fraction(0), Fraction(2), Fraction(4)], [Fraction(1), Fraction(1), Fraction(1)]], 3)
    assert piv == [0, 1]
    assert red[1] == [0, 1, 2]


def test_polymatrix_trace_and_kron():
    one = LaurentPoly.const(1, 1)
    x = LaurentPoly.var(0, 1)
    A = PolyMatrix([[x, one], [one.zero(), x]])
    assert A.trace() == x + x
    K = A.kronecker(PolyMatrix.identity(2, one))
    assert K.trace() == (x + x) * 2
