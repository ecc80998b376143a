import pytest

from semireg.exact_ring import LaurentPoly, PolyMatrix
from semireg.variety import (AtlasError, LocallyFreeComplex, atlas_from_spec, build_projective_space,
                             direct_sum, line_bundle, omega1, standard_two_term, tangent,
                             tensor_complex)


@pytest.mark.parametrize("n", [1, 2])
def test_projective_atlas(n):
    A = build_projective_space(n)
    assert (A.nchart, A.dim, A.label) == (n + 1, n, f"P{n}")
    assert A.is_graded()


def test_only_small_projective_spaces():
    with pytest.raises(AtlasError):
        build_projective_space(3)
    with pytest.raises(AtlasError):
        atlas_from_spec("P7")


def test_atlas_from_custom_spec_matches_p1():
    spec = {"charts": [["z"], ["w"]], "weights": [[[-1, 1]], [[1, -1]]],
            "transitions": {"0,1": {"inverts": [0], "images": [[[1, [-1]]]]},
                            "1,0": {"inverts": [0], "images": [[[1, [-1]]]]}}}
    A = atlas_from_spec(spec)
    assert A.nchart == 2 and A.dim == 1


def test_inconsistent_transitions_rejected():
    spec = {"charts": [["z"], ["w"]],
            "transitions": {"0,1": {"inverts": [0], "images": [[[2, [-1]]]]},
                            "1,0": {"inverts": [0], "images": [[[1, [-1]]]]}}}
    with pytest.raises(AtlasError):
        atlas_from_spec(spec)


@pytest.mark.parametrize("n", [1, 2])
def test_bundles_pass_cocycle_checks(n):
    A = build_projective_space(n)
    for F in (line_bundle(A, -3), line_bundle(A, 2), omega1(A), tangent(A),
              direct_sum(line_bundle(A, 0), line_bundle(A, 1))):
        assert F.check()


def test_two_term_complex_checks():
    F = standard_two_term()
    assert F.check()
    assert F.has_differential()
    assert sorted(F.degrees) == [0, 1]
    T = tensor_complex(F, F)
    assert T.check()
    assert T.rank == 4


def test_broken_cocycle_rejected():
    A = build_projective_space(2)
    L = line_bundle(A, 1)

    def bad(a, b, tup=None):
        G = L.transition(a, b, tup)
        if (a, b) == (0, 1):
            return PolyMatrix([[G[0, 0] * 2]])
        return G

    F = LocallyFreeComplex(A, L.degrees, bad, name="bad")
    with pytest.raises(AtlasError):
        F.check()
