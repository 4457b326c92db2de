import itertools
import random

import pytest

from oracles import gale_shifted, missing_faces_brute, random_complex
from polytower.simplicial import (
    Certificate,
    ComplexError,
    all_complexes,
    boundary_of_simplex,
    complex_json,
    faces_within,
    format_complex,
    from_facets,
    full_simplex,
    full_subcomplex,
    fwf_trivial_certificate,
    is_full_simplex,
    is_shifted,
    minimal_missing_faces,
    parse_complex,
    skeleton,
)

TWO_POINTS = from_facets(2, [(1,), (2,)])
CYCLE4 = from_facets(4, [(1, 2), (2, 3), (3, 4), (1, 4)])


def test_closure_and_facets():
    K = from_facets(3, [(1, 2, 3)])
    assert len(K.faces) == 8
    assert K.facets() == [(1, 2, 3)]
    assert CYCLE4.facets() == [(1, 2), (1, 4), (2, 3), (3, 4)]
    assert CYCLE4.dimension == 1


def test_singletons_forced():
    assert len(from_facets(2, []).faces) == 3
    assert (3,) in from_facets(3, [(1, 2)])
    with pytest.raises(ComplexError):
        from_facets(2, [(1, 3)])
    with pytest.raises(ComplexError):
        from_facets(0, [])


def test_skeleton_bounds():
    assert skeleton(4, 0) == from_facets(4, [(i,) for i in range(1, 5)])
    assert len(skeleton(4, 1).faces) == 1 + 4 + 6
    with pytest.raises(ComplexError):
        skeleton(3, -1)
    with pytest.raises(ComplexError):
        skeleton(3, 3)


def test_full_subcomplex_relabels():
    K = from_facets(4, [(1, 3), (2, 4)])
    assert faces_within(K, (1, 3)) == frozenset({(), (1,), (3,), (1, 3)})
    assert full_subcomplex(K, (1, 3)) == full_simplex(2)
    assert full_subcomplex(K, (1, 2)) == TWO_POINTS
    with pytest.raises(ComplexError):
        full_subcomplex(K, ())


def test_minimal_missing_faces():
    assert minimal_missing_faces(TWO_POINTS) == [(1, 2)]
    assert minimal_missing_faces(boundary_of_simplex(3)) == [(1, 2, 3)]
    assert minimal_missing_faces(CYCLE4) == [(1, 3), (2, 4)]
    assert minimal_missing_faces(full_simplex(3)) == []


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_missing_faces_against_brute(m):
    for K in all_complexes(m):
        assert minimal_missing_faces(K) == missing_faces_brute(K)


def test_complex_counts():
    # downward-closed families containing every vertex
    assert [len(all_complexes(m)) for m in (1, 2, 3, 4)] == [1, 2, 9, 114]


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_shifted_exhaustive(m):
    for K in all_complexes(m):
        assert is_shifted(K) == gale_shifted(K)


@pytest.mark.parametrize("m", [5, 6])
def test_shifted_random(m):
    rng = random.Random(100 + m)
    for _ in range(150):
        K = random_complex(rng, m)
        assert is_shifted(K) == gale_shifted(K)
    for k in range(m):
        assert is_shifted(skeleton(m, k))


def test_shifted_examples():
    assert is_shifted(boundary_of_simplex(3))
    assert not is_shifted(CYCLE4)
    assert is_shifted(from_facets(3, [(2, 3), (1,)]))
    assert not is_shifted(from_facets(3, [(1, 2), (3,)]))


def test_certificates():
    assert fwf_trivial_certificate(skeleton(3, 1)) is Certificate.SKELETON
    assert fwf_trivial_certificate(boundary_of_simplex(3)) is Certificate.SHIFTED
    assert fwf_trivial_certificate(CYCLE4) is Certificate.UNKNOWN
    assert fwf_trivial_certificate(CYCLE4, assume_flag=True) is Certificate.USER
    # the same complex built from facets is recognized by shiftedness
    assert skeleton(3, 1) == boundary_of_simplex(3)


def test_parse_round_trip():
    text = "# square\nm=4\n1 2\n2 3\n\n3 4\n1 4\n"
    K = parse_complex(text)
    assert K == CYCLE4
    assert parse_complex(format_complex(K)) == K
    assert complex_json(K) == '{"facets":[[1,2],[1,4],[2,3],[3,4]],"m":4}'
    assert parse_complex("m=2\n") == TWO_POINTS


@pytest.mark.parametrize("bad", ["", "1 2\n", "m=x\n", "m=2\n1 a\n", "m=2\n1 3\n"])
def test_parse_errors(bad):
    with pytest.raises(ComplexError):
        parse_complex(bad)


def test_is_full_simplex():
    assert is_full_simplex(full_simplex(1))
    assert is_full_simplex(from_facets(3, [(1, 2, 3), (1, 2)]))
    assert sum(is_full_simplex(K) for K in all_complexes(3)) == 1


def test_subsets_of_faces_are_faces():
    for K in all_complexes(4):
        for f in K.faces:
            for r in range(len(f)):
                for g in itertools.combinations(f, r):
                    assert g in K
