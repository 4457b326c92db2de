import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from oracles import as_dict, random_complex, reduced_cubical_homology, reduced_simplicial_homology
from polytower.homology import (
    ChainComplex,
    GradedAbelianGroup,
    cubical_homology,
    invariant_factors,
    real_moment_angle_complex,
    simplicial_homology,
    smash_homology,
    smith_diagonal,
    suspend,
    wedge_splitting_homology,
)
from polytower.simplicial import all_complexes, boundary_of_simplex, from_facets, full_simplex

S = GradedAbelianGroup.sphere
Z = GradedAbelianGroup.zero()

# minimal 6-vertex triangulation of the real projective plane
RP2 = from_facets(6, [
    (1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
    (2, 3, 5), (2, 4, 5), (2, 4, 6), (3, 4, 6), (3, 5, 6),
])


def test_invariant_factors():
    assert invariant_factors([2, 3]) == (6,)
    assert invariant_factors([4, 6, 1]) == (2, 12)
    assert invariant_factors([]) == ()


def test_smith_small():
    assert smith_diagonal([{0: 2, 1: 4}, {0: 6, 1: 8}]) == [2, 4]
    assert smith_diagonal([{0: 2}, {1: 3}]) == [1, 6]
    assert smith_diagonal([{}, {}]) == []


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-6, 6), min_size=4, max_size=4), min_size=1, max_size=5))
def test_smith_matches_sympy(cols):
    vecs = [{i: x for i, x in enumerate(c) if x} for c in cols]
    M = Matrix([[c[i] for c in cols] for i in range(4)])
    D = smith_normal_form(M, domain=ZZ)
    want = sorted(abs(int(D[i, i])) for i in range(min(D.shape)) if D[i, i] != 0)
    assert sorted(smith_diagonal(vecs)) == want


def test_chain_complex_rejects_bad_boundary():
    with pytest.raises(ValueError):
        ChainComplex({0: ["v"], 1: ["e"], 2: ["f"]}, {1: [{0: 1}], 2: [{0: 1}]})


def test_graded_group_ops():
    G = S(2) + GradedAbelianGroup.from_dict({1: (0, (2,))})
    assert G.rank(2) == 1 and G.torsion(1) == (2,)
    assert suspend(G, 3).rank(5) == 1
    assert str(S(1) + S(1)) == "H1=Z^2"
    assert GradedAbelianGroup.from_json(G.to_json()) == G
    assert Z.is_zero() and S(0).total_rank() == 1
    with pytest.raises(ValueError):
        suspend(G, -1)


def test_smash_kunneth():
    assert smash_homology(S(2), S(3)) == S(5)
    assert smash_homology(S(1), Z) == Z
    moore = GradedAbelianGroup.from_dict({1: (0, (2,))})
    # M(Z/2,1) smash M(Z/2,1): Z/2 in degree 2 and Tor(Z/2,Z/2) in degree 3
    assert smash_homology(moore, moore) == GradedAbelianGroup.from_dict({2: (0, (2,)), 3: (0, (2,))})
    m6 = GradedAbelianGroup.from_dict({0: (0, (6,))})
    m4 = GradedAbelianGroup.from_dict({0: (0, (4,))})
    assert smash_homology(m6, m4) == GradedAbelianGroup.from_dict({0: (0, (2,)), 1: (0, (2,))})


def test_simplicial_named():
    assert simplicial_homology(from_facets(2, [])) == S(0)
    assert simplicial_homology(boundary_of_simplex(3)) == S(1)
    assert simplicial_homology(full_simplex(3)) == Z
    assert simplicial_homology(boundary_of_simplex(4)) == S(2)
    assert simplicial_homology(RP2) == GradedAbelianGroup.from_dict({1: (0, (2,))})


def test_rp2_against_sympy():
    assert as_dict(simplicial_homology(RP2)) == reduced_simplicial_homology(RP2) == {1: (0, [2])}


@pytest.mark.parametrize("m", [2, 3, 4])
def test_simplicial_against_sympy(m):
    for K in all_complexes(m):
        assert as_dict(simplicial_homology(K)) == reduced_simplicial_homology(K)


def test_rz_cell_counts():
    assert len(real_moment_angle_complex(from_facets(2, [])).cells) == 8
    assert len(real_moment_angle_complex(boundary_of_simplex(3)).cells) == 26
    assert len(real_moment_angle_complex(full_simplex(3)).cells) == 27


@pytest.mark.parametrize("m", [2, 3])
def test_cubical_against_sympy(m):
    for K in all_complexes(m):
        rz = real_moment_angle_complex(K)
        assert as_dict(cubical_homology(rz)) == reduced_cubical_homology(K)


def test_cubical_against_sympy_random():
    rng = random.Random(7)
    for _ in range(10):
        K = random_complex(rng, 4)
        assert as_dict(cubical_homology(real_moment_angle_complex(K))) == reduced_cubical_homology(K)


def test_splitting_with_torsion():
    # RP^2 contributes Z/2 to H_2 of its real moment-angle complex
    G = wedge_splitting_homology(RP2)
    assert G.torsion(2) == (2,)
    assert cubical_homology(real_moment_angle_complex(RP2)) == G


def test_thread_count_does_not_change_result(monkeypatch):
    rz = real_moment_angle_complex(RP2)
    monkeypatch.setenv("PP_THREADS", "1")
    one = cubical_homology(rz)
    monkeypatch.setenv("PP_THREADS", "4")
    assert cubical_homology(rz) == one
