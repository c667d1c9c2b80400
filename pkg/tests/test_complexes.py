from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from golodkit.complexes import (ComplexError, SimplicialComplex, cycle, deletion, iota_inclusion,
                                is_m_neighbourly, is_neighbourly, join, mask, members, susp_triangle_with_edge,
                                relabel, restriction, submasks)
from tests.strategies import complexes


def test_four_cycle_from_facets():
    K = SimplicialComplex.from_facets(4, [(1, 2), (2, 3), (3, 4), (1, 4)])
    assert K.f_vector() == [1, 4, 4]
    assert sorted(K.facets) == [(1, 2), (1, 4), (2, 3), (3, 4)]


def test_simplex_has_all_faces():
    K = SimplicialComplex.from_facets(3, [(1, 2, 3)])
    assert len(K) == 8
    assert K.is_simplex()


def test_susp_triangle_with_edge_shape():
    K = susp_triangle_with_edge()
    assert K.n == 5 and K.dim == 2
    assert is_neighbourly(K)


def test_facet_outside_vertex_set():
    with pytest.raises(ComplexError):
        SimplicialComplex.from_facets(3, [(1, 4)])


def test_void_differs_from_empty_face_complex():
    void = SimplicialComplex.void()
    empty = SimplicialComplex.from_facets(0, [])
    assert void.is_void and not empty.is_void
    assert void != empty


def test_json_round_trip():
    K = susp_triangle_with_edge()
    assert SimplicialComplex.from_json(K.to_json()) == K


def test_ghost_vertices_flagged():
    K = SimplicialComplex.from_facets(3, [(1, 2)])
    assert K.ghost_vertices == (3,)
    assert K.has_ghosts


def test_restriction_examples():
    C = cycle(4)
    assert restriction(C, [1, 3]).facets == [(1,), (3,)]
    assert restriction(C, [1, 2]).facets == [(1, 2)]
    assert restriction(C, C.vertex_mask) == C
    assert restriction(C, 0).faces == frozenset({0})


def test_deletion_examples():
    K = susp_triangle_with_edge()
    D = deletion(K, 4)
    assert sorted(D.facets) == [(1, 2, 5), (1, 3, 5), (2, 3, 5)]
    assert deletion(SimplicialComplex.simplex([1, 2, 3]), 1).facets == [(2, 3)]
    assert sorted(deletion(cycle(4), 1).facets) == [(2, 3), (3, 4)]
    with pytest.raises(ComplexError):
        deletion(K, 9)


def test_join_examples():
    pt1 = SimplicialComplex.from_facets([1], [(1,)])
    pt2 = SimplicialComplex.from_facets([2], [(2,)])
    assert join(pt1, pt2).facets == [(1, 2)]
    a = SimplicialComplex.from_facets([1, 2], [(1,), (2,)])
    b = SimplicialComplex.from_facets([3, 4], [(3,), (4,)])
    assert sorted(join(a, b).facets) == [(1, 3), (1, 4), (2, 3), (2, 4)]
    empty = SimplicialComplex.from_facets(0, [])
    assert join(empty, a) == a
    with pytest.raises(ComplexError):
        join(a, a)


def test_iota_examples():
    C = cycle(4)
    f = iota_inclusion(C, [1, 3], [2, 4])
    assert f.is_valid() and f.is_injective_on_faces()
    assert f.target.f_vector() == [1, 4, 4]
    with pytest.raises(ComplexError):
        iota_inclusion(C, [1, 2], [2, 3])


def test_neighbourly_examples():
    assert not is_m_neighbourly(cycle(4), 2)
    S = SimplicialComplex.simplex(range(1, 6))
    assert all(is_m_neighbourly(S, m) for m in range(6))


@given(complexes(max_n=6), st.integers(0, 63), st.integers(0, 63))
def test_restriction_composes(K, a, b):
    I, J = a & K.vertex_mask, b & K.vertex_mask
    assert restriction(restriction(K, I), J & I) == restriction(K, I & J)


@given(complexes(max_n=5))
def test_deletion_is_restriction(K):
    for i in K.vertices:
        assert deletion(K, i) == restriction(K, K.vertex_mask & ~(1 << (i - 1)))


@given(complexes(max_n=3), complexes(max_n=3), complexes(max_n=2))
def test_join_associative_and_restricts(K, L, M):
    L = relabel(L, {v: v + 3 for v in L.vertices})
    M = relabel(M, {v: v + 6 for v in M.vertices})
    assert join(join(K, L), M) == join(K, join(L, M))
    assert join(K, L) == join(L, K)
    assert restriction(join(K, L), K.vertex_mask) == K


@given(complexes(min_n=3, max_n=6))
def test_iota_diagram_commutes(K):
    verts = list(K.vertices)
    I, J1, J2 = {verts[0]}, {verts[1]}, set(verts[2:])
    via_left = iota_inclusion(K, I | J1, J2)
    via_right = iota_inclusion(K, I, J1 | J2)
    inner_left = iota_inclusion(restriction(K, I | J1), I, J1)
    inner_right = iota_inclusion(restriction(K, J1 | J2), J1, J2)
    for f in via_left.source.faces:
        a = inner_left.image(f & mask(I | J1)) | (f & mask(J2))
        b = (f & mask(I)) | inner_right.image(f & mask(J1 | J2))
        assert a == b == f
        assert via_left.image(f) == via_right.image(f) == f
    assert via_left.is_injective_on_faces()


@given(complexes(max_n=6))
def test_facets_are_maximal_faces(K):
    closure = set()
    for f in K.facets_masks:
        closure.update(submasks(f))
    assert closure == set(K.faces)
    for f, g in combinations(K.facets_masks, 2):
        assert f & ~g and g & ~f


def test_members_mask_round_trip():
    assert members(mask([1, 3, 4])) == (1, 3, 4)
