from fractions import Fraction
from itertools import permutations
from math import factorial

import pytest
from hypothesis import given, strategies as st

from golodkit.catalog import stirling2
from golodkit.permutohedron import (KnPoint, Opaque, OrderedPartition, PartitionError, PermutohedralComplex,
                                    count_ordered_partitions, face_map, ordered_partition_from_sequence,
                                    ordered_partitions, tau, tau_inv, verify_sphere)

PI = Opaque(3, 4, "pi")


def test_partition_from_sequence_with_pi():
    P = ordered_partition_from_sequence([1, 2, 3, 4], (-1, PI, -1, 0))
    assert P.as_sets() == ((1, 3), (4,), (2,))


def test_partition_trivial_cases():
    assert ordered_partition_from_sequence([1, 2, 3], (5, 5, 5)).as_sets() == ((1, 2, 3),)
    assert ordered_partition_from_sequence([1, 2, 3], (0, 1, 2)).as_sets() == ((1,), (2,), (3,))
    with pytest.raises(PartitionError):
        ordered_partition_from_sequence([1, 2], (0,))


def test_opaque_refuses_unknown_order():
    with pytest.raises(PartitionError):
        ordered_partition_from_sequence([1, 2], (PI, Fraction(7, 2)))


def test_face_map_examples():
    P = OrderedPartition.of([1, 3], [4], [2])
    assert face_map(P, 1).as_sets() == ((1, 3, 4), (2,))
    assert face_map(OrderedPartition.of([1], [2]), 1).as_sets() == ((1, 2),)


@pytest.mark.parametrize("n", range(2, 6))
def test_simplicial_identities(n):
    for m in range(3, n + 1):
        for P in ordered_partitions((1 << n) - 1, m):
            for j in range(2, m):
                for i in range(1, j):
                    assert face_map(face_map(P, j), i) == face_map(face_map(P, i), j - 1)


@pytest.mark.parametrize("n", range(2, 7))
def test_face_counts(n):
    for m in range(1, n + 1):
        assert count_ordered_partitions(n, m) == factorial(m) * stirling2(n, m)


def test_small_kn():
    assert PermutohedralComplex(2).f_vector() == [2]
    assert PermutohedralComplex(3).f_vector() == [6, 6]
    assert PermutohedralComplex(4).f_vector() == [14, 36, 24]
    assert PermutohedralComplex(5).f_vector() == [30, 150, 240, 120]


@pytest.mark.parametrize("n", range(2, 6))
def test_verify_sphere(n):
    r = verify_sphere(n)
    assert r.passed, r.to_json()
    assert r.homology == {str(n - 2): "Z"}


def test_verify_sphere_guard():
    with pytest.raises(PartitionError):
        verify_sphere(8)


def test_face_partition_round_trip():
    Kn = PermutohedralComplex(4)
    for P in ordered_partitions(Kn.ground):
        if len(P) >= 2:
            f = Kn.face_of(P)
            assert f in Kn.simplicial.faces
            assert Kn.partition_of_face(f) == P


def test_tau_vertex_example():
    g = KnPoint(OrderedPartition.of([1], [2, 3]), (Fraction(1),))
    t = Fraction(1, 2)
    pt = tau(t, g, 3)
    assert pt == (-t, 0)
    assert ordered_partition_from_sequence([1, 2, 3], pt + (0,)).as_sets() == ((1,), (2, 3))
    assert tau_inv(t, pt, 3) == g


def test_tau_interior_of_top_face():
    for perm in permutations(range(1, 5)):
        P = OrderedPartition.of(*[[v] for v in perm])
        g = KnPoint(P, (Fraction(1, 3),) * 3)
        pt = tau(Fraction(1, 3), g, 4)
        assert len(set(pt + (0,))) == 4


@st.composite
def kn_points(draw):
    n = draw(st.integers(2, 6))
    perm = draw(st.permutations(range(1, n + 1)))
    cuts = sorted(draw(st.sets(st.integers(1, n - 1), min_size=1)))
    bounds = [0] + cuts + [n]
    P = OrderedPartition.of(*[perm[a:b] for a, b in zip(bounds, bounds[1:])])
    raw = draw(st.lists(st.integers(0, 5), min_size=len(P) - 1, max_size=len(P) - 1)
               .filter(lambda w: sum(w) > 0))
    weights = tuple(Fraction(w, sum(raw)) for w in raw)
    t = draw(st.fractions(Fraction(1, 100), Fraction(99, 100)))
    return n, t, KnPoint(P, weights)


@given(kn_points())
def test_tau_round_trip_and_partition_consistency(args):
    n, t, g = args
    pt = tau(t, g, n)
    assert max(abs(x) for x in pt) == t
    c = g.canonical()
    assert ordered_partition_from_sequence(range(1, n + 1), pt + (0,)) == c.face
    assert tau_inv(t, pt, n) == c


@given(st.lists(st.fractions(-3, 3, max_denominator=6), min_size=1, max_size=7))
def test_partition_invariant_under_increasing_maps(S):
    I = range(1, len(S) + 1)
    P = ordered_partition_from_sequence(I, S)
    assert ordered_partition_from_sequence(I, [2 * s ** 3 + s + 1 for s in S]) == P
    assert P.ground == (1 << len(S)) - 1
    for i in I:
        for j in I:
            assert (S[i - 1] < S[j - 1]) == (P.block_of(i) < P.block_of(j))
