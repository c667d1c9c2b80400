from fractions import Fraction as Fr

import pytest
from hypothesis import given, strategies as st

from golodkit.catalog import catalog
from golodkit.complexes import ComplexError, cycle, susp_triangle_with_edge
from golodkit.permutohedron import OrderedPartition, ordered_partition_from_sequence
from golodkit.plmaps import (PLError, Sampler, SmashPoint, add_disjoint_vertex, check_disjoint_vertex,
                             disjoint_vertex_y, faithful_homotopy_eval, faithful_homotopy_symmetric,
                             h_eval, h_inv_eval, neighbourly_alphas, phi_eval, phi_membership,
                             phi_membership_via_h, psi_disjoint_vertex_eval, psi_neighbourly_eval,
                             smash_membership, snap, verify_maps)


def test_h_examples():
    assert h_eval(2, 0, (1, 0)).coords == (0, 1)
    assert h_eval(3, -1, (1, 0, 0)).is_basepoint
    assert h_eval(3, 1, (Fr(1, 3),) * 3).coords == (1, 1, 1)
    assert h_inv_eval(2, SmashPoint.make((0, 1))) == (0, (1, 0))
    assert h_inv_eval(3, SmashPoint.make((1, 1, 1))) == (1, None)
    assert h_inv_eval(3, SmashPoint.basepoint(3)) == (-1, None)


def test_h_chart_independence_on_ties():
    z = (Fr(2, 5), Fr(2, 5), Fr(1, 5))
    assert h_eval(3, Fr(1, 3), z, chart=1) == h_eval(3, Fr(1, 3), z, chart=2)
    with pytest.raises(PLError):
        h_eval(3, Fr(1, 3), z, chart=3)


def test_h_rejects_bad_input():
    with pytest.raises(PLError):
        h_eval(2, 0, (Fr(1, 2), Fr(1, 3)))
    with pytest.raises(PLError):
        h_eval(2, 2, (1, 0))


@given(st.integers(2, 6).flatmap(lambda n: st.tuples(
    st.just(n), st.fractions(-1, 1, max_denominator=50),
    st.lists(st.integers(0, 9), min_size=n, max_size=n).filter(any))))
def test_h_round_trip(args):
    n, t, w = args
    z = tuple(Fr(v, sum(w)) for v in w)
    x = h_eval(n, t, z)
    back = h_inv_eval(n, x)
    if t == -1:
        assert x.is_basepoint
    elif t == 1:
        assert back == (1, None)
    else:
        assert back == (t, z)
        assert all(x.coords[i] == 1 for i in range(n) if z[i] == 0)


def test_smash_membership_examples():
    C = cycle(4)
    assert smash_membership(SmashPoint.make((0, 0, 1, 1)), None, C)
    x = SmashPoint.make((0, 1, 0, 1))
    assert not smash_membership(x, None, C)
    P = OrderedPartition.of([1, 3], [2, 4])
    assert not smash_membership(x, P, C)
    assert smash_membership(SmashPoint.make((0, 1, 1, 1)), P, C)
    assert smash_membership(SmashPoint.basepoint(4), P, C)


def test_basepoint_normalisation():
    assert SmashPoint.make((0, -1, Fr(1, 2))).is_basepoint
    with pytest.raises(PLError):
        SmashPoint.make((2, 0))


def test_phi_examples():
    C = cycle(4)
    assert phi_eval(C, (0, 0, 0), Fr(1, 2), (1, 0, 0, 0)).is_basepoint
    v = phi_eval(C, (Fr(1, 2), 0, 0), 0, (0, 0, Fr(1, 2), Fr(1, 2)))
    assert v.partition().as_sets() == ((2, 3, 4), (1,))
    assert v.s == 0
    assert phi_membership(C, v) and phi_membership_via_h(C, v)
    with pytest.raises(PLError):
        phi_eval(C, (Fr(1, 2), 0, 0), 0, (Fr(1, 2), 0, Fr(1, 2), 0))


def test_psi_alpha_example():
    K = susp_triangle_with_edge()
    ts = (Fr(1, 2), 0, 0, 0)
    assert neighbourly_alphas(ts, 5) == [1, 0, 0, 0, 0]
    x = SmashPoint.make((Fr(1, 4), Fr(-1, 2), 1, 1, 1))
    y = psi_neighbourly_eval(K, ts, x)
    assert y.coords[0] == (Fr(1, 4) + 1) / 2 - 1
    assert y.coords[1] == Fr(-1, 2)


def test_psi_identity_and_guards():
    K = susp_triangle_with_edge()
    x = SmashPoint.make((Fr(1, 4), Fr(-1, 2), 1, 1, 1))
    assert psi_neighbourly_eval(K, (0, 0, 0, 0), x) == x
    assert psi_neighbourly_eval(K, (1, 0, 0, 0), x).is_basepoint
    with pytest.raises(ComplexError):
        psi_neighbourly_eval(cycle(4), (0, 0, 0), SmashPoint.make((0, 1, 1, 1)))
    with pytest.raises(PLError):
        psi_neighbourly_eval(K, (0, 0, 0, 0), SmashPoint.make((0, 0, 0, 1, 1)))


def test_disjoint_vertex_y_cases():
    ts = (Fr(-1, 2), Fr(1, 3))
    assert disjoint_vertex_y(ts, 0) == 1
    assert disjoint_vertex_y(ts, Fr(1, 3)) == 1
    assert disjoint_vertex_y(ts, 1) == -1 and disjoint_vertex_y(ts, -1) == -1
    assert disjoint_vertex_y(ts, Fr(2, 3)) == 2 * (Fr(1, 3)) / Fr(2, 3) - 1
    assert disjoint_vertex_y(ts, Fr(-3, 4)) == 2 * Fr(1, 4) / Fr(1, 2) - 1


def test_disjoint_vertex_literal_reading_fails():
    # reading the target as [n+1]_{(t, s, 0)} instead of [n+1]_{(t, 0, s)} breaks condition (2)
    K = catalog(4, neighbourly_only=True)[-1]
    L = add_disjoint_vertex(K)
    S = Sampler(11)

    def inner(ts, x):
        return psi_neighbourly_eval(K, ts, x, check=False)

    bad = 0
    for _ in range(2000):
        x = S.w_hat_point(K)
        ts = S.params(K.n - 1)
        s = S.param(closed=True)
        y = psi_disjoint_vertex_eval(inner, K.n, ts, s, x)
        literal = ordered_partition_from_sequence(range(1, K.n + 2), list(ts) + [s, Fr(0)])
        bad += not smash_membership(y, literal, L)
    assert bad > 0
    assert check_disjoint_vertex(K, 2000, 11)["condition_2"].counterexamples == 0


def test_faithful_homotopy():
    for s in (0, Fr(1, 8), Fr(1, 3), Fr(3, 4), 1):
        assert faithful_homotopy_eval(0, s) == s
    assert faithful_homotopy_eval(1, Fr(1, 8)) == 0
    assert faithful_homotopy_eval(1, Fr(7, 8)) == 1
    assert faithful_homotopy_eval(1, Fr(1, 2)) == Fr(1, 2)
    assert faithful_homotopy_symmetric(1, Fr(-3, 4)) == -1
    assert faithful_homotopy_symmetric(1, Fr(3, 4)) == 1
    with pytest.raises(PLError):
        faithful_homotopy_eval(0, 2)


@given(st.fractions(0, 1, max_denominator=40), st.fractions(0, 1, max_denominator=40),
       st.fractions(0, 1, max_denominator=40))
def test_faithful_homotopy_monotone_and_fixes_ends(t, a, b):
    assert faithful_homotopy_eval(t, 0) == 0 and faithful_homotopy_eval(t, 1) == 1
    if a <= b:
        assert faithful_homotopy_eval(t, a) <= faithful_homotopy_eval(t, b)


def test_snap():
    a, b, c = snap([0.1, 0.1 + 1e-12, 1e-12])
    assert a == b and c == 0
    assert snap([-1 + 1e-11, 0.5])[0] == -1
    assert snap([0.25])[0] == Fr(1, 4)


def test_verify_maps_small():
    for K in (cycle(4), susp_triangle_with_edge()):
        r = verify_maps(K, samples=300, seed=5)
        assert r["ok"], r
    assert "psi_neighbourly_condition_2" in verify_maps(susp_triangle_with_edge(), 50, 1)["checks"]
    assert "psi_neighbourly_condition_2" not in verify_maps(cycle(4), 50, 1)["checks"]


def test_verify_maps_deterministic():
    assert verify_maps(susp_triangle_with_edge(), 100, 3) == verify_maps(susp_triangle_with_edge(), 100, 3)


def _psi_reference(ts, xs):
    """Direct transcription: α_i minimises Σ_{j∈S}|t_i − t_j| over ⌊n/2⌋-subsets S of the others."""
    from itertools import combinations
    n = len(xs)
    full = list(ts) + [Fr(0)]
    beta = max([abs(v) for v in ts] + [Fr(0)])
    out = []
    for i in range(n):
        others = [j for j in range(n) if j != i]
        alpha = min(sum((abs(full[i] - full[j]) for j in S), Fr(0))
                    for S in combinations(others, n // 2))
        c = 1 - 2 * alpha * beta if alpha < Fr(1, 2) else 1 - beta
        out.append(c * (xs[i] + 1) - 1)
    return tuple(out)


@given(st.data())
def test_psi_matches_reference_formula(data):
    K = data.draw(st.sampled_from(catalog(5, neighbourly_only=True)))
    n = K.n
    ts = tuple(data.draw(st.lists(st.fractions(-1, 1, max_denominator=12).filter(lambda v: abs(v) < 1),
                                  min_size=n - 1, max_size=n - 1)))
    x = Sampler(data.draw(st.integers(0, 10 ** 6))).w_hat_point(K)
    y = psi_neighbourly_eval(K, ts, x)
    assert y.coords == _psi_reference(ts, x.coords)


@given(st.lists(st.fractions(-1, 1, max_denominator=30), min_size=1, max_size=6),
       st.fractions(-1, 1, max_denominator=30))
def test_fast_partitions_match_generic(ts, s):
    from golodkit.plmaps import disjoint_vertex_partition, psi_target_partition
    n = len(ts) + 1
    assert psi_target_partition(ts) == ordered_partition_from_sequence(range(1, n + 1), list(ts) + [0])
    assert disjoint_vertex_partition(ts, s) == ordered_partition_from_sequence(
        range(1, n + 2), list(ts) + [0, s])


@given(st.data())
def test_phi_partition_matches_generic(data):
    K = data.draw(st.sampled_from(catalog(4)))
    S = Sampler(data.draw(st.integers(0, 10 ** 6)))
    v = phi_eval(K, S.params(K.n - 1, closed=True), S.param(closed=True), S.bary(K))
    if not v.is_basepoint:
        assert v.partition() == ordered_partition_from_sequence(range(1, K.n + 1), v.y)
        assert v.s == 2 * max(abs(a) for a in v.y) - 1
