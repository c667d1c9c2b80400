from hypothesis import given, strategies as st

from golodkit.snf import determinant, invariant_factors, is_smith_form, matmul, smith_normal_form
from tests.oracles import dense_rank


def test_trivial_examples():
    assert smith_normal_form([[2]])[1] == [[2]]
    assert smith_normal_form([[1, 0], [0, 0]])[1] == [[1, 0], [0, 0]]


def test_four_cycle_boundary():
    # rows: edges 12, 14, 23, 34; columns: vertices 1..4
    d1 = [[-1, 1, 0, 0], [-1, 0, 0, 1], [0, -1, 1, 0], [0, 0, -1, 1]]
    U, D, V = smith_normal_form(d1)
    assert [D[i][i] for i in range(4)] == [1, 1, 1, 0]
    assert dense_rank(d1) == 3


def test_torsion_factor():
    assert invariant_factors([{0: 2, 1: 0}, {1: 3}]) == [1, 6]


matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c),
                           min_size=r, max_size=r)))


@given(matrices)
def test_snf_decomposition(M):
    U, D, V = smith_normal_form(M)
    assert matmul(matmul(U, D), V) == M
    assert abs(determinant(U)) == 1 and abs(determinant(V)) == 1
    assert is_smith_form(D)
    assert sum(1 for i in range(min(len(D), len(D[0]))) if D[i][i]) == dense_rank(M)


@given(matrices)
def test_sparse_factors_match_dense(M):
    _, D, _ = smith_normal_form(M)
    dense = [D[i][i] for i in range(min(len(D), len(D[0]))) if D[i][i]]
    rows = [{j: x for j, x in enumerate(r) if x} for r in M]
    assert invariant_factors(rows) == dense
