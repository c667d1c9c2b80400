import random

from hypothesis import given, settings, strategies as st

from golodkit.complexes import SimplicialComplex, cycle, mask
from golodkit.koszul import KoszulModel, all_triple_massey, cross_validate, triple_massey
from golodkit.linalg import Field
from tests.oracles import hochster_poincare
from tests.strategies import complexes

# K_{3,3} minus an edge: every product vanishes but a triple Massey product does not
MASSEY_GRAPH = SimplicialComplex.from_facets(
    6, [(1, 4), (1, 5), (1, 6), (2, 4), (2, 5), (2, 6), (3, 4), (3, 5)])


def test_point_model():
    M = KoszulModel(SimplicialComplex.from_facets(1, [(1,)]), 0)
    assert sorted(M.basis) == [(0, 0), (0, 1), (1, 0)]
    assert M.d_basis((1, 0)) == {(0, 1): 1}
    assert M.poincare() == {0: 1}


def test_two_points():
    M = KoszulModel(SimplicialComplex.from_facets(2, [(1,), (2,)]), 0)
    assert M.poincare_list() == [1, 0, 0, 1]


def test_four_cycle_and_simplex():
    for p in (0, 2, 3):
        assert KoszulModel(cycle(4), p).poincare_list() == [1, 0, 0, 2, 0, 0, 1]
        assert KoszulModel(SimplicialComplex.simplex([1, 2, 3]), p).poincare_list() == [1]


def test_four_cycle_massey_undefined():
    M = KoszulModel(cycle(4), 2)
    a = M.classes(mask([1, 3]), 3)[0]
    b = M.classes(mask([2, 4]), 3)[0]
    assert not M.is_zero_class(M.product(a, b))
    assert triple_massey(M, a, b, a).verdict == "undefined"


def test_simplex_massey_vanishes():
    M = KoszulModel(SimplicialComplex.simplex([1, 2, 3]), 0)
    assert all_triple_massey(M) == (0, 0, None)


def test_nontrivial_massey_positive_control():
    for p in (0, 2, 3):
        M = KoszulModel(MASSEY_GRAPH, p)
        assert not M.all_products_vanish()[0]
        for seed in (None, 1, 7):
            rng = None if seed is None else random.Random(seed)
            defined, vanishing, witness = all_triple_massey(M, rng)
            assert (defined, vanishing) == (2, 0)
        assert witness["a"]["multidegree"] == [1, 2]
        assert witness["b"]["multidegree"] == [3, 6]


def test_massey_witness_reverifies():
    M = KoszulModel(MASSEY_GRAPH, 0)
    a = M.classes(mask([1, 2]), 3)[0]
    b = M.classes(mask([3, 6]), 3)[0]
    c = M.classes(mask([4, 5]), 3)[0]
    r = triple_massey(M, a, b, c, random.Random(3))
    assert r.defined and r.verdict == "nontrivial"
    assert r.representative.deg == 8


@settings(max_examples=25)
@given(complexes(max_n=4), st.sampled_from([0, 2, 3]))
def test_differential_and_leibniz(K, p):
    M = KoszulModel(K, p)
    assert M.check_d_squared()
    assert M.check_leibniz()


@given(complexes(max_n=5), st.sampled_from([0, 2]))
def test_dims_match_hochster_oracle(K, p):
    assert KoszulModel(K, p).poincare() == hochster_poincare(K.n, K.facets, p)


def test_cross_validate_examples():
    for K in (cycle(4), SimplicialComplex.simplex([1, 2, 3]), MASSEY_GRAPH):
        for p in (0, 2):
            assert cross_validate(K, p).agree


@given(complexes(max_n=5))
def test_cross_validate_random(K):
    assert cross_validate(K, Field(3)).agree
