from itertools import combinations, permutations

import pytest
from hypothesis import given, strategies as st

from golodkit.catalog import canonical_code, catalog, count_labeled, stirling2
from golodkit.complexes import is_neighbourly, relabel
from tests.strategies import complexes

# Dedekind numbers: downward-closed families of subsets of [n] (void included)
DEDEKIND = [2, 3, 6, 20, 168, 7581]
# the same up to permuting [n]
DEDEKIND_UP_TO_PERM = [2, 3, 5, 10, 30, 210]


@pytest.mark.parametrize("n", range(1, 6))
def test_labelled_counts(n):
    assert count_labeled(n) == DEDEKIND[n]


@pytest.mark.parametrize("n", range(1, 6))
def test_isomorphism_class_counts(n):
    assert len(catalog(n, min_n=n, ghosts=True)) == DEDEKIND_UP_TO_PERM[n] - 1


def _brute_force_classes(n):
    subsets = [frozenset(c) for k in range(n + 1) for c in combinations(range(n), k)]
    seen = set()
    for bits in range(1, 1 << len(subsets)):
        fam = {s for i, s in enumerate(subsets) if bits >> i & 1}
        if any(s - {v} not in fam for s in fam for v in s):
            continue
        seen.add(min(tuple(sorted(tuple(sorted(p[v] for v in s)) for s in fam))
                     for p in permutations(range(n))))
    return len(seen)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_counts_against_brute_force(n):
    assert len(catalog(n, min_n=n, ghosts=True)) == _brute_force_classes(n)


def test_frozen_totals():
    assert len(catalog(5, ghosts=True)) == 253
    assert len(catalog(5)) == 208
    assert len(catalog(5, neighbourly_only=True)) == 68
    assert len(catalog(6, neighbourly_only=True)) == 278


def test_catalog_properties():
    cat = catalog(4)
    assert all(not K.has_ghosts for K in cat)
    codes = [(K.n, canonical_code(K)) for K in cat]
    assert len(set(codes)) == len(codes)
    assert [K.name for K in cat] == [K.name for K in catalog(4)]
    assert all(is_neighbourly(K) for K in catalog(5, neighbourly_only=True))


def test_full_catalog_size_guard():
    with pytest.raises(ValueError):
        catalog(6)


@given(complexes(max_n=5, ghosts=True), st.randoms(use_true_random=False))
def test_canonical_code_invariant(K, rnd):
    perm = list(K.vertices)
    rnd.shuffle(perm)
    L = relabel(K, dict(zip(K.vertices, perm)))
    assert canonical_code(L) == canonical_code(K)


def test_stirling():
    assert [stirling2(4, k) for k in range(5)] == [0, 1, 7, 6, 1]
