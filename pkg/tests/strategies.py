"""Hypothesis strategies shared by the test modules."""
from hypothesis import strategies as st

from golodkit import SimplicialComplex


@st.composite
def complexes(draw, min_n=1, max_n=5, ghosts=False):
    n = draw(st.integers(min_n, max_n))
    facets = draw(st.lists(st.sets(st.integers(1, n), min_size=1, max_size=n), max_size=6))
    if not ghosts:
        covered = set().union(*facets) if facets else set()
        facets = facets + [{v} for v in range(1, n + 1) if v not in covered]
    return SimplicialComplex.from_facets(n, facets)
