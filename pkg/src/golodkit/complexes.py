"""Finite abstract simplicial complexes with faces encoded as bitmasks.

Vertex ``v`` corresponds to bit ``v - 1``.  A complex remembers the label set
it lives on, so restrictions and joins keep the original vertex names.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Mapping


class ComplexError(ValueError):
    """Malformed complex input (vertex outside range, overlapping joins, ...)."""


# -- vertex subsets -------------------------------------------------------

def mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        if v < 1:
            raise ComplexError(f"vertex labels are positive integers, got {v}")
        m |= 1 << (v - 1)
    return m


def members(m: int) -> tuple[int, ...]:
    """Sorted vertex labels of a bitmask."""
    out = []
    v = 1
    while m:
        if m & 1:
            out.append(v)
        m >>= 1
        v += 1
    return tuple(out)


def popcount(m: int) -> int:
    return bin(m).count("1")


def submasks(m: int) -> Iterator[int]:
    """All submasks of ``m`` including 0 and ``m`` itself."""
    s = m
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & m


def fmt(m: int) -> str:
    return "{" + ",".join(map(str, members(m))) + "}"


# -- complexes ------------------------------------------------------------

@dataclass(frozen=True)
class SimplicialComplex:
    """A downward-closed family of faces on a finite label set.

    ``vertices`` is the sorted label set the complex is defined on (ghost
    vertices allowed); ``faces`` holds bitmasks.  The empty face is present
    unless the complex is the void complex with no faces at all.
    """

    vertices: tuple[int, ...]
    faces: frozenset[int]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        vmask = mask(self.vertices)
        for f in self.faces:
            if f & ~vmask:
                raise ComplexError(f"face {fmt(f)} not on vertex set {self.vertices}")

    # construction
    @classmethod
    def from_facets(cls, n: int | Iterable[int], facets: Iterable[Iterable[int]], name: str = ""):
        """Downward closure of ``facets`` on vertex set ``[n]`` (or a given label set)."""
        verts = tuple(range(1, n + 1)) if isinstance(n, int) else tuple(sorted(set(n)))
        vmask = mask(verts)
        faces: set[int] = set()
        for facet in facets:
            fm = mask(facet)
            if fm & ~vmask:
                raise ComplexError(f"facet {sorted(facet)} has a vertex outside {list(verts)}")
            if fm in faces:
                continue
            faces.update(submasks(fm))
        if not faces:
            faces.add(0)
        return cls(verts, frozenset(faces), name)

    @classmethod
    def void(cls, vertices: Iterable[int] = ()):
        return cls(tuple(sorted(vertices)), frozenset())

    @classmethod
    def simplex(cls, vertices: Iterable[int]):
        verts = tuple(sorted(vertices))
        return cls(verts, frozenset(submasks(mask(verts))))

    @classmethod
    def boundary_of_simplex(cls, vertices: Iterable[int]):
        verts = tuple(sorted(vertices))
        full = mask(verts)
        return cls(verts, frozenset(f for f in submasks(full) if f != full))

    @classmethod
    def from_json(cls, data: str | Mapping):
        """Parse ``{"n": int, "facets": [[...], ...]}`` (1-based vertices)."""
        if isinstance(data, str):
            data = json.loads(data)
        try:
            n = data["n"]
            facets = data["facets"]
        except (KeyError, TypeError) as exc:
            raise ComplexError("complex JSON needs keys 'n' and 'facets'") from exc
        if not isinstance(n, int) or n < 1:
            raise ComplexError(f"'n' must be a positive integer, got {n!r}")
        if not isinstance(facets, list) or not all(
            isinstance(f, list) and all(isinstance(v, int) for v in f) for f in facets
        ):
            raise ComplexError("'facets' must be a list of integer lists")
        return cls.from_facets(n, facets, name=data.get("name", ""))

    def to_json(self) -> dict:
        d = {"n": self.n, "facets": [list(members(f)) for f in self.facets_masks]}
        if self.vertices != tuple(range(1, self.n + 1)):
            d["vertices"] = list(self.vertices)
        return d

    # basic structure
    @property
    def n(self) -> int:
        return len(self.vertices)

    @cached_property
    def vertex_mask(self) -> int:
        return mask(self.vertices)

    @property
    def is_void(self) -> bool:
        return not self.faces

    def __contains__(self, face) -> bool:
        if not isinstance(face, int):
            face = mask(face)
        return face in self.faces

    def __len__(self) -> int:
        return len(self.faces)

    @cached_property
    def facets_masks(self) -> tuple[int, ...]:
        fs = [f for f in self.faces if not any(f | (1 << (v - 1)) in self.faces
                                                for v in self.vertices if not f >> (v - 1) & 1)]
        return tuple(sorted(fs, key=lambda f: (-popcount(f), members(f))))

    @property
    def facets(self) -> list[tuple[int, ...]]:
        return [members(f) for f in self.facets_masks]

    @cached_property
    def ghost_vertices(self) -> tuple[int, ...]:
        return tuple(v for v in self.vertices if (1 << (v - 1)) not in self.faces)

    @property
    def has_ghosts(self) -> bool:
        return bool(self.ghost_vertices)

    @cached_property
    def dim(self) -> int:
        return max((popcount(f) for f in self.faces), default=0) - 1

    def faces_of_dim(self, k: int) -> list[int]:
        """Faces with ``k + 1`` vertices, ordered lexicographically by sorted vertices."""
        return sorted((f for f in self.faces if popcount(f) == k + 1), key=members)

    def f_vector(self) -> list[int]:
        """Face counts by dimension, starting at dimension -1."""
        return [len(self.faces_of_dim(k)) for k in range(-1, self.dim + 1)]

    def is_simplex(self) -> bool:
        """Full simplex on its vertex set (the {∅} complex on no vertices counts)."""
        return self.vertex_mask in self.faces

    def __repr__(self) -> str:
        label = f"{self.name}: " if self.name else ""
        return f"SimplicialComplex({label}vertices={list(self.vertices)}, facets={self.facets})"


def restriction(K: SimplicialComplex, I: Iterable[int] | int) -> SimplicialComplex:
    """Full subcomplex ``K_I``, living on vertex set ``I``."""
    Im = I if isinstance(I, int) else mask(I)
    if Im & ~K.vertex_mask:
        raise ComplexError(f"{fmt(Im)} is not a subset of the vertex set")
    return SimplicialComplex(members(Im), frozenset(f for f in K.faces if f & ~Im == 0))


def deletion(K: SimplicialComplex, i: int) -> SimplicialComplex:
    if i not in K.vertices:
        raise ComplexError(f"vertex {i} not in {list(K.vertices)}")
    return restriction(K, K.vertex_mask & ~(1 << (i - 1)))


def join(K: SimplicialComplex, L: SimplicialComplex) -> SimplicialComplex:
    if K.vertex_mask & L.vertex_mask:
        raise ComplexError("join needs disjoint vertex sets")
    faces = frozenset(a | b for a in K.faces for b in L.faces)
    return SimplicialComplex(tuple(sorted(K.vertices + L.vertices)), faces)


def relabel(K: SimplicialComplex, mapping: Mapping[int, int]) -> SimplicialComplex:
    """Apply an injective vertex relabelling."""
    new_verts = tuple(sorted(mapping[v] for v in K.vertices))
    faces = frozenset(mask(mapping[v] for v in members(f)) for f in K.faces)
    return SimplicialComplex(new_verts, faces, K.name)


def standardize(K: SimplicialComplex) -> SimplicialComplex:
    """Relabel the vertex set order-preservingly onto ``[n]``."""
    return relabel(K, {v: i for i, v in enumerate(K.vertices, 1)})


def is_m_neighbourly(K: SimplicialComplex, m: int) -> bool:
    if not 0 <= m <= K.n:
        raise ComplexError(f"m must lie in [0, {K.n}]")
    for k in range(m + 1):
        for c in combinations(K.vertices, k):
            if mask(c) not in K.faces:
                return False
    return True


def is_neighbourly(K: SimplicialComplex) -> bool:
    return is_m_neighbourly(K, K.n // 2)


# -- simplicial maps ------------------------------------------------------

@dataclass(frozen=True)
class SimplicialMap:
    source: SimplicialComplex
    target: SimplicialComplex
    vertex_map: Mapping[int, int]

    def image(self, face: int) -> int:
        return mask(self.vertex_map[v] for v in members(face))

    def is_valid(self) -> bool:
        return all(self.image(f) in self.target.faces for f in self.source.faces)

    def is_injective_on_faces(self) -> bool:
        return len({self.image(f) for f in self.source.faces}) == len(self.source.faces)

    def compose(self, other: "SimplicialMap") -> "SimplicialMap":
        """``other ∘ self``."""
        return SimplicialMap(self.source, other.target,
                             {v: other.vertex_map[w] for v, w in self.vertex_map.items()})


def iota_inclusion(K: SimplicialComplex, I, J) -> SimplicialMap:
    """The inclusion ``K_{I∪J} -> K_I * K_J`` (identity on vertices)."""
    Im = I if isinstance(I, int) else mask(I)
    Jm = J if isinstance(J, int) else mask(J)
    if Im & Jm:
        raise ComplexError("iota_inclusion needs disjoint I and J")
    if not Im or not Jm:
        raise ComplexError("iota_inclusion needs non-empty I and J")
    src = restriction(K, Im | Jm)
    tgt = join(restriction(K, Im), restriction(K, Jm))
    return SimplicialMap(src, tgt, {v: v for v in src.vertices})


# -- a few named complexes -------------------------------------------------

def cycle(n: int) -> SimplicialComplex:
    return SimplicialComplex.from_facets(n, [(i, i % n + 1) for i in range(1, n + 1)], name=f"C{n}")


def susp_triangle_with_edge() -> SimplicialComplex:
    """(∂Δ² * ∂Δ¹) ∪_{∂Δ¹} Δ¹ on [5]: neighbourly but not extractible."""
    return SimplicialComplex.from_facets(
        5, [(1, 2, 4), (1, 2, 5), (1, 3, 4), (1, 3, 5), (2, 3, 4), (2, 3, 5), (4, 5)],
        name="susp-triangle-with-edge")
