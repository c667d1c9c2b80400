"""Hochster decomposition of H*((D², S¹)^K) and its cup product.

The summand indexed by ``I ⊆ [n]`` is ``H̃^p(K_I)`` placed in total degree
``|I| + 1 + p``.  Products of classes on disjoint ``I`` and ``J`` are pulled
back along ``K_{I∪J} -> K_I * K_J``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product as iproduct

from .complexes import SimplicialComplex, members, popcount, restriction, submasks
from .homology import HomologySummary, SimplicialCohomology, reduced_homology
from .linalg import Field


def shuffle_sign(first: int, second: int) -> int:
    """Sign of the permutation sorting the concatenation (first, second)."""
    inv = 0
    m = second
    while m:
        low = m & -m
        m &= m - 1
        inv += popcount(first & ~((low << 1) - 1))
    return -1 if inv % 2 else 1


@dataclass(frozen=True)
class HochsterClass:
    """A cocycle on ``K_I`` of reduced degree ``p``; total degree ``|I| + 1 + p``."""

    I: int
    p: int
    cochain: dict
    field: Field
    zero_by_multidegree: bool = field(default=False, compare=False)

    @property
    def total_degree(self) -> int:
        return popcount(self.I) + 1 + self.p

    def to_json(self) -> dict:
        return {"I": list(members(self.I)), "p": self.p, "total_degree": self.total_degree,
                "cochain": {",".join(map(str, members(f))) or "()": self.field.to_json(c)
                            for f, c in sorted(self.cochain.items(), key=lambda t: members(t[0]))}}


@dataclass
class BigradedTable:
    """``I -> H̃*(K_I)`` for every subset of the vertex set."""

    K: SimplicialComplex
    field: Field
    entries: dict[int, HomologySummary]

    def dim(self, I: int, p: int) -> int:
        return self.entries[I].rank(p)

    def nonzero(self) -> list[tuple[int, int, int]]:
        """``(I, p, dim)`` triples with nonzero dimension, ordered by (|I|, I, p)."""
        out = []
        for I in sorted(self.entries, key=lambda m: (popcount(m), members(m))):
            for p, r in sorted(self.entries[I].ranks.items()):
                if r:
                    out.append((I, p, r))
        return out

    def multigraded(self) -> dict[tuple[int, int], int]:
        """``(I, total degree) -> dim``."""
        return {(I, popcount(I) + 1 + p): r for I, p, r in self.nonzero()}

    def poincare(self) -> dict[int, int]:
        """Total-degree dimensions of H*((D², S¹)^K)."""
        out: dict[int, int] = {}
        for I, p, r in self.nonzero():
            d = popcount(I) + 1 + p
            out[d] = out.get(d, 0) + r
        return dict(sorted(out.items()))

    def poincare_list(self) -> list[int]:
        P = self.poincare()
        top = max(P, default=0)
        return [P.get(d, 0) for d in range(top + 1)]

    def to_json(self) -> dict:
        return {"field": self.field.name,
                "entries": [{"I": list(members(I)), "p": p, "total_degree": popcount(I) + 1 + p,
                             "dim": r} for I, p, r in self.nonzero()],
                "poincare": {str(d): v for d, v in self.poincare().items()}}


def bigraded_betti(K: SimplicialComplex, F) -> BigradedTable:
    F = Field.parse(F)
    entries = {I: reduced_homology(restriction(K, I), F) for I in submasks(K.vertex_mask)}
    return BigradedTable(K, F, entries)


class HochsterAlgebra:
    """Cohomology of the moment-angle complex via full subcomplexes, with products."""

    def __init__(self, K: SimplicialComplex, F):
        self.K = K
        self.field = Field.parse(F)
        self._coh: dict[int, SimplicialCohomology] = {}

    def cohomology(self, I: int) -> SimplicialCohomology:
        if I not in self._coh:
            self._coh[I] = SimplicialCohomology(restriction(self.K, I), self.field)
        return self._coh[I]

    @cached_property
    def table(self) -> BigradedTable:
        return bigraded_betti(self.K, self.field)

    def basis(self, I: int, p: int) -> list[HochsterClass]:
        return [HochsterClass(I, p, c, self.field) for c in self.cohomology(I).basis(p)]

    def nonzero_pieces(self) -> list[tuple[int, int, int]]:
        return self.table.nonzero()

    def is_zero(self, a: HochsterClass) -> bool:
        if not a.cochain:
            return True
        return self.cohomology(a.I).is_coboundary(a.p, a.cochain)

    def coords(self, a: HochsterClass) -> list:
        return self.cohomology(a.I).coords(a.p, a.cochain)

    def cup_product(self, a: HochsterClass, b: HochsterClass) -> HochsterClass:
        return cup_product(a, b, self.K)

    def all_products_vanish(self):
        """``(True, None)`` or ``(False, witness)``; witness = (I, J, i, j)."""
        pieces: dict[int, list[int]] = {}
        for I, p, _ in self.nonzero_pieces():
            if I:
                pieces.setdefault(I, []).append(p)
        keys = sorted(pieces, key=lambda m: (popcount(m), members(m)))
        for x, I in enumerate(keys):
            for J in keys[x + 1:]:
                if I & J:
                    continue
                for p, q in iproduct(pieces[I], pieces[J]):
                    A, B = self.basis(I, p), self.basis(J, q)
                    for i, j in iproduct(range(len(A)), range(len(B))):
                        c = self.cup_product(A[i], B[j])
                        if not self.is_zero(c):
                            return False, {"I": list(members(I)), "J": list(members(J)),
                                           "p": p, "q": q, "pair": [i, j]}
        return True, None


def cup_product(a: HochsterClass, b: HochsterClass, K: SimplicialComplex) -> HochsterClass:
    """Product of classes on ``K_I`` and ``K_J`` landing in ``H̃^{p+q+1}(K_{I∪J})``.

    On cochains: ``c(σ ∪ ρ) = s · ε(σ, ρ) · a(σ) · b(ρ)`` with ``ε`` the shuffle
    sign of (σ, ρ) and the constant ``s = ε(I, J) · (-1)^{|I|(q+1)}``, which makes
    the product agree with the Koszul model and graded commutative in total
    degree.
    """
    if a.field != b.field:
        raise ValueError(f"classes over different fields: {a.field} vs {b.field}")
    F = a.field
    if a.I & b.I or not a.I or not b.I:
        return HochsterClass(a.I | b.I, a.p + b.p + 1, {}, F, zero_by_multidegree=True)
    s = shuffle_sign(a.I, b.I) * (-1 if popcount(a.I) * (b.p + 1) % 2 else 1)
    out: dict[int, object] = {}
    faces = K.faces
    for sg, x in a.cochain.items():
        for rh, y in b.cochain.items():
            t = sg | rh
            if t in faces:
                sign = s * shuffle_sign(sg, rh)
                out[t] = out.get(t, 0) + (x * y if sign > 0 else -x * y)
    if F.p:
        out = {t: c % F.p for t, c in out.items() if c % F.p}
    else:
        out = {t: c for t, c in out.items() if c}
    return HochsterClass(a.I | b.I, a.p + b.p + 1, out, F)


def all_products_vanish(K: SimplicialComplex, F):
    return HochsterAlgebra(K, F).all_products_vanish()


def bbcg_dimension_check(K: SimplicialComplex, F) -> tuple[bool, dict[int, int]]:
    """Compare the suspended total Poincaré polynomial against the wedge of ``Σ^{|I|+2}|K_I|``.

    Returns ``(agrees, degree -> dim)`` for ``Σ(D², S¹)^K``, the ``I = ∅``
    summand contributing the unit shifted to degree 1.
    """
    table = bigraded_betti(K, F)
    suspended = {d + 1: v for d, v in table.poincare().items()}
    wedge: dict[int, int] = {}
    for I, h in table.entries.items():
        for p, r in h.ranks.items():
            if r:
                d = popcount(I) + 2 + p
                wedge[d] = wedge.get(d, 0) + r
    wedge = dict(sorted(wedge.items()))
    return suspended == wedge, suspended

