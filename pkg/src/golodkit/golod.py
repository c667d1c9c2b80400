"""Golod-type classification built from the Hochster and Koszul computations."""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .complexes import ComplexError, SimplicialComplex, deletion, members, popcount
from .hochster import HochsterAlgebra, bigraded_betti
from .homology import SimplicialHomology
from .koszul import KoszulModel, all_triple_massey
from .linalg import Field, Reducer

GOLOD = "Golod-up-to-triple-Massey"
NOT_GOLOD = "not-Golod"


@dataclass
class GolodVerdict:
    field: str
    products_vanish: bool
    triple_massey_all_vanish: bool | None  # None: not examined since a product survives
    label: str
    witnesses: dict = field(default_factory=dict)
    massey_defined: int = 0

    def to_json(self) -> dict:
        return {"field": self.field, "label": self.label,
                "products_vanish": self.products_vanish,
                "triple_massey_all_vanish": self.triple_massey_all_vanish,
                "triple_massey_defined": self.massey_defined,
                "witnesses": self.witnesses}


def classify_golod(K: SimplicialComplex, F, rng: random.Random | None = None) -> GolodVerdict:
    """Products plus every defined triple Massey product of basis classes.

    Higher Massey products are not examined, hence the label.
    """
    if K.has_ghosts:
        raise ComplexError(f"ghost vertices {list(K.ghost_vertices)}: Golod analysis needs none")
    F = Field.parse(F)
    pv, pw = HochsterAlgebra(K, F).all_products_vanish()
    witnesses = {}
    if not pv:
        witnesses["product"] = pw
        return GolodVerdict(F.name, False, None, NOT_GOLOD, witnesses)
    defined, vanishing, mw = all_triple_massey(KoszulModel(K, F), rng)
    mv = defined == vanishing
    if mw:
        witnesses["massey"] = mw
    return GolodVerdict(F.name, True, mv, GOLOD if mv else NOT_GOLOD, witnesses, defined)


# -- extractibility shadow ------------------------------------------------------

@dataclass
class ExtractibilityReport:
    """Homology shadow of a right homotopy inverse for ``∨ Σ|K∖i| -> Σ|K|``."""

    surjective: dict[int, bool]
    verdict: bool
    reason: str
    witness_degree: int | None = None
    failing_deletion: list[int] | None = None

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "reason": self.reason,
                "surjective": {str(k): v for k, v in sorted(self.surjective.items())},
                "witness_degree": self.witness_degree,
                "failing_deletion": self.failing_deletion}


def deletion_surjectivity(K: SimplicialComplex, F: Field) -> dict[int, bool]:
    """Per degree: do the images of ``H̃_d(K∖i)`` span ``H̃_d(K)``?"""
    HK = SimplicialHomology(K, F)
    out = {}
    dels = [SimplicialHomology(deletion(K, i), F) for i in K.vertices]
    key = members
    for d in range(-1, K.dim + 1):
        Z = HK.cycles(d)
        B = HK.boundaries(d)
        if len(Z) == len(B):
            continue
        red = Reducer(F, key)
        for b in B:
            red.add(b)
        for H in dels:
            for z in H.cycles(d):
                red.add(z)
        out[d] = len(red) == len(Z)
    return out


def extractible_necessary(K: SimplicialComplex, F, recursive: bool = True) -> ExtractibilityReport:
    """Necessary condition for extractibility, checked on homology.

    A complex with some ``K∖i`` a simplex is extractible outright.  Otherwise
    each ``H̃_d(K)`` must be spanned by the deletions, and (recursively) every
    deletion must pass as well.
    """
    F = Field.parse(F)
    for i in K.vertices:
        if deletion(K, i).is_simplex():
            return ExtractibilityReport({}, True, f"deletion of vertex {i} is a simplex")
    surj = deletion_surjectivity(K, F)
    bad = [d for d, ok in sorted(surj.items()) if not ok]
    if bad:
        return ExtractibilityReport(surj, False, "deletions do not span homology", bad[0])
    if recursive:
        for i in K.vertices:
            sub = extractible_necessary(deletion(K, i), F, True)
            if not sub.verdict:
                return ExtractibilityReport(surj, False, "a vertex deletion fails",
                                            sub.witness_degree, [i] + (sub.failing_deletion or []))
    return ExtractibilityReport(surj, True, "deletions span homology in every degree")


# -- Poincaré series ----------------------------------------------------------------

@dataclass
class RationalSeries:
    """``numerator / denominator`` with integer coefficient lists (index = power of t)."""

    numerator: list[int]
    denominator: list[int]
    note: str = ""

    def series(self, terms: int) -> list[int]:
        """Power series coefficients up to ``t^(terms-1)``."""
        num = self.numerator + [0] * terms
        den = self.denominator
        out = []
        for k in range(terms):
            c = num[k] - sum(den[j] * out[k - j] for j in range(1, min(k, len(den) - 1) + 1))
            out.append(c // den[0])
        return out

    def to_json(self) -> dict:
        return {"numerator": self.numerator, "denominator": self.denominator, "note": self.note}


def _binomial_row(n: int) -> list[int]:
    row = [1]
    for _ in range(n):
        row = [a + b for a, b in zip(row + [0], [0] + row)]
    return row


def golod_poincare_series(K: SimplicialComplex, F, verdict: GolodVerdict | None = None) -> RationalSeries:
    """Golod bound ``(1+t)^n / (1 − Σ_{I≠∅,p} dim H̃^p(K_I) t^{|I|−p})``.

    ``|I| − p = i + 1`` where ``i = |I| − p − 1`` is the homological degree of
    the corresponding Tor group; this is the Poincaré series of
    ``Tor^{k[K]}(k, k)`` when ``K`` is Golod.
    """
    F = Field.parse(F)
    table = bigraded_betti(K, F)
    den = [1]
    for I, p, r in table.nonzero():
        if not I:
            continue
        e = popcount(I) - p
        while len(den) <= e:
            den.append(0)
        den[e] -= r
    note = "exact Poincaré series of Tor^{k[K]}(k,k) for Golod K"
    if verdict is not None and verdict.label != GOLOD:
        note = "upper bound only: K is not Golod over this field"
    return RationalSeries(_binomial_row(K.n), den, note)
