"""Reduced simplicial (co)homology over Z, Q and F_p.

Sign convention: ``∂[v0 < ... < vk] = Σ (-1)^i [v0 ... v̂i ... vk]`` with
labels in ascending order; the augmentation sends every vertex to the
empty face with coefficient 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .complexes import SimplicialComplex, members, popcount
from .linalg import Field, Subquotient, kernel_and_image
from .snf import invariant_factors

ZZ = "Z"


def boundary(face: int) -> dict[int, int]:
    """Boundary of a face as a dict ``{codim-1 face: ±1}``."""
    out = {}
    sign = 1
    m = face
    while m:
        low = m & -m
        out[face & ~low] = sign
        sign = -sign
        m &= m - 1
    return out


def coboundary_coeff(face: int, v_bit: int) -> int:
    """Sign of ``face`` in ``∂(face ∪ {v})``: (-1)^(#vertices of face below v)."""
    return -1 if popcount(face & (v_bit - 1)) % 2 else 1


@dataclass
class ChainComplexData:
    """Ordered face bases and sparse integer boundary matrices of ``K``.

    ``bases[k]`` lists faces with ``k + 1`` vertices for ``k = -1 .. dim``.
    ``boundary_rows(k)`` gives ``∂_k : C_k -> C_{k-1}`` as one sparse row per
    face of ``C_k`` (column = index in ``bases[k-1]``).
    """

    K: SimplicialComplex
    bases: dict[int, list[int]] = field(init=False)
    index: dict[int, dict[int, int]] = field(init=False)

    def __post_init__(self):
        K = self.K
        self.bases = {k: K.faces_of_dim(k) for k in range(-1, K.dim + 1)}
        self.index = {k: {f: i for i, f in enumerate(b)} for k, b in self.bases.items()}

    def boundary_rows(self, k: int) -> list[dict[int, int]]:
        if k - 1 not in self.bases or k not in self.bases:
            return []
        idx = self.index[k - 1]
        return [{idx[g]: s for g, s in boundary(f).items()} for f in self.bases[k]]

    def check_d_squared(self) -> bool:
        for k in range(1, self.K.dim + 1):
            rows_k = self.boundary_rows(k)
            rows_km1 = self.boundary_rows(k - 1)
            for r in rows_k:
                acc: dict[int, int] = {}
                for j, c in r.items():
                    for jj, cc in rows_km1[j].items():
                        acc[jj] = acc.get(jj, 0) + c * cc
                if any(acc.values()):
                    return False
        return True


@dataclass(frozen=True)
class HomologySummary:
    """Reduced homology by degree: free ranks (or field dims) and torsion."""

    ring: str
    ranks: dict[int, int]
    torsion: dict[int, tuple[int, ...]]

    def rank(self, k: int) -> int:
        return self.ranks.get(k, 0)

    def nonzero(self) -> dict[int, int]:
        return {k: r for k, r in sorted(self.ranks.items()) if r}

    @property
    def is_acyclic(self) -> bool:
        return not any(self.ranks.values()) and not any(self.torsion.values())

    def describe(self) -> dict[str, str]:
        out = {}
        for k in sorted(set(self.ranks) | set(self.torsion)):
            r, t = self.rank(k), self.torsion.get(k, ())
            if not r and not t:
                continue
            parts = [f"{self.ring}^{r}" if r > 1 else self.ring] if r else []
            parts += [f"Z/{d}" for d in t]
            out[str(k)] = " + ".join(parts)
        return out

    def to_json(self) -> dict:
        return {"ring": self.ring,
                "ranks": {str(k): v for k, v in sorted(self.ranks.items()) if v},
                "torsion": {str(k): list(v) for k, v in sorted(self.torsion.items()) if v}}


def reduced_homology(K: SimplicialComplex, coeffs=ZZ) -> HomologySummary:
    """Reduced homology of ``K`` over Z (default), Q or F_p.

    Conventions: the void complex has zero homology; ``{∅}`` has the
    coefficient ring in degree -1.
    """
    if K.is_void:
        ring = ZZ if coeffs == ZZ else Field.parse(coeffs).name
        return HomologySummary(ring, {}, {})
    data = ChainComplexData(K)
    factors = {k: invariant_factors(data.boundary_rows(k)) for k in range(0, K.dim + 1)}
    ranks, torsion = {}, {}
    if coeffs == ZZ:
        ring = ZZ
        rk = {k: len(f) for k, f in factors.items()}
    else:
        F = Field.parse(coeffs)
        ring = F.name
        rk = {k: sum(1 for d in f if not F.p or d % F.p) for k, f in factors.items()}
    for k in range(-1, K.dim + 1):
        r = len(data.bases[k]) - rk.get(k, 0) - rk.get(k + 1, 0)
        ranks[k] = r
        if coeffs == ZZ:
            torsion[k] = tuple(d for d in factors.get(k + 1, []) if d > 1)
    return HomologySummary(ring, ranks, torsion)


def reduced_euler_characteristic(K: SimplicialComplex) -> int:
    return sum((-1) ** (popcount(f) - 1) for f in K.faces)


# -- cochains over a field -------------------------------------------------

def coboundary(K: SimplicialComplex, cochain: dict[int, object], F: Field) -> dict[int, object]:
    """``(δφ)(τ) = Σ_i (-1)^i φ(τ - v_i)`` on faces of ``K``."""
    out: dict[int, object] = {}
    vm = K.vertex_mask
    for f, c in cochain.items():
        free = vm & ~f
        while free:
            vb = free & -free
            free &= free - 1
            g = f | vb
            if g in K.faces:
                s = coboundary_coeff(f, vb)
                out[g] = out.get(g, 0) + (c if s > 0 else -c)
    if F.p:
        return {g: c % F.p for g, c in out.items() if c % F.p}
    return {g: c for g, c in out.items() if c}


def _face_key(f: int):
    return members(f)


class SimplicialCohomology:
    """Reduced cochain cohomology of ``K`` over a field, with class coordinates."""

    def __init__(self, K: SimplicialComplex, F: Field):
        self.K = K
        self.field = F
        self._cache: dict[int, Subquotient] = {}

    def _delta_images(self, k: int):
        faces = self.K.faces_of_dim(k)
        one = self.field(1)
        return faces, [coboundary(self.K, {f: one}, self.field) for f in faces]

    def degree(self, k: int) -> Subquotient:
        if k not in self._cache:
            F = self.field
            faces_k, imgs_k = self._delta_images(k)
            cycles, _ = kernel_and_image(F, faces_k, imgs_k, _face_key)
            if k - 1 >= -1:
                faces_prev, imgs_prev = self._delta_images(k - 1)
                _, bnd = kernel_and_image(F, faces_prev, imgs_prev, _face_key)
            else:
                bnd = []
            self._cache[k] = Subquotient(F, cycles, bnd, _face_key)
        return self._cache[k]

    def dim(self, k: int) -> int:
        if self.K.is_void or k < -1 or k > self.K.dim:
            return 0
        return self.degree(k).dim

    @cached_property
    def dims(self) -> dict[int, int]:
        if self.K.is_void:
            return {}
        return {k: self.dim(k) for k in range(-1, self.K.dim + 1)}

    def basis(self, k: int) -> list[dict[int, object]]:
        if self.K.is_void or k < -1 or k > self.K.dim:
            return []
        return [dict(r) for r in self.degree(k).reps]

    def is_cocycle(self, cochain) -> bool:
        return not coboundary(self.K, cochain, self.field)

    def coords(self, k: int, cocycle) -> list:
        if self.K.is_void or k < -1 or k > self.K.dim:
            return []
        return self.degree(k).coords(cocycle)

    def is_coboundary(self, k: int, cocycle) -> bool:
        return not any(self.coords(k, cocycle))


@dataclass(frozen=True)
class CohomologyClass:
    """A cocycle representative on a complex, in a given reduced degree."""

    complex: SimplicialComplex
    field: Field
    degree: int
    cochain: dict

    def to_json(self) -> dict:
        return {"vertices": list(self.complex.vertices), "degree": self.degree,
                "cochain": {",".join(map(str, members(f))) or "()": self.field.to_json(c)
                            for f, c in sorted(self.cochain.items(), key=lambda t: members(t[0]))}}


def cocycle_basis(K: SimplicialComplex, F, degree: int) -> list[CohomologyClass]:
    F = Field.parse(F)
    coh = SimplicialCohomology(K, F)
    return [CohomologyClass(K, F, degree, c) for c in coh.basis(degree)]


# -- homology over a field (chains), used for inclusion-induced maps -------

class SimplicialHomology:
    """Reduced chain homology over a field with cycle-space access."""

    def __init__(self, K: SimplicialComplex, F: Field):
        self.K = K
        self.field = F
        self._cycles: dict[int, list] = {}
        self._bounds: dict[int, list] = {}

    def _boundary_images(self, k: int):
        F = self.field
        faces = self.K.faces_of_dim(k)
        if k == -1:
            return faces, [{} for _ in faces]
        return faces, [{g: F(s) for g, s in boundary(f).items()} for f in faces]

    def cycles(self, k: int) -> list:
        if k not in self._cycles:
            faces, imgs = self._boundary_images(k)
            self._cycles[k], _ = kernel_and_image(self.field, faces, imgs, _face_key)
        return self._cycles[k]

    def boundaries(self, k: int) -> list:
        if k not in self._bounds:
            faces, imgs = self._boundary_images(k + 1)
            _, self._bounds[k] = kernel_and_image(self.field, faces, imgs, _face_key)
        return self._bounds[k]

    def dim(self, k: int) -> int:
        if self.K.is_void:
            return 0
        return len(self.cycles(k)) - len(self.boundaries(k))
