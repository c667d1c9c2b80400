"""Finite Koszul-type DGA computing Tor_{k[v1..vn]}(k[K], k).

Basis monomials ``u_J v_σ`` with ``σ ∈ K`` and ``J ∩ σ = ∅``; ``u_i`` has
degree 1, ``v_i`` degree 2, ``d(u_i) = v_i``.  Everything is graded by the
multidegree ``J ∪ σ``, and all linear algebra is done one multidegree at a
time.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from itertools import product as iproduct

from .complexes import SimplicialComplex, members, popcount, submasks
from .hochster import shuffle_sign
from .linalg import Field, Reducer, Subquotient, axpy, kernel_and_image

Basis = tuple[int, int]  # (J, sigma) as bitmasks


def _key(b: Basis):
    return (members(b[1]), members(b[0]))


def degree(b: Basis) -> int:
    return popcount(b[0]) + 2 * popcount(b[1])


def multidegree(b: Basis) -> int:
    return b[0] | b[1]


class KoszulModel:
    """The DGA for ``K`` over ``F`` with per-multidegree cohomology."""

    def __init__(self, K: SimplicialComplex, F):
        self.K = K
        self.field = Field.parse(F)
        self._coh: dict[tuple[int, int], Subquotient] = {}
        self._solvers: dict[tuple[int, int], tuple[list, Reducer]] = {}

    # -- structure ---------------------------------------------------------
    @cached_property
    def basis(self) -> list[Basis]:
        vm = self.K.vertex_mask
        out = [(J, s) for s in self.K.faces for J in submasks(vm & ~s)]
        return sorted(out, key=lambda b: (degree(b), _key(b)))

    def component(self, I: int, deg: int) -> list[Basis]:
        """Basis of multidegree ``I`` and total degree ``deg``."""
        k = deg - popcount(I)  # = |σ|
        return sorted(((I & ~s, s) for s in self.K.faces if s & ~I == 0 and popcount(s) == k),
                      key=_key)

    def d_basis(self, b: Basis) -> dict:
        J, s = b
        out = {}
        pos = 0
        m = J
        while m:
            low = m & -m
            m &= m - 1
            if s | low in self.K.faces:
                out[(J & ~low, s | low)] = self.field(-1 if pos % 2 else 1)
            pos += 1
        return out

    def d(self, x: dict) -> dict:
        out: dict = {}
        for b, c in x.items():
            axpy(self.field, out, c, self.d_basis(b))
        return out

    def mul_basis(self, a: Basis, b: Basis):
        """``(coefficient sign, product basis)`` or ``None`` when the product is 0."""
        (J, s), (J2, s2) = a, b
        if J & J2 or s & s2 or (J | J2) & (s | s2):
            return None
        if s | s2 not in self.K.faces:
            return None
        return shuffle_sign(J, J2), (J | J2, s | s2)

    def mul(self, x: dict, y: dict) -> dict:
        out: dict = {}
        F = self.field
        for a, ca in x.items():
            for b, cb in y.items():
                r = self.mul_basis(a, b)
                if r is None:
                    continue
                sign, ab = r
                c = out.get(ab, 0) + (ca * cb if sign > 0 else -ca * cb)
                if F.p:
                    c %= F.p
                if c:
                    out[ab] = c
                else:
                    out.pop(ab, None)
        return out

    def check_d_squared(self) -> bool:
        return all(not self.d(self.d_basis(b)) for b in self.basis)

    def check_leibniz(self, pairs=None) -> bool:
        one = self.field(1)
        pairs = pairs if pairs is not None else iproduct(self.basis, self.basis)
        for a, b in pairs:
            x, y = {a: one}, {b: one}
            lhs = self.d(self.mul(x, y))
            rhs = self.mul(self.d(x), y)
            sgn = -1 if degree(a) % 2 else 1
            axpy(self.field, rhs, self.field(sgn), self.mul(x, self.d(y)))
            if lhs != rhs:
                return False
        return True

    # -- cohomology --------------------------------------------------------
    def cohomology(self, I: int, deg: int) -> Subquotient:
        key = (I, deg)
        if key not in self._coh:
            F = self.field
            here = self.component(I, deg)
            cycles, _ = kernel_and_image(F, here, [self.d_basis(b) for b in here], _key)
            below = self.component(I, deg - 1)
            _, bnd = kernel_and_image(F, below, [self.d_basis(b) for b in below], _key)
            self._coh[key] = Subquotient(F, cycles, bnd, _key)
        return self._coh[key]

    def degrees_of(self, I: int) -> range:
        k = popcount(I)
        return range(k, 2 * k + 1)

    @cached_property
    def multigraded_dims(self) -> dict[tuple[int, int], int]:
        """``(multidegree, total degree) -> dim`` for nonzero pieces."""
        out = {}
        for I in submasks(self.K.vertex_mask):
            for deg in self.degrees_of(I):
                d = self.cohomology(I, deg).dim
                if d:
                    out[(I, deg)] = d
        return out

    def poincare(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for (_, deg), d in self.multigraded_dims.items():
            out[deg] = out.get(deg, 0) + d
        return dict(sorted(out.items()))

    def poincare_list(self) -> list[int]:
        P = self.poincare()
        return [P.get(d, 0) for d in range(max(P, default=0) + 1)]

    def classes(self, I: int, deg: int) -> list["KoszulClass"]:
        return [KoszulClass(I, deg, dict(r)) for r in self.cohomology(I, deg).reps]

    def all_classes(self, positive: bool = True) -> list["KoszulClass"]:
        out = []
        for (I, deg) in sorted(self.multigraded_dims, key=lambda t: (t[1], _key((0, t[0])))):
            if positive and not I:
                continue
            out.extend(self.classes(I, deg))
        return out

    def coords(self, x: "KoszulClass") -> list:
        if not x.element:
            return [self.field(0)] * self.cohomology(x.I, x.deg).dim
        return self.cohomology(x.I, x.deg).coords(x.element)

    def is_zero_class(self, x: "KoszulClass") -> bool:
        return not any(self.coords(x))

    def product(self, x: "KoszulClass", y: "KoszulClass") -> "KoszulClass":
        return KoszulClass(x.I | y.I, x.deg + y.deg, self.mul(x.element, y.element))

    def solve_d(self, I: int, deg: int, target: dict) -> dict | None:
        """Some ``x`` of multidegree ``I`` and degree ``deg - 1`` with ``dx = target``."""
        key = (I, deg - 1)
        if key not in self._solvers:
            below = self.component(I, deg - 1)
            red = Reducer(self.field, _key)
            for b in below:
                red.add(self.d_basis(b))
            self._solvers[key] = (below, red)
        below, red = self._solvers[key]
        res, combo = red.reduce(target)
        if res:
            return None
        return {below[j]: c for j, c in combo.items() if c}

    def random_cocycle(self, I: int, deg: int, rng: random.Random) -> dict:
        here = self.component(I, deg)
        cycles, _ = kernel_and_image(self.field, here, [self.d_basis(b) for b in here], _key)
        out: dict = {}
        for z in cycles:
            axpy(self.field, out, self.field(rng.randint(-3, 3)), z)
        return out

    def all_products_vanish(self):
        classes = self.all_classes()
        for i, x in enumerate(classes):
            for y in classes[i + 1:]:
                if x.I & y.I:
                    continue
                if not self.is_zero_class(self.product(x, y)):
                    return False, {"a": x.summary(), "b": y.summary()}
        return True, None


@dataclass(frozen=True)
class KoszulClass:
    """A cocycle of multidegree ``I`` and total degree ``deg``."""

    I: int
    deg: int
    element: dict

    def summary(self) -> dict:
        return {"multidegree": list(members(self.I)), "degree": self.deg}


def build_model(K: SimplicialComplex, F) -> KoszulModel:
    return KoszulModel(K, F)


# -- triple Massey products -------------------------------------------------

@dataclass
class MasseyResult:
    defined: bool
    verdict: str  # "vanishes" | "nontrivial" | "undefined"
    representative: KoszulClass | None
    indeterminacy: list[list]  # coordinate vectors spanning a·H + H·c

    def to_json(self) -> dict:
        return {"defined": self.defined, "verdict": self.verdict,
                "indeterminacy_dim": len(self.indeterminacy)}


def triple_massey(model: KoszulModel, a: KoszulClass, b: KoszulClass, c: KoszulClass,
                  rng: random.Random | None = None) -> MasseyResult:
    """``⟨a, b, c⟩ = [a·y − (−1)^{|a|} x·c]`` where ``dx = a·b`` and ``dy = b·c``.

    With ``rng`` the bounding cochains get a random cocycle added, which moves
    the representative within the indeterminacy only.
    """
    F = model.field
    ab, bc = model.mul(a.element, b.element), model.mul(b.element, c.element)
    x = model.solve_d(a.I | b.I, a.deg + b.deg, ab)
    y = model.solve_d(b.I | c.I, b.deg + c.deg, bc)
    if x is None or y is None:
        return MasseyResult(False, "undefined", None, [])
    if rng is not None:
        axpy(F, x, F(1), model.random_cocycle(a.I | b.I, a.deg + b.deg - 1, rng))
        axpy(F, y, F(1), model.random_cocycle(b.I | c.I, b.deg + c.deg - 1, rng))
    I = a.I | b.I | c.I
    deg = a.deg + b.deg + c.deg - 1
    if (a.I & b.I) or (b.I & c.I) or (a.I & c.I):
        # non-squarefree multidegree: the target group is zero
        return MasseyResult(True, "vanishes", KoszulClass(I, deg, {}), [])
    rep = model.mul(a.element, y)
    sgn = F(1 if a.deg % 2 else -1)  # −(−1)^{|a|}
    axpy(F, rep, sgn, model.mul(x, c.element))
    rep_class = KoszulClass(I, deg, rep)
    H = model.cohomology(I, deg)
    gens = []
    for z in model.classes(b.I | c.I, b.deg + c.deg - 1):
        gens.append(H.coords(model.mul(a.element, z.element)))
    for z in model.classes(a.I | b.I, a.deg + b.deg - 1):
        gens.append(H.coords(model.mul(z.element, c.element)))
    red = Reducer(F)
    ind = []
    for g in gens:
        v = {i: x_ for i, x_ in enumerate(g) if x_}
        if red.add(v):
            ind.append(g)
    r = {i: x_ for i, x_ in enumerate(H.coords(rep)) if x_}
    verdict = "vanishes" if red.contains(r) else "nontrivial"
    return MasseyResult(True, verdict, rep_class, ind)


def all_triple_massey(model: KoszulModel, rng: random.Random | None = None):
    """Run ``triple_massey`` over basis triples with pairwise disjoint multidegrees.

    Returns ``(n_defined, n_vanishing, first nontrivial witness or None)``.
    """
    classes = model.all_classes()
    defined = vanishing = 0
    witness = None
    for a, b, c in iproduct(classes, repeat=3):
        if a.I & b.I or b.I & c.I or a.I & c.I:
            continue
        r = triple_massey(model, a, b, c, rng)
        if not r.defined:
            continue
        defined += 1
        if r.verdict == "vanishes":
            vanishing += 1
        elif witness is None:
            witness = {"a": a.summary(), "b": b.summary(), "c": c.summary()}
    return defined, vanishing, witness


# -- transport from the Hochster side ----------------------------------------

def hochster_to_koszul(I: int, cochain: dict, F: Field) -> dict:
    """Chain isomorphism ``C̃*(K_I) -> multidegree-I part``, χ_σ ↦ ±u_{I−σ} v_σ.

    The sign is ``(−1)^{k(k−1)/2} · ε(σ, I−σ)`` with ``k = |σ|``; with it the
    Hochster cup product maps to the Koszul product on the nose.
    """
    out = {}
    for s, c in cochain.items():
        k = popcount(s)
        sign = shuffle_sign(s, I & ~s) * (-1 if (k * (k - 1) // 2) % 2 else 1)
        v = c if sign > 0 else -c
        out[(I & ~s, s)] = F(v)
    return {b: c for b, c in out.items() if c}


@dataclass
class CrossValidation:
    agree: bool
    dims_agree: bool
    products_agree: bool
    hochster_products_vanish: bool
    koszul_products_vanish: bool
    mismatches: list

    def to_json(self) -> dict:
        return {"agree": self.agree, "dims_agree": self.dims_agree,
                "products_agree": self.products_agree,
                "hochster_products_vanish": self.hochster_products_vanish,
                "koszul_products_vanish": self.koszul_products_vanish,
                "mismatches": self.mismatches}


def cross_validate(K: SimplicialComplex, F) -> CrossValidation:
    from .hochster import HochsterAlgebra

    F = Field.parse(F)
    H = HochsterAlgebra(K, F)
    M = KoszulModel(K, F)
    hd = H.table.multigraded()
    kd = M.multigraded_dims
    mism = [{"I": list(members(I)), "degree": d, "hochster": hd.get((I, d), 0),
             "koszul": kd.get((I, d), 0)}
            for (I, d) in sorted(set(hd) | set(kd), key=lambda t: (t[1], members(t[0])))
            if hd.get((I, d), 0) != kd.get((I, d), 0)]
    hv, _ = H.all_products_vanish()
    kv, _ = M.all_products_vanish()
    return CrossValidation(not mism and hv == kv, not mism, hv == kv, hv, kv, mism)
