"""Exact evaluators for the explicit PL maps and their membership oracles.

Conventions: ``D¹ = [-1, 1]`` with basepoint ``-1``; points of ``(D¹)^∧n``
with any coordinate ``-1`` collapse to the basepoint.  Barycentric points of
``|Δ^{n-1}|`` are tuples of non-negative rationals summing to 1.
"""
from __future__ import annotations

import random
from math import lcm
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from typing import Callable, Sequence

from .complexes import ComplexError, SimplicialComplex, is_neighbourly, mask, members
from .permutohedron import OrderedPartition, ordered_partition_from_sequence

ONE = Fraction(1)
SNAP_EPS = 1e-9


class PLError(ValueError):
    pass


@dataclass(frozen=True)
class SmashPoint:
    """A point of ``(D¹)^∧n``; ``coords is None`` marks the basepoint."""

    n: int
    coords: tuple[Fraction, ...] | None

    @classmethod
    def make(cls, coords: Sequence) -> "SmashPoint":
        xs = tuple(Fraction(x) for x in coords)
        if any(not -1 <= x <= 1 for x in xs):
            raise PLError(f"coordinates must lie in [-1, 1]: {xs}")
        if any(x == -1 for x in xs):
            return cls(len(xs), None)
        return cls(len(xs), xs)

    @classmethod
    def basepoint(cls, n: int) -> "SmashPoint":
        return cls(n, None)

    @property
    def is_basepoint(self) -> bool:
        return self.coords is None

    def support(self) -> int:
        """Mask of coordinates different from 1."""
        if self.coords is None:
            raise PLError("the basepoint has no support")
        return mask(i for i, x in enumerate(self.coords, 1) if x != 1)

    def to_json(self):
        return None if self.coords is None else [str(x) for x in self.coords]


def _bary(z: Sequence, n: int) -> tuple[Fraction, ...]:
    zs = tuple(v if type(v) is Fraction else Fraction(v) for v in z)
    ok = len(zs) == n and all(v.numerator >= 0 for v in zs)
    if ok:
        D = lcm(*(v.denominator for v in zs))
        ok = sum(v.numerator * (D // v.denominator) for v in zs) == D
    if not ok:
        raise PLError(f"not a barycentric point of |Δ^{n - 1}|: {zs}")
    return zs


def bary_support(z: Sequence) -> int:
    out = 0
    for i, v in enumerate(z):
        if v:
            out |= 1 << i
    return out


# -- h : Σ|Δ^{n-1}| -> (D¹)^∧n ----------------------------------------------------

def h_eval(n: int, t, z: Sequence, chart: int | None = None) -> SmashPoint:
    """``h(t, z)``; ``chart`` (1-based) may name any index where ``z`` is maximal."""
    t = Fraction(t)
    zs = _bary(z, n)
    if not -1 <= t <= 1:
        raise PLError("t must lie in [-1, 1]")
    if t == -1:
        return SmashPoint.basepoint(n)
    if t == 1:
        return SmashPoint(n, (ONE,) * n)
    D = lcm(*(v.denominator for v in zs))
    a = [v.numerator * (D // v.denominator) for v in zs]
    top = max(a)
    i = a.index(top) if chart is None else chart - 1
    if a[i] != top:
        raise PLError(f"chart {chart} is not a maximal coordinate")
    # t + (1 - t)(z_i - z_j)/z_i over the common denominator q·a_i
    p, q = t.numerator, t.denominator
    ai = a[i]
    return SmashPoint(n, tuple(Fraction(p * ai + (q - p) * (ai - aj), q * ai) for aj in a))


def h_inv_eval(n: int, x: SmashPoint):
    """Inverse of ``h``: ``(t, z)``, ``(-1, None)`` for the basepoint, ``(1, None)`` at the apex."""
    if x.is_basepoint:
        return Fraction(-1), None
    xs = x.coords
    if all(v == 1 for v in xs):
        return ONE, None
    denom = n - sum(xs)
    return min(xs), tuple((1 - v) / denom for v in xs)


# -- membership oracles ---------------------------------------------------------------

def smash_membership(x: SmashPoint, partition: OrderedPartition | None, L: SimplicialComplex) -> bool:
    """Is ``x`` in ``Ŵ_{I_1} ∧ ... ∧ Ŵ_{I_m}`` for ``W = (D¹, S⁰)^L``?

    ``partition=None`` means the single block ``[n]``, i.e. plain ``Ŵ``.
    """
    if x.is_basepoint:
        return True
    supp = x.support()
    blocks = partition.blocks if partition is not None else (L.vertex_mask,)
    faces = L.faces
    covered = 0
    for b in blocks:
        covered |= b
        if supp & b not in faces:
            return False
    return not supp & ~covered


def join_membership(support: int, partition: OrderedPartition, K: SimplicialComplex) -> bool:
    """Is a face with this support in ``K_{I_1} * ... * K_{I_m}``?"""
    return all(support & b in K.faces for b in partition.blocks) and not support & ~partition.ground


# -- Φ_K : Σ^n|K| -> Σ𝒬_K -------------------------------------------------------------

@dataclass(frozen=True)
class PhiValue:
    """``(s, y, (t, z))`` in ``Σ𝒬_K``, or the basepoint."""

    s: Fraction | None
    y: tuple[Fraction, ...] | None
    t: Fraction | None
    z: tuple[Fraction, ...] | None

    @property
    def is_basepoint(self) -> bool:
        return self.s is None

    @cached_property
    def _partition(self) -> OrderedPartition:
        return ordered_partition_from_sequence(range(1, len(self.y) + 1), self.y)

    def partition(self) -> OrderedPartition:
        return self._partition


PHI_BASEPOINT = PhiValue(None, None, None, None)


def _suspension_basepoint(ts: Sequence[Fraction], t: Fraction) -> bool:
    return t == -1 or any(abs(v.numerator) == v.denominator for v in ts)


def _fr(v) -> Fraction:
    return v if type(v) is Fraction else Fraction(v)


def _in_unit(v: Fraction) -> bool:
    return abs(v.numerator) <= v.denominator


def phi_eval(K: SimplicialComplex, ts: Sequence, t, z: Sequence) -> PhiValue:
    """``Φ_K(t_1..t_{n-1}, t, z) = (2β − 1, (t_1..t_{n-1}, 0), (t, z))``."""
    n = K.n
    ts = tuple(_fr(v) for v in ts)
    t = _fr(t)
    if len(ts) != n - 1:
        raise PLError(f"need {n - 1} suspension parameters")
    if not all(_in_unit(v) for v in ts) or not _in_unit(t):
        raise PLError("parameters must lie in [-1, 1]")
    zs = _bary(z, n)
    if bary_support(zs) not in K.faces:
        raise PLError("z is not a point of |K|")
    if _suspension_basepoint(ts, t):
        return PHI_BASEPOINT
    # integer numerators over a common denominator
    D = lcm(*(v.denominator for v in ts)) if ts else 1
    T = [v.numerator * (D // v.denominator) for v in ts]
    B = max((abs(v) for v in T), default=0)
    if B == 0:
        return PHI_BASEPOINT
    value = PhiValue(Fraction(2 * B - D, D), ts + (Fraction(0),), t, zs)
    groups: dict[int, int] = {0: 1 << (n - 1)}
    for i, v in enumerate(T):
        groups[v] = groups.get(v, 0) | (1 << i)
    value.__dict__["_partition"] = OrderedPartition(tuple(groups[v] for v in sorted(groups)))
    return value


def phi_membership(K: SimplicialComplex, value: PhiValue) -> bool:
    """Is the value a point of ``Σ𝒬_K``: ``supp(z) ∩ I_j ∈ K`` for every block?"""
    if value.is_basepoint or abs(value.t.numerator) == value.t.denominator:
        return True
    P = value.partition()
    if len(P) == 1:
        return False  # y on the diagonal
    return join_membership(bary_support(value.z), P, K)


def phi_membership_via_h(K: SimplicialComplex, value: PhiValue) -> bool:
    """The same membership read through ``h`` as a block condition in ``(D¹)^∧n``."""
    if value.is_basepoint:
        return True
    x = h_eval(K.n, value.t, value.z)
    return smash_membership(x, value.partition(), K)


# -- Ψ_K for neighbourly K ------------------------------------------------------------

def neighbourly_alphas(ts: Sequence[Fraction], n: int) -> list[Fraction]:
    """``α_i``: the sum of the ``⌊n/2⌋`` smallest ``|t_i − t_j|`` over ``j ≠ i``."""
    full = list(ts) + [Fraction(0)]
    k = n // 2
    out = []
    for i in range(n):
        d = sorted(abs(full[i] - full[j]) for j in range(n) if j != i)
        out.append(sum(d[:k], Fraction(0)))
    return out


def psi_neighbourly_eval(K: SimplicialComplex, ts: Sequence, x: SmashPoint,
                         check: bool = True) -> SmashPoint:
    n = K.n
    if check and not is_neighbourly(K):
        raise ComplexError("psi_neighbourly_eval needs a neighbourly complex")
    ts = tuple(v if type(v) is Fraction else Fraction(v) for v in ts)
    if len(ts) != n - 1:
        raise PLError(f"need {n - 1} suspension parameters")
    if check and not smash_membership(x, None, K):
        raise PLError("x is not a point of Ŵ")
    if x.is_basepoint or any(abs(v.numerator) == v.denominator for v in ts):
        return SmashPoint.basepoint(n)
    # integer form: t_i = T_i / D, so α_i = A_i / D and β = B / D
    D = lcm(*(v.denominator for v in ts)) if ts else 1
    T = [v.numerator * (D // v.denominator) for v in ts] + [0]
    B = max(abs(v) for v in T)
    k = n // 2
    out = []
    for i, xi in enumerate(x.coords):
        Ti = T[i]
        A = sum(sorted(abs(Ti - T[j]) for j in range(n) if j != i)[:k])
        # c = cn / cd is the slope of f_i
        if 2 * A < D:
            cn, cd = D * D - 2 * A * B, D * D
        else:
            cn, cd = D - B, D
        p, q = xi.numerator, xi.denominator
        out.append(Fraction(cn * (p + q) - cd * q, cd * q))
    return SmashPoint(n, tuple(out))


def _partition_of(values: Sequence[Fraction]) -> OrderedPartition:
    """``[k]_values`` for exact rationals, compared as integers over a common denominator."""
    D = lcm(*(v.denominator for v in values))
    groups: dict[int, int] = {}
    for i, v in enumerate(values):
        key = v.numerator * (D // v.denominator)
        groups[key] = groups.get(key, 0) | (1 << i)
    return OrderedPartition(tuple(groups[k] for k in sorted(groups)))


def psi_target_partition(ts: Sequence) -> OrderedPartition:
    """``[n]_{(t_1..t_{n-1}, 0)}``."""
    return _partition_of([_fr(v) for v in ts] + [Fraction(0)])


# -- Ψ_{L,K} for L = K ⊔ {n+1} -----------------------------------------------------

def disjoint_vertex_y(ts: Sequence, s) -> Fraction:
    s = Fraction(s)
    alpha = min([Fraction(v) for v in ts] + [Fraction(0)])
    beta = max([Fraction(v) for v in ts] + [Fraction(0)])
    if abs(s) == 1:
        return Fraction(-1)
    if alpha <= s <= beta:
        return ONE
    if s > beta:
        return 2 * (1 - s) / (1 - beta) - 1
    return 2 * (1 + s) / (1 + alpha) - 1


def psi_disjoint_vertex_eval(inner: Callable[[Sequence, SmashPoint], SmashPoint],
                             n: int, ts: Sequence, s, x: SmashPoint) -> SmashPoint:
    """``(x'_1..x'_n, y)`` with ``x' = Ψ_K(t, x)``; the new vertex ``n+1`` carries ``s``."""
    if x.is_basepoint:
        return SmashPoint.basepoint(n + 1)
    inner_val = inner(ts, x)
    y = disjoint_vertex_y(ts, s)
    if inner_val.is_basepoint or y == -1:
        return SmashPoint.basepoint(n + 1)
    return SmashPoint.make(inner_val.coords + (y,))


def disjoint_vertex_partition(ts: Sequence, s) -> OrderedPartition:
    """``[n+1]_{(t_1..t_{n-1}, 0, s)}``: vertex ``n`` keeps 0, vertex ``n+1`` gets ``s``."""
    return _partition_of([_fr(v) for v in ts] + [Fraction(0), _fr(s)])


def add_disjoint_vertex(K: SimplicialComplex) -> SimplicialComplex:
    n = K.n
    labels = tuple(range(1, n + 2))
    faces = frozenset(K.faces | {1 << n})
    return SimplicialComplex(labels, faces, name=(K.name + "+pt") if K.name else "")


# -- faithful neighbourhood homotopy ---------------------------------------------------

def faithful_homotopy_eval(t, s) -> Fraction:
    """``h_{i,t}(s)`` on ``[0, 1]`` with ``S⁰ = {0, 1}``, exactly as written."""
    t, s = Fraction(t), Fraction(s)
    if not (0 <= t <= 1 and 0 <= s <= 1):
        raise PLError("t and s must lie in [0, 1]")
    if s <= Fraction(1, 4):
        return s * (1 - t)
    if s < Fraction(3, 4):
        return s + t * (s - Fraction(1, 2))
    return s + t * (1 - s)


def faithful_homotopy_symmetric(t, x) -> Fraction:
    """The same homotopy transported to ``D¹ = [-1, 1]`` by ``x ↦ (x + 1)/2``."""
    x = Fraction(x)
    if not -1 <= x <= 1:
        raise PLError("x must lie in [-1, 1]")
    return 2 * faithful_homotopy_eval(t, (x + 1) / 2) - 1


# -- float input --------------------------------------------------------------------

def snap(values: Sequence[float], eps: float = SNAP_EPS, max_den: int = 10 ** 6) -> list[Fraction]:
    """Convert floats to rationals, merging values within ``eps`` of each other.

    Ties decide the ordered partition, so near-equal inputs are made equal
    (to the first value of the cluster), and values within ``eps`` of -1, 0, 1
    snap to those.
    """
    out: list[Fraction] = []
    anchors = [Fraction(-1), Fraction(0), Fraction(1)]
    for v in values:
        if isinstance(v, Fraction):
            out.append(v)
            continue
        hit = next((a for a in anchors if abs(float(a) - v) <= eps), None)
        if hit is None:
            hit = Fraction(v).limit_denominator(max_den)
            anchors.append(hit)
        out.append(hit)
    return out


# -- samplers -----------------------------------------------------------------------

class Sampler:
    """Seeded generator of exact rational inputs, biased towards ties and boundaries."""

    GRID = 8
    MAX_DEN = 97
    _table: dict[int, list[Fraction]] = {}

    def __init__(self, seed: int | str = 0):
        self.rng = random.Random(seed)

    @classmethod
    def _values(cls, den: int) -> list[Fraction]:
        """``k/den`` for ``-den <= k <= den``, built once per denominator."""
        vals = cls._table.get(den)
        if vals is None:
            vals = cls._table[den] = [Fraction(k, den) for k in range(-den, den + 1)]
        return vals

    def param(self, closed: bool = False) -> Fraction:
        """A rational in ``[-1, 1]`` (open interval unless ``closed``), often on a coarse grid."""
        rnd = self.rng.random
        den = self.GRID if rnd() < 0.5 else 2 + int(rnd() * (self.MAX_DEN - 1))
        vals = self._values(den)
        if closed:
            return vals[int(rnd() * (2 * den + 1))]
        return vals[1 + int(rnd() * (2 * den - 1))]

    def params(self, k: int, closed: bool = False) -> tuple[Fraction, ...]:
        if k and self.rng.random() < 0.1:
            return (Fraction(0),) * k
        return tuple(self.param(closed) for _ in range(k))

    def face(self, K: SimplicialComplex) -> int:
        facets = K.facets_masks
        f = facets[self.rng.randrange(len(facets))]
        while True:
            sub = mask(v for v in range(1, K.n + 1) if f >> (v - 1) & 1 and self.rng.random() < 0.7)
            if sub:
                return sub

    def bary(self, K: SimplicialComplex, face: int | None = None) -> tuple[Fraction, ...]:
        face = self.face(K) if face is None else face
        w = [self.rng.randint(1, 12) if face >> i & 1 else 0 for i in range(K.n)]
        if self.rng.random() < 0.2:
            top = max(w)
            w = [top if v and self.rng.random() < 0.5 else v for v in w]
        total = sum(w)
        vals = self._values(total)
        return tuple(vals[v + total] for v in w)

    def w_hat_point(self, K: SimplicialComplex) -> SmashPoint:
        """A non-basepoint of ``Ŵ``: coordinates off a face are 1."""
        face = self.face(K)
        vals = self._values(16)
        rng = self.rng
        xs = []
        for i in range(K.n):
            if face >> i & 1 and rng.random() < 0.85:
                xs.append(vals[rng.randint(1, 32)])  # -15/16 .. 1
            else:
                xs.append(ONE)
        return SmashPoint(K.n, tuple(xs))


# -- sampled verification ----------------------------------------------------------

def _jsonable(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, SmashPoint):
        return obj.to_json()
    if isinstance(obj, OrderedPartition):
        return [list(b) for b in obj.as_sets()]
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    return obj


@dataclass
class CheckTally:
    samples: int = 0
    counterexamples: int = 0
    first: dict | None = None

    def record(self, ok: bool, witness) -> None:
        self.samples += 1
        if not ok:
            self.counterexamples += 1
            if self.first is None:
                self.first = _jsonable(witness() if callable(witness) else witness)

    def to_json(self) -> dict:
        return {"samples": self.samples, "counterexamples": self.counterexamples,
                "first_counterexample": self.first}


def check_h_round_trip(n: int, samples: int, seed: int) -> CheckTally:
    """``h⁻¹ ∘ h = id`` and chart independence on rational samples of ``Σ|Δ^{n-1}|``."""
    S = Sampler(f"h:{n}:{seed}")
    simplex = SimplicialComplex.simplex(range(1, n + 1))
    tally = CheckTally()
    for _ in range(samples):
        t = S.param()
        z = S.bary(simplex)
        x = h_eval(n, t, z)
        top = max(z)
        charts = [i for i, v in enumerate(z, 1) if v == top]
        ok = all(h_eval(n, t, z, c) == x for c in charts[1:])
        ok = ok and h_inv_eval(n, x) == (t, z)
        tally.record(ok, lambda: {"t": t, "z": z, "x": x})
    return tally


def check_crucial_property(K: SimplicialComplex, samples: int, seed: int) -> CheckTally:
    """``h`` sends ``Σ|σ|`` into coordinates equal to 1 off ``σ``, hence ``Σ|K|`` into ``Ŵ``."""
    S = Sampler(f"crucial:{seed}")
    tally = CheckTally()
    for _ in range(samples):
        face = S.face(K)
        t = S.param(closed=True)
        z = S.bary(K, face)
        x = h_eval(K.n, t, z)
        ok = x.is_basepoint or all(x.coords[i] == 1 for i in range(K.n) if not face >> i & 1)
        ok = ok and smash_membership(x, None, K)
        tally.record(ok, lambda: {"face": list(members(face)), "t": t, "z": z, "x": x})
    return tally


def check_phi(K: SimplicialComplex, samples: int, seed: int) -> CheckTally:
    """``Φ_K`` lands in ``Σ𝒬_K``, read both combinatorially and through ``h``."""
    S = Sampler(f"phi:{seed}")
    tally = CheckTally()
    for _ in range(samples):
        ts = S.params(K.n - 1, closed=True)
        t = S.param(closed=True)
        z = S.bary(K)
        v = phi_eval(K, ts, t, z)
        ok = v.is_basepoint or (phi_membership(K, v) and phi_membership_via_h(K, v)
                                and v.s == 2 * max(abs(a) for a in ts) - 1)
        tally.record(ok, lambda: {"t_params": ts, "t": t, "z": z})
    return tally


def check_psi_neighbourly(K: SimplicialComplex, samples: int, seed: int) -> dict[str, CheckTally]:
    """Conditions (1) and (2) of the neighbourly ``Ψ_K`` plus basepoint behaviour."""
    if not is_neighbourly(K):
        raise ComplexError("Ψ_K is only constructed for neighbourly complexes")
    S = Sampler(f"psi:{seed}")
    cond1, cond2, base = CheckTally(), CheckTally(), CheckTally()
    zero = (Fraction(0),) * (K.n - 1)
    for _ in range(samples):
        x = S.w_hat_point(K)
        y = psi_neighbourly_eval(K, zero, x, check=False)
        cond1.record(y == x, lambda: {"x": x, "image": y})
        ts = S.params(K.n - 1)
        y = psi_neighbourly_eval(K, ts, x, check=False)
        cond2.record(smash_membership(y, psi_target_partition(ts), K),
                     lambda: {"t_params": ts, "x": x, "image": y})
        if K.n > 1:
            edge = list(ts)
            edge[S.rng.randrange(K.n - 1)] = Fraction(S.rng.choice((-1, 1)))
            yb = psi_neighbourly_eval(K, edge, x, check=False)
            base.record(yb.is_basepoint, lambda: {"t_params": edge, "x": x, "image": yb})
    return {"condition_1": cond1, "condition_2": cond2, "basepoint": base}


def check_disjoint_vertex(K: SimplicialComplex, samples: int, seed: int) -> dict[str, CheckTally]:
    """Conditions (1) and (2) for ``(K ⊔ {n+1}, K)`` built on the neighbourly ``Ψ_K``."""
    S = Sampler(f"disjoint:{seed}")
    L = add_disjoint_vertex(K)
    n = K.n

    def inner(ts, x):
        return psi_neighbourly_eval(K, ts, x, check=False)

    cond1, cond2 = CheckTally(), CheckTally()
    zero = (Fraction(0),) * (n - 1)
    for _ in range(samples):
        x = S.w_hat_point(K)
        y = psi_disjoint_vertex_eval(inner, n, zero, 0, x)
        cond1.record(not y.is_basepoint and y.coords == x.coords + (ONE,),
                     lambda: {"x": x, "image": y})
        ts = S.params(n - 1)
        s = S.param(closed=True)
        y = psi_disjoint_vertex_eval(inner, n, ts, s, x)
        cond2.record(smash_membership(y, disjoint_vertex_partition(ts, s), L),
                     lambda: {"t_params": ts, "s": s, "x": x, "image": y})
    return {"condition_1": cond1, "condition_2": cond2}


def verify_maps(K: SimplicialComplex, samples: int = 1000, seed: int = 0) -> dict:
    """Run every sampled map check that applies to ``K``; ``ok`` is False on any counterexample."""
    out: dict = {"h_round_trip": check_h_round_trip(K.n, samples, seed),
                 "crucial_property": check_crucial_property(K, samples, seed),
                 "phi": check_phi(K, samples, seed)}
    if is_neighbourly(K) and not K.has_ghosts:
        for name, tally in check_psi_neighbourly(K, samples, seed).items():
            out[f"psi_neighbourly_{name}"] = tally
        for name, tally in check_disjoint_vertex(K, samples, seed).items():
            out[f"psi_disjoint_vertex_{name}"] = tally
    report = {name: tally.to_json() for name, tally in out.items()}
    return {"ok": all(t.counterexamples == 0 for t in out.values()), "checks": report}
