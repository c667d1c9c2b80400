"""Ordered set partitions, the complex 𝒦_n of ordered partitions of [n], and τ_t.

𝒦_n has the length-m ordered partitions of [n] as its (m-2)-faces and is
realised here as a simplicial complex whose vertices are the length-2
partitions ``(A, [n] - A)``, labelled by the bitmask of ``A``.  A face is the
set of its prefix partitions, i.e. a chain ``A_1 ⊂ A_2 ⊂ ...``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import permutations
from math import lcm
from typing import Iterator, Sequence

from .complexes import SimplicialComplex, mask, members, popcount
from .homology import reduced_homology


class PartitionError(ValueError):
    pass


class Opaque:
    """A value known only through its order relative to rationals.

    ``Opaque(lower, upper)`` stands for some real strictly inside
    ``(lower, upper)`` (``None`` meaning unbounded) that equals no rational
    we compare it against, e.g. π as ``Opaque(3, 4)``.
    """

    def __init__(self, lower=None, upper=None, name: str = "x"):
        self.lower = None if lower is None else Fraction(lower)
        self.upper = None if upper is None else Fraction(upper)
        self.name = name

    def _cmp(self, other) -> int:
        if other is self:
            return 0
        if isinstance(other, Opaque):
            if self.upper is not None and other.lower is not None and self.upper <= other.lower:
                return -1
            if self.lower is not None and other.upper is not None and self.lower >= other.upper:
                return 1
            raise PartitionError(f"cannot order opaque values {self.name} and {other.name}")
        o = Fraction(other)
        if self.upper is not None and self.upper <= o:
            return -1
        if self.lower is not None and self.lower >= o:
            return 1
        raise PartitionError(f"cannot order {self.name} against {o}")

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return id(self)

    def __repr__(self):
        return self.name


def _sort_distinct(values) -> list:
    out = []
    for v in values:
        if not any(v is u or (not isinstance(v, Opaque) and not isinstance(u, Opaque) and v == u)
                   for u in out):
            out.append(v)
    # insertion sort: Opaque only supports comparisons, not keys
    for i in range(1, len(out)):
        j = i
        while j > 0 and out[j] < out[j - 1]:
            out[j], out[j - 1] = out[j - 1], out[j]
            j -= 1
    return out


@dataclass(frozen=True)
class OrderedPartition:
    """Blocks ``(I_1, ..., I_m)`` as bitmasks: disjoint, non-empty, covering."""

    blocks: tuple[int, ...]

    def __post_init__(self):
        if not self.blocks:
            raise PartitionError("an ordered partition has at least one block")
        seen = 0
        for b in self.blocks:
            if not b:
                raise PartitionError("blocks must be non-empty")
            if b & seen:
                raise PartitionError("blocks must be disjoint")
            seen |= b

    @classmethod
    def of(cls, *blocks: Sequence[int]) -> "OrderedPartition":
        return cls(tuple(mask(b) for b in blocks))

    @property
    def ground(self) -> int:
        out = 0
        for b in self.blocks:
            out |= b
        return out

    def __len__(self) -> int:
        return len(self.blocks)

    def as_sets(self) -> tuple[tuple[int, ...], ...]:
        return tuple(members(b) for b in self.blocks)

    def __repr__(self) -> str:
        return "(" + ", ".join("{" + ",".join(map(str, members(b))) + "}" for b in self.blocks) + ")"

    def block_of(self, j: int) -> int:
        """1-based index of the block containing vertex ``j``."""
        bit = 1 << (j - 1)
        for k, b in enumerate(self.blocks, 1):
            if b & bit:
                return k
        raise PartitionError(f"{j} not in the ground set")

    def prefix_vertices(self) -> list[int]:
        """Vertices of the face in 𝒦_n: masks of ``I_1 ∪ ... ∪ I_i`` for ``i < m``."""
        out, acc = [], 0
        for b in self.blocks[:-1]:
            acc |= b
            out.append(acc)
        return out

    def face_mask(self) -> int:
        return mask(self.prefix_vertices())


def ordered_partition_from_sequence(I: Sequence[int] | int, S: Sequence) -> OrderedPartition:
    """Group the elements of ``I`` by equal values of ``S``, blocks by increasing value."""
    elems = members(I) if isinstance(I, int) else tuple(sorted(I))
    if len(elems) != len(S):
        raise PartitionError(f"sequence length {len(S)} != |I| = {len(elems)}")
    if not any(isinstance(s, Opaque) for s in S):
        # compare as integers over a common denominator
        fr = [s if type(s) is Fraction else Fraction(s) for s in S]
        D = lcm(*(s.denominator for s in fr)) if fr else 1
        groups: dict = {}
        for e, s in zip(elems, fr):
            key = s.numerator * (D // s.denominator)
            groups[key] = groups.get(key, 0) | (1 << (e - 1))
        return OrderedPartition(tuple(groups[v] for v in sorted(groups)))
    distinct = _sort_distinct(S)
    blocks = []
    for v in distinct:
        blocks.append(mask(e for e, s in zip(elems, S)
                           if s is v or (not isinstance(s, Opaque) and not isinstance(v, Opaque) and s == v)))
    return OrderedPartition(tuple(blocks))


def face_map(P: OrderedPartition, i: int) -> OrderedPartition:
    """``d_i``: merge blocks ``i`` and ``i + 1`` (1-based)."""
    m = len(P)
    if not 1 <= i <= m - 1:
        raise PartitionError(f"face index {i} outside 1..{m - 1}")
    b = P.blocks
    return OrderedPartition(b[: i - 1] + (b[i - 1] | b[i],) + b[i + 1:])


def ordered_partitions(ground: int, m: int | None = None) -> Iterator[OrderedPartition]:
    """All ordered partitions of ``ground`` (optionally of length ``m``)."""
    def rec(rest: int, k: int | None):
        if not rest:
            if k in (None, 0):
                yield ()
            return
        if k == 0:
            return
        s = rest
        while s:
            for tail in rec(rest & ~s, None if k is None else k - 1):
                yield (s,) + tail
            s = (s - 1) & rest

    for blocks in rec(ground, m):
        yield OrderedPartition(blocks)


class PermutohedralComplex:
    """𝒦_n as a delta set over ordered partitions and as a simplicial complex."""

    def __init__(self, n: int):
        if n < 2:
            raise PartitionError("𝒦_n needs n >= 2")
        self.n = n
        self.ground = (1 << n) - 1

    def faces_of_length(self, m: int) -> list[OrderedPartition]:
        return sorted(ordered_partitions(self.ground, m), key=lambda P: P.as_sets())

    @cached_property
    def simplicial(self) -> SimplicialComplex:
        verts = tuple(range(1, self.ground))
        top = [P.prefix_vertices() for P in ordered_partitions(self.ground, self.n)]
        return SimplicialComplex.from_facets(verts, top, name=f"K_{self.n}")

    def face_of(self, P: OrderedPartition) -> int:
        return P.face_mask()

    def partition_of_face(self, face: int) -> OrderedPartition:
        """Inverse of ``face_of``: read the blocks off the chain of prefix sets."""
        chain = sorted(members(face), key=popcount)
        blocks, prev = [], 0
        for A in chain + [self.ground]:
            if A & prev != prev or A == prev:
                raise PartitionError("not a chain of subsets")
            blocks.append(A & ~prev)
            prev = A
        return OrderedPartition(tuple(blocks))

    def f_vector(self) -> list[int]:
        """Number of length-m partitions for m = 2..n (faces of dim 0..n-2)."""
        K = self.simplicial
        return [len(K.faces_of_dim(k)) for k in range(0, self.n - 1)]

    def is_pseudomanifold(self) -> bool:
        K = self.simplicial
        count: dict[int, int] = {}
        for top in K.faces_of_dim(self.n - 2):
            m = top
            while m:
                low = m & -m
                m &= m - 1
                count[top & ~low] = count.get(top & ~low, 0) + 1
        ridges = K.faces_of_dim(self.n - 3)
        return all(count.get(r, 0) == 2 for r in ridges)


def build_Kn(n: int) -> PermutohedralComplex:
    return PermutohedralComplex(n)


@dataclass
class SphereCheck:
    n: int
    passed: bool
    homology: dict
    pseudomanifold: bool
    f_vector: list[int]
    expected_f_vector: list[int]

    def to_json(self) -> dict:
        return {"n": self.n, "passed": self.passed, "homology": self.homology,
                "pseudomanifold": self.pseudomanifold, "f_vector": self.f_vector,
                "expected_f_vector": self.expected_f_vector}


def verify_sphere(n: int, max_n: int = 7) -> SphereCheck:
    """Check 𝒦_n has the integral homology of S^{n-2} and is a pseudomanifold."""
    from .catalog import stirling2
    from math import factorial

    if not 2 <= n <= max_n:
        raise PartitionError(f"verify_sphere supports 2 <= n <= {max_n}")
    Kn = PermutohedralComplex(n)
    H = reduced_homology(Kn.simplicial)
    sphere = {n - 2: 1}
    ok_h = H.nonzero() == sphere and not any(H.torsion.values())
    fv = Kn.f_vector()
    expected = [factorial(m) * stirling2(n, m) for m in range(2, n + 1)]
    pm = Kn.is_pseudomanifold()
    return SphereCheck(n, ok_h and pm and fv == expected, H.describe(), pm, fv, expected)


# -- τ_t : |𝒦_n| -> U_t ---------------------------------------------------------

@dataclass(frozen=True)
class KnPoint:
    """``γ = Σ s_i 𝒮_i`` on the face of partition ``face`` (weights sum to 1)."""

    face: OrderedPartition
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.weights) != len(self.face) - 1:
            raise PartitionError("need one weight per prefix vertex")
        if any(w < 0 for w in self.weights) or sum(self.weights) != 1:
            raise PartitionError("weights must be non-negative and sum to 1")

    def canonical(self) -> "KnPoint":
        """Same point on the smallest face containing it (drop zero weights)."""
        P, w = self.face, list(self.weights)
        i = 0
        while i < len(w):
            if w[i] == 0:
                P = face_map(P, i + 1)
                del w[i]
            else:
                i += 1
        return KnPoint(P, tuple(w))


def _check_t(t) -> Fraction:
    t = Fraction(t)
    if not 0 < t < 1:
        raise PartitionError("t must lie in (0, 1)")
    return t


def tau(t, gamma: KnPoint, n: int) -> tuple[Fraction, ...]:
    t = _check_t(t)
    P = gamma.face
    cum = [Fraction(0)]
    for s in gamma.weights:
        cum.append(cum[-1] + s)
    tj = [cum[P.block_of(j) - 1] for j in range(1, n + 1)]
    diffs = [tj[j] - tj[n - 1] for j in range(n - 1)]
    beta = max(abs(d) for d in diffs)
    return tuple(t / beta * d for d in diffs)


def tau_inv(t, point: Sequence, n: int) -> KnPoint:
    t = _check_t(t)
    pts = [Fraction(x) for x in point]
    if len(pts) != n - 1:
        raise PartitionError(f"expected {n - 1} coordinates")
    if max(abs(x) for x in pts) != t:
        raise PartitionError("point is not in U_t")
    seq = pts + [Fraction(0)]
    P = ordered_partition_from_sequence(range(1, n + 1), seq)
    vals = sorted(set(seq))
    span = vals[-1] - vals[0]
    return KnPoint(P, tuple((b - a) / span for a, b in zip(vals, vals[1:])))


def count_ordered_partitions(n: int, m: int) -> int:
    return sum(1 for _ in ordered_partitions((1 << n) - 1, m))


def all_permutations(n: int):
    return permutations(range(1, n + 1))
