"""Combinatorics of labelled particle configurations.

Labels are pairs ``(i, value)`` with ``i`` a summand index in ``[n]`` and
``value ∈ D¹ = [-1, 1]``.  For decisions only the class of the value matters:
``-1`` (basepoint), ``+1`` or interior.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from typing import Callable, Iterable, Sequence

from .complexes import SimplicialComplex, mask

BASE, INTERIOR, TOP = "-1", "interior", "+1"
SYMBOLS = (BASE, INTERIOR, TOP)


class ConfigurationError(ValueError):
    pass


def symbol(value) -> str:
    if value in SYMBOLS:
        return value
    v = Fraction(value)
    if not -1 <= v <= 1:
        raise ConfigurationError(f"label value {v} outside [-1, 1]")
    if v == -1:
        return BASE
    return TOP if v == 1 else INTERIOR


def is_represented(labels: Iterable[tuple[int, object]], K: SimplicialComplex, k: int) -> bool:
    """Can the labels be the coordinates of one point of ``W_k ⊆ (D¹, S⁰)^K``?

    Needs distinct indices, the interior coordinates spanning a face, and at
    most ``k`` coordinates away from the basepoint.
    """
    labels = list(labels)
    idx = [i for i, _ in labels]
    if len(set(idx)) != len(idx):
        return False
    syms = [symbol(v) for _, v in labels]
    interior = mask(i for i, s in zip(idx, syms) if s == INTERIOR)
    if interior not in K.faces:
        return False
    return sum(s != BASE for s in syms) <= k


def corrupted_oracle(labels, K, k):
    """Mutant oracle with the bound off by one, for negative tests."""
    labels = list(labels)
    idx = [i for i, _ in labels]
    if len(set(idx)) != len(idx):
        return False
    syms = [symbol(v) for _, v in labels]
    if mask(i for i, s in zip(idx, syms) if s == INTERIOR) not in K.faces:
        return False
    return sum(s != BASE for s in syms) < k


def label_multisets(n: int, m: int):
    alphabet = [(i, s) for i in range(1, n + 1) for s in SYMBOLS]
    return combinations_with_replacement(alphabet, m)


@dataclass
class PropertyAResult:
    holds: bool
    checked: int
    witness: tuple | None = None

    def __bool__(self):
        return self.holds


def property_A_check(K: SimplicialComplex, m: int, k: int,
                     oracle: Callable = is_represented) -> PropertyAResult:
    """A size-``m`` label multiset is represented in ``W_k`` iff it is in ``W_m``."""
    n = K.n
    if not 0 <= m < k <= n:
        raise ConfigurationError(f"need 0 <= m < k <= n, got m={m}, k={k}, n={n}")
    checked = 0
    for ms in label_multisets(n, m):
        checked += 1
        if oracle(ms, K, k) != oracle(ms, K, m):
            return PropertyAResult(False, checked, ms)
    return PropertyAResult(True, checked)


def mn_partitions(m: int, n: int) -> list[tuple[int, ...]]:
    """Compositions of ``m`` into ``n`` non-negative parts, lexicographically descending."""
    if m < 0 or n < 0:
        raise ConfigurationError("m and n must be non-negative")
    if n == 0:
        return [()] if m == 0 else []
    out = []
    for first in range(m, -1, -1):
        for rest in mn_partitions(m - first, n - 1):
            out.append((first,) + rest)
    return out


# -- configurations ------------------------------------------------------------------

@dataclass(frozen=True)
class Particle:
    position: Fraction
    index: int
    value: Fraction


@dataclass(frozen=True)
class LabeledConfiguration:
    particles: tuple[Particle, ...]

    @classmethod
    def make(cls, items: Iterable[tuple]) -> "LabeledConfiguration":
        """From ``(position, index, value)`` triples; basepoint-labelled particles vanish."""
        ps = []
        for pos, i, v in items:
            p = Particle(Fraction(pos), int(i), Fraction(v))
            if symbol(p.value) != BASE:
                ps.append(p)
        seen = set()
        for p in ps:
            key = (p.index, p.position)
            if key in seen:
                raise ConfigurationError(
                    f"two particles of summand {p.index} collide at {p.position}")
            seen.add(key)
        return cls(tuple(ps))

    def __len__(self):
        return len(self.particles)


def particle_order(w: LabeledConfiguration) -> list[int]:
    """Rank ``σ(y)`` in ``1..m`` for each particle: by summand index, then position."""
    keys = [(p.index, p.position) for p in w.particles]
    if len(set(keys)) != len(keys):
        raise ConfigurationError("particles in one summand must have distinct positions")
    order = sorted(range(len(keys)), key=keys.__getitem__)
    ranks = [0] * len(keys)
    for r, j in enumerate(order, 1):
        ranks[j] = r
    return ranks


def subset_key(ranks: Sequence[int], S: Iterable[int]) -> int:
    """Order key of a subset (given by particle positions in ``w``): ``Σ 2^(σ(y)-1)``."""
    return sum(1 << (ranks[j] - 1) for j in S)


def subset_key_decimal(ranks: Sequence[int], S: Iterable[int]) -> int:
    """The same order written as ``Σ 10^σ(y)``."""
    return sum(10 ** ranks[j] for j in S)


def subsets(m: int):
    for r in range(m + 1):
        yield from combinations(range(m), r)


def eta(w: LabeledConfiguration, S: Iterable[int], f: Callable) -> Fraction:
    """``η_{w,S} = Σ_{S' ⪯ S} Π_{y∈S'} f(label(y))``."""
    ranks = particle_order(w)
    weights = []
    for p in w.particles:
        v = Fraction(f((p.index, p.value)))
        if v <= 0:
            raise ConfigurationError(f"weight must be positive, got {v}")
        weights.append(v)
    key = subset_key(ranks, S)
    total = Fraction(0)
    for T in subsets(len(w)):
        if subset_key(ranks, T) <= key:
            prod = Fraction(1)
            for j in T:
                prod *= weights[j]
            total += prod
    return total


def eta_all(w: LabeledConfiguration, f: Callable) -> list[tuple[int, Fraction]]:
    """``(key, η)`` for every subset, listed in ≺ order (a running sum)."""
    ranks = particle_order(w)
    weights = [Fraction(f((p.index, p.value))) for p in w.particles]
    if any(v <= 0 for v in weights):
        raise ConfigurationError("weights must be positive")
    by_key = []
    for T in subsets(len(w)):
        prod = Fraction(1)
        for j in T:
            prod *= weights[j]
        by_key.append((subset_key(ranks, T), prod))
    by_key.sort()
    out, acc = [], Fraction(0)
    for key, prod in by_key:
        acc += prod
        out.append((key, acc))
    return out


def eta_strictly_increasing(w: LabeledConfiguration, f: Callable) -> bool:
    vals = [v for _, v in eta_all(w, f)]
    return all(a < b for a, b in zip(vals, vals[1:]))


def order_is_hereditary(w: LabeledConfiguration) -> bool:
    """For every sub-configuration, its own subset order is the restricted one."""
    ranks = particle_order(w)
    m = len(w)
    for sub in subsets(m):
        sw = LabeledConfiguration(tuple(w.particles[j] for j in sub))
        sranks = particle_order(sw)
        local = list(subsets(len(sub)))
        own = sorted(local, key=lambda T: subset_key(sranks, T))
        inherited = sorted(local, key=lambda T: subset_key(ranks, [sub[j] for j in T]))
        if own != inherited:
            return False
    return True
