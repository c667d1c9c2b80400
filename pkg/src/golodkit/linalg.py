"""Exact linear algebra over Q and F_p on sparse dict vectors.

Vectors are ``dict[key, coefficient]`` with no stored zeros.  Over Q the
coefficients are ``Fraction``; over F_p they are ints in ``range(p)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterable, Mapping

Vector = dict


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Field:
    """Q when ``p == 0``, otherwise the prime field F_p."""

    p: int = 0

    def __post_init__(self):
        if self.p != 0 and not _is_prime(self.p):
            raise ValueError(f"field characteristic must be 0 or a prime, got {self.p}")
        if self.p > 2 ** 31:
            raise ValueError("prime fields are limited to p <= 2^31")

    @classmethod
    def parse(cls, spec) -> "Field":
        if isinstance(spec, Field):
            return spec
        s = str(spec).strip().upper()
        if s in ("Q", "QQ", "0"):
            return cls(0)
        s = s.removeprefix("F_").removeprefix("F").removeprefix("GF")
        return cls(int(s))

    @property
    def name(self) -> str:
        return "Q" if self.p == 0 else f"F{self.p}"

    def __str__(self) -> str:
        return self.name

    def __call__(self, x):
        if self.p:
            if isinstance(x, Fraction):
                return x.numerator * pow(x.denominator, -1, self.p) % self.p
            return int(x) % self.p
        return Fraction(x)

    def inv(self, x):
        if self.p:
            return pow(x, -1, self.p)
        return 1 / Fraction(x)

    def to_json(self, x):
        if self.p:
            return int(x)
        x = Fraction(x)
        return int(x) if x.denominator == 1 else str(x)


def axpy(field: Field, y: Vector, a, x: Mapping) -> None:
    """In place ``y += a * x``."""
    p = field.p
    for k, v in x.items():
        c = y.get(k, 0) + a * v
        if p:
            c %= p
        if c:
            y[k] = c
        else:
            y.pop(k, None)


def scale(field: Field, a, x: Mapping) -> Vector:
    p = field.p
    if p:
        return {k: a * v % p for k, v in x.items() if a * v % p}
    return {k: a * v for k, v in x.items() if a * v}


def combine(field: Field, terms: Iterable[tuple[object, Mapping]]) -> Vector:
    out: Vector = {}
    for a, x in terms:
        axpy(field, out, a, x)
    return out


class Reducer:
    """Incremental echelon basis that remembers how rows were built.

    Each vector passed to :meth:`add` gets an input index.  ``reduce(v)``
    returns ``(residual, combo)`` with ``v = residual + Σ combo[j]·input_j``.
    Pivot columns are compared with ``sort_key`` so any hashable keys work.
    """

    def __init__(self, field: Field, sort_key=None):
        self.field = field
        self.key = sort_key or (lambda k: k)
        self.rows: dict[Hashable, tuple[Vector, Vector]] = {}
        self._order: list[Hashable] = []
        self.n_inputs = 0
        self.independent: list[int] = []

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v: Mapping) -> tuple[Vector, Vector]:
        F = self.field
        res = dict(v)
        combo: Vector = {}
        if not res:
            return res, combo
        for piv in self._order:
            c = res.get(piv)
            if c is None:
                continue
            row, rcombo = self.rows[piv]
            axpy(F, res, -c if not F.p else (F.p - c), row)
            axpy(F, combo, c, rcombo)
        return res, combo

    def add(self, v: Mapping) -> bool:
        """Insert ``v``; return whether it was independent of earlier inputs."""
        F = self.field
        idx = self.n_inputs
        self.n_inputs += 1
        res, combo = self.reduce(v)
        if not res:
            return False
        # combo now expresses v - res; the new row is res = v - Σ combo
        rcombo = scale(F, -1 if not F.p else F.p - 1, combo)
        rcombo[idx] = F(1)
        piv = min(res, key=self.key)
        inv = F.inv(res[piv])
        row = scale(F, inv, res)
        rcombo = scale(F, inv, rcombo)
        # keep rows fully reduced against the new pivot so reduce() can run in one pass
        for q in self._order:
            r, rc = self.rows[q]
            c = r.get(piv)
            if c is not None:
                neg = -c if not F.p else F.p - c
                axpy(F, r, neg, row)
                axpy(F, rc, neg, rcombo)
        self.rows[piv] = (row, rcombo)
        self._order.append(piv)
        self.independent.append(idx)
        return True

    def contains(self, v: Mapping) -> bool:
        return not self.reduce(v)[0]


def kernel_and_image(field: Field, domain: list, images: list[Mapping], sort_key=None):
    """Kernel basis (as vectors over ``domain``) and image basis of a linear map.

    ``images[i]`` is the image of the basis vector ``domain[i]``.
    """
    red = Reducer(field, sort_key)
    kernel = []
    image_basis = []
    added = []  # reducer input index -> domain index
    for i, img in enumerate(images):
        res, combo = red.reduce(img)
        if res:
            red.add(img)
            added.append(i)
            image_basis.append(dict(img))
        else:
            kv = {domain[i]: field(1)}
            for j, c in combo.items():
                axpy(field, kv, -c if not field.p else field.p - c, {domain[added[j]]: 1})
            kernel.append(kv)
    return kernel, image_basis


def rank(field: Field, vectors: Iterable[Mapping], sort_key=None) -> int:
    red = Reducer(field, sort_key)
    for v in vectors:
        red.add(v)
    return len(red)


class Subquotient:
    """``Z / B`` for a cycle space ``Z`` (given by a basis) and ``B ⊆ Z``.

    ``reps`` holds representatives of a basis of the quotient and
    ``coords(z)`` gives the coordinates of the class of ``z ∈ Z``.
    """

    def __init__(self, field: Field, cycles: list[Mapping], boundaries: list[Mapping], sort_key=None):
        self.field = field
        self._red = Reducer(field, sort_key)
        for b in boundaries:
            self._red.add(b)
        self.boundary_rank = len(self._red)
        self._first_rep = self._red.n_inputs
        self.reps: list[Vector] = []
        self._rep_inputs: list[int] = []
        for z in cycles:
            idx = self._red.n_inputs
            if self._red.add(z):
                self.reps.append(dict(z))
                self._rep_inputs.append(idx)

    @property
    def dim(self) -> int:
        return len(self.reps)

    def coords(self, z: Mapping) -> list:
        """Coordinates of ``[z]`` in the ``reps`` basis; ``z`` must be a cycle."""
        res, combo = self._red.reduce(z)
        if res:
            raise ValueError("vector is not in the cycle space")
        return [combo.get(i, self.field(0)) for i in self._rep_inputs]

    def is_boundary(self, z: Mapping) -> bool:
        return not any(self.coords(z))

    def contains(self, z: Mapping) -> bool:
        return not self._red.reduce(z)[0]
