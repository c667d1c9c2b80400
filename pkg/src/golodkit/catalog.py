"""Enumerate simplicial complexes on ``[n]`` up to isomorphism.

A complex is encoded as the integer ``Σ 2^face`` over its face bitmasks;
the canonical form is the minimum of that code over all vertex permutations.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import permutations

import numpy as np

from .complexes import SimplicialComplex, is_neighbourly, popcount

MAX_CATALOG_N = 6


def _apply_perm(s: int, perm: tuple[int, ...]) -> int:
    out = 0
    for k, img in enumerate(perm):
        if s >> k & 1:
            out |= 1 << img
    return out


@lru_cache(maxsize=None)
def _perm_tables(n: int) -> np.ndarray:
    """``tables[π, b, byte]`` = image code of the bits in byte ``b`` of a family code."""
    nsub = 1 << n
    nbytes = max(1, nsub // 8)
    perms = list(permutations(range(n)))
    tables = np.zeros((len(perms), nbytes, 256), dtype=np.uint64)
    for pi, perm in enumerate(perms):
        img = [_apply_perm(s, perm) for s in range(nsub)]
        for b in range(nbytes):
            for byte in range(256):
                code = 0
                for k in range(8):
                    s = 8 * b + k
                    if byte >> k & 1 and s < nsub:
                        code |= 1 << img[s]
                tables[pi, b, byte] = code
    return tables


def canonical_codes(codes, n: int) -> np.ndarray:
    """Vectorised canonical form of family codes on ``n <= 6`` vertices."""
    if n > MAX_CATALOG_N:
        raise ValueError(f"canonical forms are only tabulated for n <= {MAX_CATALOG_N}")
    arr = np.asarray([int(c) for c in codes], dtype=np.uint64)
    if n == 0:
        return arr
    tables = _perm_tables(n)
    best = np.full(arr.shape, np.iinfo(np.uint64).max, dtype=np.uint64)
    byte_idx = [((arr >> np.uint64(8 * b)) & np.uint64(255)).astype(np.intp)
                for b in range(tables.shape[1])]
    for pi in range(tables.shape[0]):
        img = np.zeros_like(arr)
        for b, idx in enumerate(byte_idx):
            img |= tables[pi, b][idx]
        np.minimum(best, img, out=best)
    return best


def canonical_code(K: SimplicialComplex) -> int:
    from .complexes import standardize

    S = standardize(K)
    return int(canonical_codes([family_code(S)], S.n)[0])


def family_code(K: SimplicialComplex) -> int:
    return sum(1 << f for f in K.faces)


def complex_from_code(code: int, n: int, name: str = "") -> SimplicialComplex:
    faces = frozenset(s for s in range(1 << n) if code >> s & 1)
    return SimplicialComplex(tuple(range(1, n + 1)), faces, name)


def downsets(n: int, forced_size: int = -1) -> list[int]:
    """Codes of all non-void downward-closed families on ``[n]``.

    Every subset with at most ``forced_size`` elements is forced in, which
    cuts the search down to the ``forced_size``-neighbourly complexes.
    """
    subsets = sorted(range(1 << n), key=lambda s: (popcount(s), s))
    forced = 0
    free = []
    for s in subsets:
        if popcount(s) <= forced_size:
            forced |= 1 << s
        else:
            free.append(s)
    out = []
    bits = [[s & ~(1 << k) for k in range(n) if s >> k & 1] for s in range(1 << n)]

    def rec(i: int, code: int):
        if i == len(free):
            out.append(code)
            return
        s = free[i]
        rec(i + 1, code)
        if all(code >> t & 1 for t in bits[s]) and (s == 0 or code & 1):
            rec(i + 1, code | (1 << s))

    rec(0, forced)
    return [c for c in out if c]


def catalog(max_n: int, *, min_n: int = 1, ghosts: bool = False,
            neighbourly_only: bool = False) -> list[SimplicialComplex]:
    """Non-void complexes on ``[n]`` for ``min_n <= n <= max_n``, one per isomorphism class.

    Ordered by ``n`` then canonical code, so the listing is deterministic.
    """
    out = []
    for n in range(min_n, max_n + 1):
        if n > MAX_CATALOG_N or (n == MAX_CATALOG_N and not neighbourly_only):
            raise ValueError(f"full catalog only up to n = {MAX_CATALOG_N - 1}; "
                             f"neighbourly catalog up to n = {MAX_CATALOG_N}")
        codes = downsets(n, n // 2 if neighbourly_only else -1)
        canon = sorted(set(int(c) for c in canonical_codes(codes, n)))
        for k, code in enumerate(canon):
            K = complex_from_code(code, n, name=f"n{n}-{k:04d}")
            if not ghosts and K.has_ghosts:
                continue
            if neighbourly_only and not is_neighbourly(K):
                continue
            out.append(K)
    return out


def count_labeled(n: int) -> int:
    """Number of downward-closed families on ``[n]`` including the void one."""
    return len(downsets(n)) + 1


def stirling2(n: int, k: int) -> int:
    @lru_cache(maxsize=None)
    def S(a: int, b: int) -> int:
        if a == b:
            return 1
        if b == 0 or b > a:
            return 0
        return b * S(a - 1, b) + S(a - 1, b - 1)
    return S(n, k)

