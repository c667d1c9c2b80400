"""Independent reference computations used to freeze and cross-check values.

Nothing here imports the package's linear algebra: ranks come from plain
dense Gaussian elimination over Fraction or Z/p.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations


def dense_rank(rows, p=0):
    M = [[Fraction(x) if not p else x % p for x in r] for r in rows]
    if not M:
        return 0
    ncols = len(M[0])
    rank = 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(M)) if M[r][c]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = (1 / M[rank][c]) if not p else pow(M[rank][c], -1, p)
        for r in range(len(M)):
            if r != rank and M[r][c]:
                f = M[r][c] * inv
                M[r] = [(a - f * b) if not p else (a - f * b) % p for a, b in zip(M[r], M[rank])]
        rank += 1
    return rank


def faces_by_size(vertices, facets):
    """All faces (sorted tuples) of the complex generated by ``facets``, grouped by size."""
    out = {}
    for f in facets:
        for k in range(len(f) + 1):
            for s in combinations(sorted(f), k):
                out.setdefault(k, set()).add(s)
    if not facets:
        return {}
    return {k: sorted(v) for k, v in out.items()}


def reduced_betti(vertices, facets, p=0):
    """Reduced Betti numbers ``{degree: dim}`` via ranks of the boundary matrices."""
    F = faces_by_size(vertices, facets)
    if not F:
        return {}
    top = max(F)
    ranks = {}
    for k in range(1, top + 1):
        rows_index = {s: i for i, s in enumerate(F[k - 1])}
        mat = []
        for s in F[k]:
            row = [0] * len(F[k - 1])
            for j in range(len(s)):
                row[rows_index[s[:j] + s[j + 1:]]] = (-1) ** j
            mat.append(row)
        ranks[k] = dense_rank(mat, p)
    out = {}
    for k in range(0, top + 1):
        d = len(F[k]) - ranks.get(k, 0) - ranks.get(k + 1, 0)
        if d:
            out[k - 1] = d
    return out


def full_subcomplex_facets(facets, I):
    I = set(I)
    subs = set()
    for f in facets:
        subs.add(tuple(v for v in f if v in I))
    # keep maximal ones only
    return [s for s in subs if not any(set(s) < set(t) for t in subs)]


def hochster_poincare(n, facets, p=0):
    """Total-degree dims of the moment-angle cohomology via full subcomplexes."""
    out = {}
    for k in range(n + 1):
        for I in combinations(range(1, n + 1), k):
            b = reduced_betti(I, full_subcomplex_facets(facets, I), p) if I else {-1: 1}
            for d, r in b.items():
                out[k + 1 + d] = out.get(k + 1 + d, 0) + r
    return dict(sorted(out.items()))


def brute_force_kernel_dim(images, domain_size, keys, p=0):
    """``domain_size - rank`` of the matrix whose columns are ``images``."""
    rows = [[img.get(k, 0) for k in keys] for img in images]
    return domain_size - dense_rank(rows, p)
