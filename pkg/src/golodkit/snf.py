"""Smith normal form over the integers.

``smith_normal_form`` returns the full decomposition ``M = U·D·V`` for
small dense matrices.  ``invariant_factors`` only returns the nonzero
diagonal of ``D`` and works on sparse rows, which is what homology needs.
"""
from __future__ import annotations

from math import gcd


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A, B):
    if not A:
        return []
    cols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(cols)] for i in range(len(A))]


def determinant(A) -> int:
    """Integer determinant by fraction-free (Bareiss) elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [row[:] for row in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for r in range(k + 1, n):
                if M[r][k]:
                    M[k], M[r] = M[r], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def smith_normal_form(M):
    """Return ``(U, D, V)`` with ``M == U @ D @ V``, ``U``, ``V`` unimodular.

    ``D`` is diagonal with nonnegative entries ``d1 | d2 | ...``.  Pivots are
    chosen with minimal absolute value to limit coefficient growth.
    """
    m = len(M)
    n = len(M[0]) if m else 0
    A = [list(map(int, row)) for row in M]
    U = identity(m)   # invariant: M == U·A·V
    V = identity(n)

    # Row op A <- E·A forces U <- U·E^{-1} (a column op on U); column op A <- A·F forces V <- F^{-1}·V.
    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        for row in U:
            row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        V[i], V[j] = V[j], V[i]

    def add_row(src, dst, c):  # row dst += c * row src
        if c:
            A[dst] = [a + c * b for a, b in zip(A[dst], A[src])]
            for row in U:
                row[src] -= c * row[dst]

    def add_col(src, dst, c):  # col dst += c * col src
        if c:
            for row in A:
                row[dst] += c * row[src]
            V[src] = [a - c * b for a, b in zip(V[src], V[dst])]

    def negate_row(i):
        A[i] = [-a for a in A[i]]
        for row in U:
            row[i] = -row[i]

    t = 0
    while t < min(m, n):
        entries = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(t, i, -(A[i][t] // A[t][t]))
                    if A[i][t]:
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(t, j, -(A[t][j] // A[t][t]))
                    if A[t][j]:
                        done = False
            if done:
                # divisibility of the remaining block by the pivot
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if A[i][j] % A[t][t]), None)
                if bad is None:
                    break
                add_row(bad[0], t, 1)
                continue
            # move the smallest remaining entry in the pivot row/column to (t, t)
            cand = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
            cand += [(abs(A[t][j]), t, j) for j in range(t, n) if A[t][j]]
            _, i, j = min(cand)
            swap_rows(t, i)
            swap_cols(t, j)
        if A[t][t] < 0:
            negate_row(t)
        t += 1
    return U, A, V


def is_smith_form(D) -> bool:
    diag = []
    for i, row in enumerate(D):
        for j, x in enumerate(row):
            if i != j and x:
                return False
            if i == j:
                diag.append(x)
    if any(x < 0 for x in diag):
        return False
    nz = [x for x in diag if x]
    if diag[: len(nz)] != nz:
        return False
    return all(b % a == 0 for a, b in zip(nz, nz[1:]))


def invariant_factors(rows: list[dict[int, int]]) -> list[int]:
    """Nonzero invariant factors of a sparse integer matrix, in divisibility order.

    ``rows`` maps column index to entry.  Unit pivots are eliminated sparsely
    (lowest row weight first); whatever remains is handed to the dense SNF.
    """
    R = {i: dict(r) for i, r in enumerate(rows) if r}
    cols: dict[int, set[int]] = {}
    for i, r in R.items():
        for j in r:
            cols.setdefault(j, set()).add(i)
    units = 0
    while True:
        best = None
        for i, r in R.items():
            if best is not None and len(r) >= best[0]:
                continue
            for j, v in r.items():
                if v == 1 or v == -1:
                    best = (len(r), i, j, len(cols[j]))
                    break
        if best is None:
            break
        _, i, j, _ = best
        prow = R.pop(i)
        pv = prow[j]
        for k in prow:
            cols[k].discard(i)
        for r_i in list(cols.pop(j)):
            row = R[r_i]
            c = row[j] * pv  # pv = ±1 so this is the exact multiplier
            for k, v in prow.items():
                nv = row.get(k, 0) - c * v
                if nv:
                    if k not in row:
                        cols[k].add(r_i)
                    row[k] = nv
                else:
                    if k in row:
                        del row[k]
                        if k != j:
                            cols[k].discard(r_i)
            if not row:
                del R[r_i]
        for k in prow:
            if k != j and not cols.get(k, True):
                cols.pop(k, None)
        units += 1
    if not R:
        return [1] * units
    col_ids = sorted({j for r in R.values() for j in r})
    pos = {j: k for k, j in enumerate(col_ids)}
    dense = []
    for r in R.values():
        row = [0] * len(col_ids)
        for j, v in r.items():
            row[pos[j]] = v
        dense.append(row)
    _, D, _ = smith_normal_form(dense)
    rest = [D[k][k] for k in range(min(len(D), len(col_ids))) if D[k][k]]
    return [1] * units + rest


def normalize_factors(factors: list[int]) -> list[int]:
    """Turn any diagonal into proper invariant factors (d1 | d2 | ...)."""
    fs = [abs(f) for f in factors if f]
    changed = True
    while changed:
        changed = False
        for a in range(len(fs)):
            for b in range(a + 1, len(fs)):
                x, y = fs[a], fs[b]
                if y % x:
                    g = gcd(x, y)
                    fs[a], fs[b] = g, x * y // g
                    changed = True
    return sorted(fs)
