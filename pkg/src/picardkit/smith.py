"""Smith normal form over the integers, with unimodular transforms.

Matrices are plain lists of lists of Python ints so intermediate values
never overflow.
"""

from __future__ import annotations


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A, B):
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    assert all(len(row) == inner for row in A)
    return [[sum(row[k] * B[k][j] for k in range(inner)) for j in range(cols)] for row in A]


def transpose(A, ncols=None):
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def _swap_rows(M, i, j):
    M[i], M[j] = M[j], M[i]


def _swap_cols(M, i, j):
    for row in M:
        row[i], row[j] = row[j], row[i]


def _add_row(M, src, dst, q):
    # row[dst] += q * row[src]
    if q:
        rs, rd = M[src], M[dst]
        for k in range(len(rd)):
            rd[k] += q * rs[k]


def _add_col(M, src, dst, q):
    # col[dst] += q * col[src]
    if q:
        for row in M:
            row[dst] += q * row[src]


def snf_full(A, left=True):
    """Return ``(U, D, V, Uinv, Vinv)`` with ``U*A*V == D``.

    ``D`` is diagonal with non-negative entries d1 | d2 | ... ; trailing
    zeros come last.  ``Uinv`` and ``Vinv`` are the exact inverses.  With
    ``left=False`` the row transforms are not tracked and ``U``, ``Uinv``
    come back as None (much cheaper for tall matrices).
    """
    m = len(A)
    n = len(A[0]) if m else 0
    D = [list(map(int, row)) for row in A]
    U, Uinv = (identity(m), identity(m)) if left else (None, None)
    V, Vinv = identity(n), identity(n)

    def row_add(src, dst, q):
        _add_row(D, src, dst, q)
        if left:
            _add_row(U, src, dst, q)
            _add_col(Uinv, dst, src, -q)

    def row_swap(i, j):
        _swap_rows(D, i, j)
        if left:
            _swap_rows(U, i, j)
            _swap_cols(Uinv, i, j)

    def row_neg(i):
        D[i] = [-v for v in D[i]]
        if left:
            U[i] = [-v for v in U[i]]
            for row in Uinv:
                row[i] = -row[i]

    def col_add(src, dst, q):
        _add_col(D, src, dst, q)
        _add_col(V, src, dst, q)
        _add_row(Vinv, dst, src, -q)

    def col_swap(i, j):
        _swap_cols(D, i, j)
        _swap_cols(V, i, j)
        _swap_rows(Vinv, i, j)

    for t in range(min(m, n)):
        while True:
            # smallest nonzero entry of the trailing block becomes the pivot
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    v = D[i][j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
            if best is None:
                return U, D, V, Uinv, Vinv
            _, i, j = best
            if i != t:
                row_swap(i, t)
            if j != t:
                col_swap(j, t)
            p = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    row_add(t, i, -(D[i][t] // p))
                    dirty = dirty or D[i][t] != 0
            for j in range(t + 1, n):
                if D[t][j]:
                    col_add(t, j, -(D[t][j] // p))
                    dirty = dirty or D[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p),
                None,
            )
            if bad is not None:
                row_add(bad, t, 1)
                continue
            if p < 0:
                row_neg(t)
            break
    return U, D, V, Uinv, Vinv


def smith_normal_form(A):
    """Return ``(U, D, V)`` with ``U*A*V == D`` in Smith normal form."""
    U, D, V, _, _ = snf_full(A)
    return U, D, V


def diagonal(D) -> list[int]:
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def invariant_factors(A) -> list[int]:
    """Diagonal of the Smith form of ``A`` (length min(rows, cols))."""
    _, D, _ = smith_normal_form(A)
    return diagonal(D)


def kernel_basis(A, ncols: int) -> list[list[int]]:
    """Columns spanning the integer kernel {x : A x = 0} as a lattice basis."""
    if not A:
        return identity(ncols)
    _, D, V, _, _ = snf_full(A, left=False)
    rank = sum(1 for d in diagonal(D) if d)
    return [[V[i][j] for j in range(rank, ncols)] for i in range(ncols)]


def in_lattice(vec, gens) -> bool:
    """True iff integer vector ``vec`` lies in the span of the columns of ``gens``."""
    if not any(vec):
        return True
    if not gens or not gens[0]:
        return False
    U, D, _, _, _ = snf_full(gens)
    y = [sum(U[i][k] * vec[k] for k in range(len(vec))) for i in range(len(U))]
    diag = diagonal(D)
    for i, yi in enumerate(y):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if yi:
                return False
        elif yi % d:
            return False
    return True
