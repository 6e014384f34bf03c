"""Exact matrix normal forms: Smith and Hermite over Z, echelon over fields.

Matrices are plain lists of rows. Nothing here uses floating point.
"""
from __future__ import annotations

from fractions import Fraction


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(m, n):
    return [[0] * n for _ in range(m)]


def shape(M, ncols=None):
    m = len(M)
    n = len(M[0]) if m else (ncols or 0)
    return m, n


def matmul(A, B, ncols=None):
    m = len(A)
    k = len(B)
    n = len(B[0]) if k else (ncols or 0)
    C = zeros(m, n)
    for i in range(m):
        Ai = A[i]
        Ci = C[i]
        for t in range(k):
            a = Ai[t]
            if a:
                Bt = B[t]
                for j in range(n):
                    if Bt[j]:
                        Ci[j] += a * Bt[j]
    return C


def transpose(M, ncols=0):
    if not M:
        return [[] for _ in range(ncols)]
    return [list(col) for col in zip(*M)]


def det(M):
    """Exact determinant by fraction-free Bareiss elimination."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(r) for r in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def smith_normal_form(M, ncols=None):
    """Return (U, D, V) with U*M*V = D, U and V unimodular, D in Smith form.

    D is diagonal with nonnegative entries d_1 | d_2 | ... . ``ncols`` gives
    the column count when M has no rows.
    """
    m, n = shape(M, ncols)
    D = [[int(x) for x in row] for row in M]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):  # row_dst -= q * row_src
        if q:
            Ds, Dd = D[src], D[dst]
            for k in range(n):
                Dd[k] -= q * Ds[k]
            Us, Ud = U[src], U[dst]
            for k in range(m):
                Ud[k] -= q * Us[k]

    def add_col(src, dst, q):  # col_dst -= q * col_src
        if q:
            for row in D:
                row[dst] -= q * row[src]
            for row in V:
                row[dst] -= q * row[src]

    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero |entry| in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = D[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = D[t][t]
            changed = False
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(t, i, D[i][t] // p)
                    if D[i][t]:
                        changed = True
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(t, j, D[t][j] // p)
                    if D[t][j]:
                        changed = True
            if changed:
                best = None
                for i in range(t, m):
                    if D[i][t] and (best is None or abs(D[i][t]) < best[0]):
                        best = (abs(D[i][t]), i, "r")
                for j in range(t, n):
                    if D[t][j] and (best is None or abs(D[t][j]) < best[0]):
                        best = (abs(D[t][j]), j, "c")
                if best[2] == "r":
                    swap_rows(t, best[1])
                else:
                    swap_cols(t, best[1])
                continue
            # divisibility: every remaining entry must be a multiple of p
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if D[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(bad, t, -1)  # row_t += row_bad, then reduce again
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return U, D, V


def smith_diagonal(M, ncols=None):
    _, D, _ = smith_normal_form(M, ncols)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i]]


def hermite_normal_form(M, ncols=None):
    """Row-style Hermite normal form of an integer matrix.

    Returns (H, pivots): H spans the same row lattice as M, is in echelon
    form with positive pivots, entries above each pivot reduced into
    [0, pivot). Zero rows are dropped.
    """
    _, n = shape(M, ncols)
    rows = [[int(x) for x in r] for r in M if any(r)]
    H = []
    pivots = []
    col = 0
    while rows and col < n:
        nz = [r for r in rows if r[col]]
        if not nz:
            col += 1
            continue
        rest = [r for r in rows if not r[col]]
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            p = nz[0]
            nxt = [p]
            for r in nz[1:]:
                q = r[col] // p[col]
                r = [a - q * b for a, b in zip(r, p)]
                if r[col]:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            nz = nxt
        p = nz[0]
        if p[col] < 0:
            p = [-a for a in p]
        for k, h in enumerate(H):
            q = h[col] // p[col]
            if q:
                H[k] = [a - q * b for a, b in zip(h, p)]
        H.append(p)
        pivots.append(col)
        rows = rest
        col += 1
    return H, pivots


def hnf_reduce(H, pivots, v):
    """Reduce integer vector v modulo the row lattice of H; zero iff member."""
    v = [int(x) for x in v]
    for h, c in zip(H, pivots):
        if v[c]:
            q = v[c] // h[c]
            if q:
                v = [a - q * b for a, b in zip(v, h)]
    return v


def field_echelon(M, ring, ncols=None):
    """Reduced row echelon form over a field ring. Returns (rows, pivots)."""
    _, n = shape(M, ncols)
    rows = [[ring(x) for x in r] for r in M]
    R = []
    pivots = []
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = ring.inv(rows[r][c])
        rows[r] = [ring(x * inv) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [ring(a - f * b) for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    R = rows[:r]
    return R, pivots


def field_reduce(R, pivots, v, ring):
    v = [ring(x) for x in v]
    for row, c in zip(R, pivots):
        if v[c]:
            f = v[c]
            v = [ring(a - f * b) for a, b in zip(v, row)]
    return v


def rank(M, ring, ncols=None):
    if ring.is_field:
        return len(field_echelon(M, ring, ncols)[1])
    if ring.characteristic == 0:
        return len(smith_diagonal(M, ncols))
    raise NotImplementedError(f"rank over non-field {ring}")


def field_kernel(M, ring, ncols):
    """Basis of {x : M x = 0} over a field (columns as vectors)."""
    R, piv = field_echelon(M, ring, ncols)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        x = [ring(0)] * ncols
        x[f] = ring(1)
        for row, c in zip(R, piv):
            x[c] = ring(-row[f])
        basis.append(x)
    return basis


def as_fraction_matrix(M):
    return [[Fraction(x) for x in r] for r in M]


def inverse(M):
    """Exact inverse of a square matrix (Fractions; ints when integral)."""
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(M)]
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        A[c], A[piv] = A[piv], A[c]
        p = A[c][c]
        A[c] = [x / p for x in A[c]]
        for i in range(n):
            if i != c and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    out = []
    for row in A:
        r = row[n:]
        out.append([int(x) if x.denominator == 1 else x for x in r])
    return out
