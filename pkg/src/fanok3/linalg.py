"""Exact integer and rational matrix routines.

Matrices are lists of lists of Python ints (or Fractions).  Nothing here uses
floating point.
"""
from fractions import Fraction
from math import gcd


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(a):
    return [list(col) for col in zip(*a)]


def matmul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def xgcd(a, b):
    """Return (g, s, t) with s*a + t*b == g == gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def content(v):
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def det(a):
    """Determinant of a square integer matrix (Bareiss fraction-free elimination)."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(row) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def inverse_rational(a):
    """Inverse of a nonsingular square matrix over Q (Gauss-Jordan on Fractions)."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        m[c], m[p] = m[p], m[c]
        piv = m[c][c]
        m[c] = [x / piv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [row[n:] for row in m]


def congruence_diagonal(a):
    """Diagonal entries of a symmetric rational matrix after congruence diagonalization.

    Uses symmetric row/column operations only, so the result has the same
    inertia as ``a``.  A zero pivot is repaired by a symmetric swap with a later
    nonzero diagonal entry, or, when the remaining diagonal is zero, by adding a
    row/column with a nonzero off-diagonal entry (which makes the pivot
    ``2 a_ij``).
    """
    n = len(a)
    m = [[Fraction(x) for x in row] for row in a]
    diag = []
    for k in range(n):
        if m[k][k] == 0:
            j = next((j for j in range(k + 1, n) if m[j][j] != 0), None)
            if j is not None:
                m[k], m[j] = m[j], m[k]
                for row in m:
                    row[k], row[j] = row[j], row[k]
            else:
                j = next((j for j in range(k + 1, n) if m[k][j] != 0), None)
                if j is not None:
                    for c in range(n):
                        m[k][c] += m[j][c]
                    for r in range(n):
                        m[r][k] += m[r][j]
        piv = m[k][k]
        diag.append(piv)
        if piv == 0:
            continue
        for i in range(k + 1, n):
            f = m[i][k] / piv
            if f:
                for c in range(n):
                    m[i][c] -= f * m[k][c]
                for r in range(n):
                    m[r][i] -= f * m[r][k]
    return diag


def hermite_rows(a):
    """Row-style Hermite normal form with transform.

    Returns ``(h, u)`` with ``u`` unimodular (square, size = number of rows of
    ``a``) and ``u * a == h``; ``h`` is upper echelon with positive pivots and
    entries above each pivot reduced into ``[0, pivot)``.  Zero rows sit at the
    bottom.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    h = [list(row) for row in a]
    u = identity(m)
    r = 0
    for c in range(n):
        if r == m:
            break
        for i in range(r + 1, m):
            if h[i][c] == 0:
                continue
            g, s, t = xgcd(h[r][c], h[i][c])
            x, y = h[r][c] // g, h[i][c] // g
            hr, hi = h[r], h[i]
            h[r] = [s * p + t * q for p, q in zip(hr, hi)]
            h[i] = [-y * p + x * q for p, q in zip(hr, hi)]
            ur, ui = u[r], u[i]
            u[r] = [s * p + t * q for p, q in zip(ur, ui)]
            u[i] = [-y * p + x * q for p, q in zip(ur, ui)]
        if h[r][c] == 0:
            continue
        if h[r][c] < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
        piv = h[r][c]
        for i in range(r):
            q = h[i][c] // piv
            if q:
                h[i] = [p - q * s for p, s in zip(h[i], h[r])]
                u[i] = [p - q * s for p, s in zip(u[i], u[r])]
        r += 1
    return h, u


def smith_normal_form(a):
    """Smith normal form with transforms.

    Returns ``(d, u, v)`` where ``u * a * v`` is diagonal with nonnegative
    entries ``d[0] | d[1] | ...`` (``d`` has ``min(rows, cols)`` entries) and
    ``u``, ``v`` are unimodular.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    s = [list(row) for row in a]
    u = identity(m)
    v = identity(n)

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if s[i][j] != 0 and (best is None or abs(s[i][j]) < abs(s[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            if best[0] != t:
                swap_rows(t, best[0])
            if best[1] != t:
                swap_cols(t, best[1])
            piv = s[t][t]
            clean = True
            for i in range(t + 1, m):
                q = s[i][t] // piv
                if q:
                    s[i] = [x - q * y for x, y in zip(s[i], s[t])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[t])]
                if s[i][t]:
                    clean = False
            for j in range(t + 1, n):
                q = s[t][j] // piv
                if q:
                    for row in s:
                        row[j] -= q * row[t]
                    for row in v:
                        row[j] -= q * row[t]
                if s[t][j]:
                    clean = False
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if s[i][j] % piv),
                None,
            )
            if bad is None:
                break
            s[t] = [x + y for x, y in zip(s[t], s[bad])]
            u[t] = [x + y for x, y in zip(u[t], u[bad])]
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]
    return [s[i][i] for i in range(min(m, n))], u, v


def complete_to_basis(columns, n):
    """Unimodular n x n integer matrix whose first columns are ``columns``.

    Raises ValueError when the columns do not span a primitive sublattice of Z^n.
    """
    k = len(columns)
    a = [[columns[j][i] for j in range(k)] for i in range(n)]
    h, u = hermite_rows(a)
    top = [row[:k] for row in h[:k]]
    if any(any(row) for row in h[k:]) or abs(det(top)) != 1:
        raise ValueError("vectors do not span a primitive sublattice")
    uinv = inverse_rational(u)
    basis = [[int(x) for x in row] for row in uinv]
    for i in range(n):
        for j in range(k):
            basis[i][j] = columns[j][i]
    return basis
