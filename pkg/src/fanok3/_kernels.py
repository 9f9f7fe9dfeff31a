"""Hot enumeration kernels.

Each kernel has a numba ``@njit`` implementation and a pure-numpy fallback with
identical output.  The numba path is used when numba imports cleanly and the
environment variable ``FANOK3_NUMBA`` is not set to ``0``.

All kernels work in int64.  Callers must check :func:`fits_int64` first and
fall back to exact Python integers otherwise.
"""
import itertools
import os

import numpy as np

_INT64_SAFE = 2**62

try:  # pragma: no cover - exercised implicitly when numba is installed
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


def numba_enabled():
    return HAVE_NUMBA and os.environ.get("FANOK3_NUMBA", "1").strip().lower() not in ("0", "false", "no", "off")


def fits_int64(gram, bound):
    """True if every quadratic-form value on the box [-bound, bound]^n fits comfortably in int64."""
    n = len(gram)
    m = max((abs(x) for row in gram for x in row), default=0)
    return n * n * max(m, 1) * max(bound, 1) ** 2 < _INT64_SAFE


# -- box search: all v in [-B, B]^n with v^T G v == target, lexicographic -----


@njit(cache=True)
def _box_solutions_jit(gram, target, bound):
    n = gram.shape[0]
    width = 2 * bound + 1
    total = width**n
    out = np.empty((16, n), dtype=np.int64)
    count = 0
    v = np.full(n, -bound, dtype=np.int64)
    for _ in range(total):
        s = 0
        for i in range(n):
            vi = v[i]
            if vi != 0:
                acc = 0
                for j in range(n):
                    acc += gram[i, j] * v[j]
                s += vi * acc
        if s == target:
            if count == out.shape[0]:
                bigger = np.empty((2 * out.shape[0], n), dtype=np.int64)
                bigger[:count] = out[:count]
                out = bigger
            out[count] = v
            count += 1
        # odometer, last coordinate fastest
        k = n - 1
        while k >= 0:
            v[k] += 1
            if v[k] <= bound:
                break
            v[k] = -bound
            k -= 1
    return out[:count].copy()


_CHUNK = 1 << 20


def _box_solutions_numpy(gram, target, bound):
    n = gram.shape[0]
    width = 2 * bound + 1
    total = width**n
    found = []
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        pts = np.empty((idx.size, n), dtype=np.int64)
        rem = idx
        for k in range(n - 1, -1, -1):
            pts[:, k] = rem % width - bound
            rem = rem // width
        vals = np.einsum("ij,jk,ik->i", pts, gram, pts)
        found.append(pts[vals == target])
    if not found:
        return np.empty((0, n), dtype=np.int64)
    return np.concatenate(found)


def box_solutions(gram, target, bound):
    """Rows of all box vectors with square ``target``, in lexicographic order."""
    g = np.asarray(gram, dtype=np.int64)
    if numba_enabled():
        return _box_solutions_jit(g, np.int64(target), np.int64(bound))
    return _box_solutions_numpy(g, int(target), int(bound))


def box_solutions_exact(gram, target, bound):
    """Arbitrary-precision reference path (no int64 assumptions)."""
    n = len(gram)
    rng = range(-bound, bound + 1)
    out = []
    for v in itertools.product(rng, repeat=n):
        s = 0
        for i in range(n):
            if v[i]:
                s += v[i] * sum(gram[i][j] * v[j] for j in range(n))
        if s == target:
            out.append(v)
    return out


# -- residue sweep: does v^T G v / 2 == t (mod m) have a solution? ------------


@njit(cache=True)
def _residue_hit_jit(half_gram2, target, modulus):
    # half_gram2 holds G with the diagonal halved; Q(v) = sum_i h_ii v_i^2 + sum_{i<j} g_ij v_i v_j
    n = half_gram2.shape[0]
    total = modulus**n
    v = np.zeros(n, dtype=np.int64)
    for _ in range(total):
        s = 0
        for i in range(n):
            if v[i] != 0:
                s += half_gram2[i, i] * v[i] * v[i]
                for j in range(i + 1, n):
                    s += half_gram2[i, j] * v[i] * v[j]
        r = s % modulus
        if r == target:
            return True
        k = n - 1
        while k >= 0:
            v[k] += 1
            if v[k] < modulus:
                break
            v[k] = 0
            k -= 1
    return False


def _residue_hit_numpy(half_gram2, target, modulus):
    n = half_gram2.shape[0]
    total = modulus**n
    upper = np.triu(half_gram2, 1)
    diag = np.diag(half_gram2)
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        pts = np.empty((idx.size, n), dtype=np.int64)
        rem = idx
        for k in range(n - 1, -1, -1):
            pts[:, k] = rem % modulus
            rem = rem // modulus
        vals = (pts * pts) @ diag + np.einsum("ij,jk,ik->i", pts, upper, pts)
        if np.any(vals % modulus == target):
            return True
    return False


def _half_gram(gram):
    """Gram with halved diagonal, so v^T G v / 2 = sum_i h_ii v_i^2 + sum_{i<j} h_ij v_i v_j."""
    g = np.asarray(gram, dtype=np.int64)
    h = g.copy()
    np.fill_diagonal(h, np.diag(g) // 2)
    return h


def residue_hit(gram, target, modulus):
    """Whether v^T G v / 2 takes the residue ``target`` mod ``modulus`` on (Z/m)^n."""
    h = _half_gram(gram)
    t = int(target) % int(modulus)
    if numba_enabled():
        return bool(_residue_hit_jit(h, np.int64(t), np.int64(modulus)))
    return bool(_residue_hit_numpy(h, t, int(modulus)))
