import numpy as np
import pytest
from conftest import even_grams
from hypothesis import given, settings
from hypothesis import strategies as st

from fanok3 import _kernels
from fanok3.lattice import IntegerLattice, congruence_obstruction, represent


@settings(max_examples=40, deadline=None)
@given(even_grams(max_rank=3), st.integers(-8, 8).map(lambda x: 2 * x), st.integers(1, 4))
def test_box_paths_agree(g, n, bound):
    a = np.asarray(g, dtype=np.int64)
    fast = _kernels._box_solutions_jit(a, n, bound) if _kernels.HAVE_NUMBA else None
    slow = _kernels._box_solutions_numpy(a, n, bound)
    exact = _kernels.box_solutions_exact(g, n, bound)
    assert [tuple(r) for r in slow.tolist()] == exact
    if fast is not None:
        assert [tuple(r) for r in fast.tolist()] == exact


@settings(max_examples=40, deadline=None)
@given(even_grams(max_rank=3), st.integers(-6, 6), st.sampled_from([2, 3, 4, 5, 8]))
def test_residue_paths_agree(g, t, m):
    import itertools

    n = len(g)
    brute = any(
        (sum(v[i] * g[i][j] * v[j] for i in range(n) for j in range(n)) // 2 - t) % m == 0
        for v in itertools.product(range(m), repeat=n)
    )
    h = _kernels._half_gram(g)
    assert bool(_kernels._residue_hit_numpy(h, t % m, m)) == brute
    if _kernels.HAVE_NUMBA:
        assert bool(_kernels._residue_hit_jit(h, np.int64(t % m), np.int64(m))) == brute


def test_env_flag_selects_numpy(monkeypatch):
    monkeypatch.setenv("FANOK3_NUMBA", "0")
    assert not _kernels.numba_enabled()
    L = IntegerLattice([[2, 4], [4, 2]])
    slow = represent(L, 2, 6)
    obstr = congruence_obstruction(L, -2, 4)
    monkeypatch.setenv("FANOK3_NUMBA", "1")
    assert _kernels.numba_enabled() == _kernels.HAVE_NUMBA
    assert represent(L, 2, 6) == slow
    assert congruence_obstruction(L, -2, 4) == obstr


def test_big_entries_use_exact_path():
    g = [[2 * 10**12, 1], [1, 2]]
    assert not _kernels.fits_int64(g, 10**4)
    L = IntegerLattice(g)
    assert represent(L, 2, 1) == [(0, -1), (0, 1)]
