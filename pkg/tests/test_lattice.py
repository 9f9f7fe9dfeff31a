import itertools
import json

import pytest
from conftest import L26, L28, L31, even_grams, unimodular
from hypothesis import given, settings
from hypothesis import strategies as st

from fanok3 import IntegerLattice, LatticeError
from fanok3.lattice import (
    NotPrimitiveError,
    basic_invariants,
    change_basis,
    congruence_obstruction,
    divisibility,
    inner,
    is_primitive,
    primitive_and_complete,
    represent,
    signature,
    square,
)
from fanok3.linalg import det


@pytest.mark.parametrize(
    "gram, msg",
    [
        ([[2, 1], [0, 2]], "symmetric"),
        ([[1, 0], [0, 2]], "even"),
        ([[2, 2], [2, 2]], "degenerate"),
        ([[2, 1, 0], [1, 2]], "square"),
        ([[2.0, 0], [0, 2]], "integer"),
        ([[True, 0], [0, 2]], "integer"),
        ([], None),
    ],
)
def test_validation(gram, msg):
    with pytest.raises(LatticeError, match=msg):
        IntegerLattice(gram)


def test_json_roundtrip(tmp_path):
    L = IntegerLattice(L31, name="L31")
    p = tmp_path / "l.json"
    p.write_text(json.dumps(L.to_json()))
    assert IntegerLattice.load(p) == L
    assert IntegerLattice.from_json([list(r) for r in L26]).gram == L26
    with pytest.raises(LatticeError):
        IntegerLattice.from_json({"matrix": []})


def test_known_invariants():
    inv = basic_invariants(IntegerLattice(L26))
    assert (inv.determinant, inv.discriminant, inv.signature, inv.even) == (-12, 12, (1, 1), True)
    assert basic_invariants(IntegerLattice(L28)).signature == (1, 1)
    assert basic_invariants(IntegerLattice(L31)).to_json() == {
        "determinant": 16,
        "discriminant": 16,
        "signature": [1, 2],
        "even": True,
    }


@given(even_grams())
def test_signature_sign_rule(g):
    p, n = signature(IntegerLattice(g))
    assert p + n == len(g)
    assert (-1) ** n == (1 if det(g) > 0 else -1)


@given(even_grams(max_rank=3), st.data())
def test_inner_is_bilinear_and_symmetric(g, data):
    L = IntegerLattice(g)
    vec = st.lists(st.integers(-5, 5), min_size=len(g), max_size=len(g))
    u, v, w = data.draw(vec), data.draw(vec), data.draw(vec)
    k = data.draw(st.integers(-4, 4))
    uv = [a + k * b for a, b in zip(u, v)]
    assert inner(L, uv, w) == inner(L, u, w) + k * inner(L, v, w)
    assert inner(L, u, w) == inner(L, w, u)
    assert square(L, u) % 2 == 0


def _brute_represent(g, n, bound):
    r = len(g)
    out = []
    for v in itertools.product(range(-bound, bound + 1), repeat=r):
        if sum(v[i] * g[i][j] * v[j] for i in range(r) for j in range(r)) == n:
            out.append(v)
    return out


@settings(max_examples=40)
@given(even_grams(max_rank=3), st.integers(-6, 6).map(lambda x: 2 * x), st.integers(1, 4))
def test_represent_matches_brute_force(g, n, bound):
    assert represent(IntegerLattice(g), n, bound) == _brute_represent(g, n, bound)


@settings(max_examples=30)
@given(even_grams(max_rank=3), st.integers(-4, 4).map(lambda x: 2 * x), st.integers(1, 3))
def test_represent_monotone_in_bound(g, n, bound):
    L = IntegerLattice(g)
    small = set(represent(L, n, bound))
    big = represent(L, n, bound + 1)
    assert small == {v for v in big if max(map(abs, v)) <= bound}


def test_represent_known():
    L = IntegerLattice(L26)
    assert represent(L, -2, 50) == []
    assert (1, 0) in represent(L, 2, 3) and (0, 1) in represent(L, 2, 3)
    with pytest.raises(LatticeError):
        represent(L, 2, 0)


@settings(max_examples=40)
@given(even_grams(max_rank=2, max_entry=6), st.integers(-5, 5).map(lambda x: 2 * x), st.sampled_from([2, 3, 4, 8]))
def test_congruence_obstruction_is_sound(g, n, m):
    """If the obstruction fires, no vector in a box can have square n."""
    L = IntegerLattice(g)
    if congruence_obstruction(L, n, m):
        assert represent(L, n, 6) == []


def test_congruence_obstruction_known():
    L = IntegerLattice(L26)
    assert congruence_obstruction(L, -2, 4)
    assert not congruence_obstruction(L, 2, 4)
    assert congruence_obstruction(L, 3, 4)
    with pytest.raises(LatticeError):
        congruence_obstruction(L, 2, 1)


def test_divisibility():
    L = IntegerLattice(L31)
    assert divisibility(L, (1, 0, 0)) == 2
    assert divisibility(IntegerLattice(L26), (1, 0)) == 2
    with pytest.raises(LatticeError):
        divisibility(L, (0, 0, 0))


@given(st.lists(st.integers(-30, 30), min_size=1, max_size=4))
def test_primitive_and_complete(v):
    g = [[2 * int(i == j) for j in range(len(v))] for i in range(len(v))]
    L = IntegerLattice(g)
    if not any(v):
        with pytest.raises(LatticeError):
            primitive_and_complete(L, v)
    elif not is_primitive(v):
        with pytest.raises(NotPrimitiveError):
            primitive_and_complete(L, v)
    else:
        B = primitive_and_complete(L, v)
        assert [row[0] for row in B] == list(v)
        assert abs(det(B)) == 1


def test_complete_e1_is_identity():
    assert primitive_and_complete(IntegerLattice(L31), (1, 0, 0)) == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


@settings(max_examples=30)
@given(st.data())
def test_change_basis_preserves_invariants(data):
    g = data.draw(even_grams(max_rank=3))
    B = data.draw(unimodular(len(g)))
    L = IntegerLattice(g)
    M = change_basis(L, B)
    assert basic_invariants(M) == basic_invariants(L)
