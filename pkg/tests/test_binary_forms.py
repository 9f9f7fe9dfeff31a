import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fanok3 import LatticeError
from fanok3.binary_forms import (
    BinaryQuadraticForm,
    class_count,
    enumerate_reduced,
    form_lattice_bridge,
    is_reduced,
    lattice_classes,
    proper_classes,
    reduce_form,
    reduction_cycle,
    rho,
    same_lattice_class,
    same_proper_class,
)

# Narrow class numbers h+(D) of real quadratic fields at fundamental discriminants:
# h+ = h when the fundamental unit has norm -1, and 2h otherwise.
NARROW_CLASS_NUMBERS = {
    5: 1, 8: 1, 12: 2, 13: 1, 17: 1, 21: 2, 24: 2, 28: 2,
    29: 1, 33: 2, 37: 1, 40: 2, 41: 1, 44: 2, 60: 4, 65: 2,
}


def valid_discs(limit):
    return [D for D in range(5, limit + 1) if D % 4 in (0, 1) and int(D**0.5) ** 2 != D]


@pytest.mark.parametrize("D, h", sorted(NARROW_CLASS_NUMBERS.items()))
def test_proper_count_matches_narrow_class_number(D, h):
    assert class_count(D).proper == h


def sl2_matrices(bound):
    rng = range(-bound, bound + 1)
    return [(p, q, r, s) for p, q, r, s in itertools.product(rng, repeat=4) if p * s - q * r == 1]


SL2 = sl2_matrices(4)


def test_cycles_agree_with_sl2_search():
    """Consecutive cycle members are joined by [[0, -1], [1, t]]; no small SL2 matrix links different cycles."""
    for D in valid_discs(200):
        cycles = proper_classes(D)
        where = {f: i for i, cyc in enumerate(cycles) for f in cyc}
        for i, cyc in enumerate(cycles):
            f = cyc[0]
            reached = {f.transform(*m) for m in SL2}
            hit = {where[g] for g in reached if g in where}
            assert hit == {i}, (D, f)
            for g, h in zip(cyc, cyc[1:] + cyc[:1]):
                assert any(g.transform(0, -1, 1, t) == h for t in range(-D, D + 1)), (D, g, h)


@given(st.sampled_from(valid_discs(300)), st.data())
def test_reduction_invariants(D, data):
    forms = enumerate_reduced(D)
    f = data.draw(st.sampled_from(forms))
    p, q, r, s = data.draw(st.sampled_from(SL2))
    g = f.transform(p, q, r, s)
    assert g.discriminant == D
    assert is_reduced(reduce_form(g))
    assert same_proper_class(f, g)
    assert is_reduced(rho(f)) and same_proper_class(f, rho(f))


@pytest.mark.parametrize("D", valid_discs(150))
def test_reduced_forms_brute_force(D):
    brute = set()
    for b in range(1, int(D**0.5) + 1):
        if (b * b - D) % 4:
            continue
        for a in range(-D, D + 1):
            if a and (b * b - D) % (4 * a) == 0:
                f = BinaryQuadraticForm(a, b, (b * b - D) // (4 * a))
                if is_reduced(f):
                    brute.add(f)
    assert set(enumerate_reduced(D)) == brute
    assert sum(len(c) for c in proper_classes(D)) == len(brute)


def test_known_counts():
    assert class_count(8).to_json() == {"proper": 1, "improper": 1, "lattice_classes": 1}
    assert class_count(12).lattice_classes == 2
    c = class_count(136)
    assert (c.proper, c.lattice_classes) == (4, 3)


def test_minus_one_two_one():
    """(1, 2, -1) and (-1, 2, 1) lie in one proper class at discriminant 8."""
    assert same_proper_class(BinaryQuadraticForm(1, 2, -1), BinaryQuadraticForm(-1, 2, 1))


@pytest.mark.parametrize("D", valid_discs(200))
def test_lattice_classes_merge_swaps(D):
    cls = lattice_classes(D)
    assert sum(len(c) for c in cls) == len(proper_classes(D))
    for group in cls:
        f = group[0][0]
        assert any(BinaryQuadraticForm(f.c, f.b, f.a) in cyc for cyc in group)
        for other in cls:
            if other is not group:
                assert not same_lattice_class(f, other[0][0])


def test_bridge_roundtrip():
    f = BinaryQuadraticForm(1, 4, 1)
    L = form_lattice_bridge(f)
    assert L.gram == ((2, 4), (4, 2))
    assert form_lattice_bridge(L) == f


@pytest.mark.parametrize("D", [0, -8, 7, 16])
def test_bad_discriminants(D):
    with pytest.raises(LatticeError):
        enumerate_reduced(D)


def test_cycle_of_l26():
    cyc = reduction_cycle(BinaryQuadraticForm(1, 4, 1))
    assert all(is_reduced(f) and f.discriminant == 12 for f in cyc)
