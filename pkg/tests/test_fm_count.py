import itertools
import json

import pytest
from conftest import L26, L28

from fanok3 import IntegerLattice, LatticeError
from fanok3.discriminant import discriminant_group, orthogonal_group
from fanok3.fm_count import (
    FMCountProblem,
    HodgeImageSpec,
    double_coset_count,
    fm_partner_count,
    isometry_image,
    lattice_isometries,
)


class Perm:
    def __init__(self, t):
        self.t = tuple(t)

    def __mul__(self, other):
        return Perm(self.t[i] for i in other.t)

    def inverse(self):
        out = [0] * len(self.t)
        for i, j in enumerate(self.t):
            out[j] = i
        return Perm(out)

    def __eq__(self, other):
        return self.t == other.t

    def __hash__(self):
        return hash(self.t)


def burnside(G, H1, H2):
    """Orbits of H1 x H2 on G via the average number of fixed points."""
    fixed = sum(1 for h1 in H1 for h2 in H2 for g in G if h1 * g * h2.inverse() == g)
    return fixed // (len(H1) * len(H2))


S4 = [Perm(p) for p in itertools.permutations(range(4))]
SUBGROUPS = {
    "trivial": [Perm((0, 1, 2, 3))],
    "c2": [Perm((0, 1, 2, 3)), Perm((1, 0, 2, 3))],
    "v4": [Perm(p) for p in [(0, 1, 2, 3), (1, 0, 3, 2), (2, 3, 0, 1), (3, 2, 1, 0)]],
    "s3": [Perm(p + (3,)) for p in itertools.permutations(range(3))],
    "a4": [p for p in S4 if sum(1 for i in range(4) for j in range(i + 1, 4) if p.t[i] > p.t[j]) % 2 == 0],
    "s4": S4,
}


@pytest.mark.parametrize("h1, h2", list(itertools.product(SUBGROUPS, repeat=2)))
def test_double_cosets_match_burnside(h1, h2):
    assert double_coset_count(S4, SUBGROUPS[h1], SUBGROUPS[h2]) == burnside(S4, SUBGROUPS[h1], SUBGROUPS[h2])


def test_double_coset_rejects_non_subgroup():
    with pytest.raises(LatticeError):
        double_coset_count(S4, [Perm((1, 0, 2, 3))], SUBGROUPS["trivial"])


@pytest.mark.parametrize("g", [L26, L28])
def test_no_nontrivial_partners(g):
    L = IntegerLattice(g)
    res = fm_partner_count(FMCountProblem(L, (L,), HodgeImageSpec(), 5))
    assert res.count == 1 and res.exact and not res.warnings
    assert all(s["saturated"] for s in res.summands)


def test_lattice_isometries_are_isometries():
    L = IntegerLattice(L26)
    for cols in lattice_isometries(L, 3):
        img = [[sum(cols[i][k] * L.gram[k][l] * cols[j][l] for k in range(2) for l in range(2)) for j in range(2)] for i in range(2)]
        assert tuple(map(tuple, img)) == L.gram


def test_cosets_with_trivial_hodge_group():
    """With H2 = {id} the double cosets are cosets, so the count is |O(A)| / |image|."""
    L = IntegerLattice([[2, 0], [0, -6]])
    A = discriminant_group(L)
    ident = [[int(i == j) for j in range(A.ngens)] for i in range(A.ngens)]
    hodge = HodgeImageSpec("explicit", (tuple(map(tuple, ident)),))
    for bound in (1, 3):
        res = fm_partner_count(FMCountProblem(L, (L,), hodge, bound))
        img = isometry_image(L, bound)
        assert res.count == len(orthogonal_group(A)) // len(img.group)


def test_unsaturated_image_warns():
    L = IntegerLattice([[2, 0], [0, -6]])
    res = fm_partner_count(FMCountProblem(L, (L,), HodgeImageSpec(), 1))
    assert not res.exact and res.warnings
    assert res.count == 2
    assert fm_partner_count(FMCountProblem(L, (L,), HodgeImageSpec(), 3)).count == 1


def test_problem_json(tmp_path):
    doc = {"ns": [[2, 4], [4, 2]], "hodge": "pm-id", "search_bound": 4}
    p = tmp_path / "p.json"
    p.write_text(json.dumps(doc))
    prob = FMCountProblem.load(p)
    assert prob.genus_reps[0].gram == ((2, 4), (4, 2))
    assert FMCountProblem.from_json(prob.to_json()) == prob


@pytest.mark.parametrize(
    "doc",
    [
        {},
        {"ns": [[2, 4], [4, 2]], "search_bound": 0},
        {"ns": [[2, 4], [4, 2]], "hodge": "weird"},
        {"ns": [[0, 2, 2], [2, 0, 2], [2, 2, 0]]},
    ],
)
def test_problem_json_errors(doc):
    with pytest.raises(LatticeError):
        FMCountProblem.from_json(doc)


def test_validation_of_genus_reps():
    L = IntegerLattice(L26)
    with pytest.raises(LatticeError):
        fm_partner_count(FMCountProblem(L, (IntegerLattice(L28),), HodgeImageSpec()))
    with pytest.raises(LatticeError):
        fm_partner_count(FMCountProblem(L, (), HodgeImageSpec()))
