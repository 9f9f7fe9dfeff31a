"""Intersection data of the base varieties and the lattices of their branch divisors.

Intersection arrays are stored in the basis of Pic(Y) listed in ``basis``:

* ``P1xP1xP1``: H_i H_j H_k = 1 exactly when {i, j, k} = {1, 2, 3}.
* ``Blp-P3``: H^3 = 1, E^3 = 1, mixed products 0.
* ``P2xP2``: quadruple products H1^a H2^b = 1 exactly when a = b = 2.
* ``P2xP2-(1,1)-divisor``: obtained from ``P2xP2`` by multiplying with
  [Y] = H1 + H2, which gives H1^3 = H2^3 = 0 and H1^2 H2 = H1 H2^2 = 1.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .discriminant import FiniteQuadraticModule
from .lattice import IntegerLattice, LatticeError, basic_invariants, divisibility, inner, is_primitive
from .lattice import pairing_row, primitive_and_complete
from .linalg import complete_to_basis, det, xgcd


@dataclass(frozen=True)
class BaseVariety:
    id: str
    basis: tuple
    tensor: tuple
    branch_class: tuple
    canonical_class: tuple

    @property
    def picard_rank(self) -> int:
        return len(self.basis)

    @property
    def dimension(self) -> int:
        d, t = 0, self.tensor
        while isinstance(t, tuple):
            d += 1
            t = t[0]
        return d

    def to_json(self):
        return {
            "id": self.id,
            "basis": list(self.basis),
            "picard_rank": self.picard_rank,
            "tensor": _listify(self.tensor),
            "branch_class": list(self.branch_class),
            "canonical_class": list(self.canonical_class),
        }


def _listify(t):
    return [_listify(x) for x in t] if isinstance(t, tuple) else t


def _array(shape_n, order, fn):
    def build(prefix):
        if len(prefix) == order:
            return fn(prefix)
        return tuple(build(prefix + (i,)) for i in range(shape_n))

    return build(())


def _entry(t, idx):
    for i in idx:
        t = t[i]
    return t


def contract(tensor, vector):
    """Contract the last index of an intersection array with a class."""
    n = len(vector)
    order = 0
    t = tensor
    while isinstance(t, tuple):
        order += 1
        t = t[0]
    return _array(n, order - 1, lambda idx: sum(_entry(tensor, idx + (k,)) * vector[k] for k in range(n)))


def _p2xp2_tensor():
    return _array(2, 4, lambda idx: int(idx.count(0) == 2))


def _p1cubed_tensor():
    return _array(3, 3, lambda idx: int(sorted(idx) == [0, 1, 2]))


def _blp_p3_tensor():
    return _array(2, 3, lambda idx: int(len(set(idx)) == 1))


BASES = {
    "P2xP2": BaseVariety("P2xP2", ("H1", "H2"), _p2xp2_tensor(), (2, 2), (-3, -3)),
    "P2xP2-(1,1)-divisor": BaseVariety(
        "P2xP2-(1,1)-divisor", ("H1", "H2"), contract(_p2xp2_tensor(), (1, 1)), (2, 2), (-2, -2)
    ),
    "Blp-P3": BaseVariety("Blp-P3", ("H", "E"), _blp_p3_tensor(), (4, -2), (-4, 2)),
    "P1xP1xP1": BaseVariety("P1xP1xP1", ("H1", "H2", "H3"), _p1cubed_tensor(), (2, 2, 2), (-2, -2, -2)),
}

FAMILIES = {
    "2-6(b)": "P2xP2-(1,1)-divisor",
    "2-8": "Blp-P3",
    "3-1": "P1xP1xP1",
    "Verra4": "P2xP2",
}

_ALIASES = {
    "2-6b": "2-6(b)",
    "2-6(b)": "2-6(b)",
    "26b": "2-6(b)",
    "2-8": "2-8",
    "3-1": "3-1",
    "verra4": "Verra4",
    "verra": "Verra4",
}


def family_id(name: str) -> str:
    key = name.strip().lower()
    if key not in _ALIASES:
        raise LatticeError(f"unknown family {name!r}; expected one of 2-6b, 2-8, 3-1, verra4")
    return _ALIASES[key]


def base_of(family: str) -> BaseVariety:
    return BASES[FAMILIES[family_id(family)]]


def ns_lattice_of_branch(family: str) -> IntegerLattice:
    """Gram[i][j] = sum_k T[i][j][k] * branch[k] for the branch K3 surface."""
    fam = family_id(family)
    if fam == "Verra4":
        raise LatticeError("the Verra fourfold branches in a threefold; use verra_cubic for its intersection form")
    Y = base_of(fam)
    gram = contract(Y.tensor, Y.branch_class)
    return IntegerLattice([list(r) for r in gram], f"NS(Z) for family {fam}")


def verra_cubic(a: int, b: int) -> int:
    """(a H1 + b H2)^3 on a (2,2) divisor of P2 x P2, by contracting the quadruple products."""
    Y = BASES["P2xP2"]
    cubic = contract(Y.tensor, Y.branch_class)
    x = (a, b)
    val = sum(cubic[i][j][k] * x[i] * x[j] * x[k] for i, j, k in itertools.product(range(2), repeat=3))
    if val != 6 * a * b * (a + b):
        raise ArithmeticError(f"cubic form mismatch at ({a}, {b}): {val}")  # pragma: no cover
    return val


# -- constructive basis completions ---------------------------------------------------


def complete_square2_basis(L: IntegerLattice, h, root: int = 0) -> tuple:
    """Given primitive h with h^2 = 2 in a lattice of rank 2 and determinant -12,
    return h' with h'^2 = 2 and h.h' = 4 such that (h, h') is a basis.

    Completes h to a basis (h, D) and solves k^2 + (D.h) k + (D^2/2 - 1) = 0,
    whose discriminant is 16; ``root`` 0 takes the root of smaller absolute
    value (the larger one on a tie), 1 the other root.
    The sign of h' is fixed by h.h' > 0.
    """
    h = tuple(h)
    if L.rank != 2 or det(L.gram) != -12:
        raise LatticeError("lattice must have rank 2 and determinant -12")
    if inner(L, h, h) != 2:
        raise LatticeError(f"h = {h} does not have square 2")
    B = primitive_and_complete(L, h)
    D = (B[0][1], B[1][1])
    dh, dd = inner(L, D, h), inner(L, D, D)
    disc = dh * dh - 4 * (dd // 2 - 1)
    if disc != 16:
        raise LatticeError(f"quadratic in k has discriminant {disc}, expected 16")  # pragma: no cover
    roots = sorted(((-dh + 4) // 2, (-dh - 4) // 2), key=lambda r: (abs(r), -r))
    k = roots[0] if root == 0 else roots[1]
    hp = tuple(D[i] + k * h[i] for i in range(2))
    if inner(L, h, hp) < 0:
        hp = tuple(-x for x in hp)
    if inner(L, hp, hp) != 2 or inner(L, h, hp) != 4:
        raise ArithmeticError("basis completion failed")  # pragma: no cover
    return hp


def _bezout(values):
    """Coefficients c with sum c_i v_i = gcd(values)."""
    g, coeffs = 0, [0] * len(values)
    for i, v in enumerate(values):
        g2, s, t = xgcd(g, v)
        coeffs = [s * c for c in coeffs]
        coeffs[i] = t
        g = g2
    return g, coeffs


L31_GRAM = ((0, 2, 2), (2, 0, 2), (2, 2, 0))


def complete_isotropic_basis(L: IntegerLattice, F) -> tuple:
    """Given primitive isotropic F in a lattice isometric to L_{3-1}, return (F', F'')
    such that (F, F', F'') has Gram [[0,2,2],[2,0,2],[2,2,0]].

    D' with F.D' = 2 comes from a Bezout relation on the pairings of F;
    F' = D' - (D'^2/4) F; D'' completes (F, F') to a basis and
    F'' = (1 - b) F + (1 - a) F' + D'' with F.D'' = 2a, F'.D'' = 2b.
    """
    F = tuple(F)
    if L.rank != 3 or det(L.gram) != 16:
        raise LatticeError("lattice must have rank 3 and determinant 16")
    if not is_primitive(F):
        raise LatticeError(f"F = {F} is not primitive")
    sq = inner(L, F, F)
    if sq != 0:
        raise LatticeError(f"F = {F} is not isotropic (square {sq})")
    if divisibility(L, F) != 2:
        raise LatticeError(f"F = {F} has divisibility {divisibility(L, F)}, expected 2")
    g, coeffs = _bezout(pairing_row(L, F))
    Dp = tuple(c * (2 // g) for c in coeffs)
    dsq = inner(L, Dp, Dp)
    if dsq % 4:
        raise LatticeError("lattice is not isometric to L_{3-1}: a square is not divisible by 4")
    Fp = tuple(d - (dsq // 4) * f for d, f in zip(Dp, F))
    basis = complete_to_basis([list(F), list(Fp)], 3)
    Dpp = tuple(basis[i][2] for i in range(3))
    a = inner(L, F, Dpp) // 2
    b = inner(L, Fp, Dpp) // 2
    Fpp = tuple((1 - b) * f + (1 - a) * fp + d for f, fp, d in zip(F, Fp, Dpp))
    vecs = (F, Fp, Fpp)
    gram = tuple(tuple(inner(L, u, v) for v in vecs) for u in vecs)
    if gram != L31_GRAM or abs(det([[vecs[j][i] for j in range(3)] for i in range(3)])) != 1:
        raise LatticeError("lattice is not isometric to L_{3-1}")
    return Fp, Fpp


# -- finite forms -----------------------------------------------------------------------


def van_geemen_form() -> FiniteQuadraticModule:
    """(Z/2)^3 with q(x, y, z) = x^2/2 + yz mod 2."""
    h = Fraction(1, 2)
    return FiniteQuadraticModule.from_table(
        (2, 2, 2), (h, 0, 0), ((h, 0, 0), (0, 0, h), (0, h, 0)), name="van Geemen form"
    )


def nonzero_isotropic(A: FiniteQuadraticModule) -> list:
    z = A.zero()
    return [x for x in A.elements() if x != z and A.q(x) == 0]


def structure_count_report(A: FiniteQuadraticModule, classes, hodge_group) -> dict:
    """Conditional count of geometric structures attached to discriminant classes.

    ``classes`` are the discriminant-group classes (e.g. 1/2 h for sextic
    structures) that a structure can induce.  Without a Hodge assumption the
    count is at most len(classes); under the given Hodge image it equals the
    number of orbits of that image on the classes.
    """
    cls = sorted(set(classes))
    orbits = set()
    for x in cls:
        orbits.add(min(phi.apply(x) for phi in hodge_group))
    return {"at_most": len(cls), "under_hodge_assumption": len(orbits)}


def signature_of_family(family: str):
    return basic_invariants(ns_lattice_of_branch(family)).signature
