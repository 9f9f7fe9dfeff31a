"""Fourier-Mukai partner counts as sums of double-coset counts.

For each lattice N in the genus of the Neron-Severi lattice the summand is
the number of double cosets image(O(N)) \\ O(A_N) / image(O_Hodge(T)).  The
image of O(N) is found by a bounded isometry search and is reported as
saturated only when it already equals the whole of O(A_N).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .discriminant import (
    DEFAULT_BUDGET,
    FQMAutomorphism,
    FiniteQuadraticModule,
    discriminant_group,
    generate_group,
    identity,
    is_isometry,
    negation,
    orthogonal_group,
)
from .genus import lattices_isometric_rank2, same_genus
from .lattice import IntegerLattice, LatticeError, inner, represent


def lattice_isometries(L: IntegerLattice, bound: int) -> list:
    """Integer matrices M with entries in [-bound, bound] and M^T G M = G.

    Each matrix is returned as a tuple of columns (images of the basis vectors).
    """
    n = L.rank
    cands = [represent(L, L.gram[j][j], bound) for j in range(n)]
    out = []
    cols = []

    def rec(j):
        if j == n:
            out.append(tuple(cols))
            return
        for v in cands[j]:
            if all(inner(L, cols[i], v) == L.gram[i][j] for i in range(j)):
                cols.append(v)
                rec(j + 1)
                cols.pop()

    rec(0)
    return out


def induced_action(A: FiniteQuadraticModule, columns) -> FQMAutomorphism:
    """The map on A_L induced by the isometry sending e_j to columns[j]."""
    n = len(columns)
    images = []
    for g in A.generators:
        r = [sum(columns[j][i] * g[j] for j in range(n)) for i in range(n)]
        images.append(A.element_from_vector(r))
    return FQMAutomorphism(tuple(images), A.divisors)


@dataclass(frozen=True)
class IsometryImage:
    """Image of the found isometries in O(A_L); a subgroup of the true image."""

    group: tuple
    isometries_found: int
    saturated: bool
    orthogonal_group_order: int
    label: str = "image of found isometries"


def isometry_image(L: IntegerLattice, bound: int, budget: int = DEFAULT_BUDGET, A=None) -> IsometryImage:
    A = A or discriminant_group(L)
    full = orthogonal_group(A, budget)
    isos = lattice_isometries(L, bound)
    acts = {induced_action(A, M) for M in isos}
    group = generate_group(sorted(acts, key=lambda a: a.images), identity(A.divisors))
    return IsometryImage(tuple(group), len(isos), len(group) == len(full), len(full))


def _is_subgroup(H, G):
    gs = set(G)
    hs = set(H)
    return hs <= gs and bool(hs) and all(a * b in hs for a in hs for b in hs)


def double_coset_count(G, H1, H2) -> int:
    """Number of orbits of H1 x H2 on G acting by (h1, h2) . g = h1 g h2^-1.

    Group elements must support ``*`` and ``inverse()`` and be hashable.
    """
    G = list(G)
    if not _is_subgroup(G, G):
        raise LatticeError("G is not closed under multiplication")
    for name, H in (("H1", H1), ("H2", H2)):
        if not _is_subgroup(H, G):
            raise LatticeError(f"{name} is not a subgroup of G")
    H2inv = [h.inverse() for h in H2]
    seen = set()
    orbits = 0
    for g in G:
        if g in seen:
            continue
        orbits += 1
        stack = [g]
        seen.add(g)
        while stack:
            x = stack.pop()
            for h1 in H1:
                for h2 in H2inv:
                    y = h1 * x * h2
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
    return orbits


@dataclass(frozen=True)
class HodgeImageSpec:
    """Assumed image of O_Hodge(T) in O(A_N): {+-id} or explicit generators."""

    mode: str = "plus-minus-id"
    explicit_generators: tuple = ()

    def group_on(self, A: FiniteQuadraticModule) -> list:
        unit = identity(A.divisors)
        if self.mode == "plus-minus-id":
            return generate_group([negation(A.divisors)], unit)
        if self.mode != "explicit":
            raise LatticeError(f"unknown hodge mode {self.mode!r}")
        gens = []
        for imgs in self.explicit_generators:
            if len(imgs) != A.ngens:
                raise LatticeError(f"hodge generator {imgs} has the wrong number of images for A = {A.divisors}")
            phi = FQMAutomorphism(tuple(A.reduce(tuple(x)) for x in imgs), A.divisors)
            if not is_isometry(A, A, phi):
                raise LatticeError(f"hodge generator {imgs} is not an isometry of A = {A.divisors}")
            gens.append(phi)
        return generate_group(gens, unit)

    @classmethod
    def from_json(cls, doc):
        if doc in (None, "pm-id", "plus-minus-id"):
            return cls()
        if isinstance(doc, dict) and "generators" in doc:
            gens = tuple(tuple(tuple(int(c) for c in x) for x in g) for g in doc["generators"])
            return cls("explicit", gens)
        raise LatticeError(f"unrecognised hodge specification {doc!r}")

    def to_json(self):
        if self.mode == "plus-minus-id":
            return "pm-id"
        return {"generators": [[list(x) for x in g] for g in self.explicit_generators]}


@dataclass(frozen=True)
class FMCountProblem:
    ns: IntegerLattice
    genus_reps: tuple
    hodge: HodgeImageSpec = field(default_factory=HodgeImageSpec)
    search_bound: int = 5

    @classmethod
    def from_json(cls, doc):
        if not isinstance(doc, dict) or "ns" not in doc:
            raise LatticeError("problem document needs an 'ns' field")
        ns = IntegerLattice.from_json(doc["ns"])
        if "genus_reps" in doc:
            reps = tuple(IntegerLattice.from_json(g) for g in doc["genus_reps"])
        elif ns.rank == 2:
            from .genus import genus_representatives_rank2

            reps = tuple(genus_representatives_rank2(ns))
        else:
            raise LatticeError("'genus_reps' is required for rank >= 3")
        bound = doc.get("search_bound", 5)
        if isinstance(bound, bool) or not isinstance(bound, int) or bound < 1:
            raise LatticeError("'search_bound' must be a positive integer")
        return cls(ns, reps, HodgeImageSpec.from_json(doc.get("hodge")), bound)

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            return cls.from_json(json.load(fh))

    def to_json(self):
        return {
            "ns": [list(r) for r in self.ns.gram],
            "genus_reps": [[list(r) for r in N.gram] for N in self.genus_reps],
            "hodge": self.hodge.to_json(),
            "search_bound": self.search_bound,
        }


def _isometric(L1, L2):
    if L1.gram == L2.gram:
        return True
    if L1.rank == 2 and L2.rank == 2 and L1.gram[0][0] * L1.gram[1][1] < L1.gram[0][1] ** 2:
        return lattices_isometric_rank2(L1, L2)
    return False


def validate_problem(p: FMCountProblem, budget: int = DEFAULT_BUDGET) -> None:
    if not p.genus_reps:
        raise LatticeError("genus_reps is empty")
    for N in p.genus_reps:
        if not same_genus(p.ns, N, budget):
            raise LatticeError(f"genus representative {N.gram} is not in the genus of ns")
    if not any(_isometric(p.ns, N) for N in p.genus_reps):
        raise LatticeError("ns does not appear among genus_reps")


@dataclass(frozen=True)
class FMCountResult:
    count: int
    summands: tuple
    warnings: tuple
    exact: bool

    def to_json(self):
        return {"count": self.count, "exact": self.exact, "summands": list(self.summands)}


def fm_partner_count(p: FMCountProblem, budget: int = DEFAULT_BUDGET) -> FMCountResult:
    validate_problem(p, budget)
    total = 0
    summands = []
    warnings = []
    for N in p.genus_reps:
        A = discriminant_group(N)
        G = orthogonal_group(A, budget)
        img = isometry_image(N, p.search_bound, budget, A)
        hodge = p.hodge.group_on(A)
        k = double_coset_count(G, img.group, hodge)
        total += k
        summands.append(
            {
                "gram": [list(r) for r in N.gram],
                "orthogonal_group_order": len(G),
                "isometry_image_order": len(img.group),
                "isometries_found": img.isometries_found,
                "hodge_image_order": len(hodge),
                "saturated": img.saturated,
                "double_cosets": k,
            }
        )
        if not img.saturated:
            warnings.append(
                f"isometry image for {[list(r) for r in N.gram]} is a proper subgroup "
                f"({len(img.group)} of {len(G)}) at bound {p.search_bound}; summand is an upper bound"
            )
    return FMCountResult(total, tuple(summands), tuple(warnings), not warnings)
