"""Finite quadratic modules: discriminant groups A_L = L*/L and abstract forms.

Elements are tuples of residues ``(c_1, ..., c_k)`` with ``0 <= c_i < d_i``
with respect to a fixed generating set of cyclic factors.  Quadratic values
live in Q/2Z (reduced to [0, 2)) and bilinear values in Q/Z (reduced to
[0, 1)).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Sequence

from .lattice import IntegerLattice, LatticeError
from .linalg import hermite_rows, inverse_rational, smith_normal_form

DEFAULT_BUDGET = 10_000


class BudgetExceeded(RuntimeError):
    """An exhaustive enumeration would exceed its configured budget."""


class NotIsotropicError(LatticeError):
    def __init__(self, element, value):
        super().__init__(f"subgroup is not isotropic: q{tuple(element)} = {value}")
        self.element = tuple(element)
        self.value = value


def mod2(x) -> Fraction:
    return Fraction(x) % 2


def mod1(x) -> Fraction:
    return Fraction(x) % 1


@dataclass(frozen=True, eq=False)
class FiniteQuadraticModule:
    """Finite abelian group sum Z/d_i with a Q/2Z-valued quadratic form.

    ``q_gens[i]`` is q of the i-th generator and ``b_gens[i][j]`` the bilinear
    value of generators i, j; together they determine q everywhere.  Modules
    built from a lattice also carry rational generator vectors and the ambient
    Gram matrix, and q is then evaluated as x.G.x directly.
    """

    divisors: tuple
    q_gens: tuple
    b_gens: tuple
    generators: Optional[tuple] = None
    gram_ambient: Optional[tuple] = None
    coordinate_map: Optional[tuple] = None
    name: Optional[str] = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    # -- construction --------------------------------------------------------

    @classmethod
    def from_table(cls, divisors, q_gens, b_gens, name=None):
        """Abstract module from generator orders, q-values and bilinear values."""
        k = len(divisors)
        if any(d < 2 for d in divisors):
            raise LatticeError("cyclic factors must have order >= 2")
        q = tuple(mod2(x) for x in q_gens)
        b = tuple(tuple(mod1(b_gens[i][j]) for j in range(k)) for i in range(k))
        for i in range(k):
            if b[i][i] != q[i] % 1:
                raise LatticeError(f"b(g{i}, g{i}) must equal q(g{i}) mod 1")
            for j in range(k):
                if b[i][j] != b[j][i]:
                    raise LatticeError("bilinear table must be symmetric")
                if mod1(divisors[i] * b[i][j]) != 0:
                    raise LatticeError(f"b(g{i}, g{j}) is not well defined")
            if mod2(divisors[i] ** 2 * q[i]) != 0:
                raise LatticeError(f"q is not well defined on generator {i}")
        return cls(tuple(divisors), q, b, name=name)

    # -- group structure ------------------------------------------------------

    @property
    def order(self) -> int:
        out = 1
        for d in self.divisors:
            out *= d
        return out

    @property
    def ngens(self) -> int:
        return len(self.divisors)

    def zero(self):
        return (0,) * self.ngens

    def reduce(self, x):
        return tuple(c % d for c, d in zip(x, self.divisors))

    def add(self, x, y):
        return tuple((a + b) % d for a, b, d in zip(x, y, self.divisors))

    def neg(self, x):
        return tuple(-a % d for a, d in zip(x, self.divisors))

    def scale(self, k, x):
        return tuple(k * a % d for a, d in zip(x, self.divisors))

    def element_order(self, x) -> int:
        out = 1
        for a, d in zip(x, self.divisors):
            out = lcm(out, d // gcd(a, d))
        return out

    def elements(self):
        """All elements in lexicographic order of their residue tuples."""
        if "elements" not in self._cache:
            self._cache["elements"] = list(itertools.product(*(range(d) for d in self.divisors)))
        return self._cache["elements"]

    def check_element(self, x):
        if len(x) != self.ngens or any(not 0 <= c < d for c, d in zip(x, self.divisors)):
            raise LatticeError(f"{tuple(x)} is not an element of a group with divisors {self.divisors}")

    # -- forms -----------------------------------------------------------------

    def element_vector(self, x):
        """Rational representative in the ambient lattice basis (lattice-derived modules only)."""
        if self.generators is None:
            raise LatticeError("module has no ambient lattice")
        n = len(self.gram_ambient)
        return [sum(Fraction(c) * g[i] for c, g in zip(x, self.generators)) for i in range(n)]

    def _vq(self, v, w):
        g = self.gram_ambient
        n = len(g)
        return sum(v[i] * g[i][j] * w[j] for i in range(n) for j in range(n))

    def _scaled_generators(self):
        """(den, integer rows) with den * generator_i integral; keeps q in integer arithmetic."""
        if "scaled" not in self._cache:
            den = 1
            for gen in self.generators:
                for c in gen:
                    den = lcm(den, c.denominator)
            rows = tuple(tuple(int(c * den) for c in gen) for gen in self.generators)
            self._cache["scaled"] = (den, rows)
        return self._cache["scaled"]

    def q(self, x) -> Fraction:
        qc = self._cache.setdefault("q", {})
        val = qc.get(x)
        if val is None:
            if self.generators is not None:
                den, rows = self._scaled_generators()
                n = len(self.gram_ambient)
                v = [sum(c * r[i] for c, r in zip(x, rows)) for i in range(n)]
                val = mod2(Fraction(self._vq(v, v), den * den))
            else:
                val = self.q_table(x)
            qc[x] = val
        return val

    def q_table(self, x) -> Fraction:
        s = Fraction(0)
        k = self.ngens
        for i in range(k):
            if x[i]:
                s += x[i] * x[i] * self.q_gens[i]
                for j in range(i + 1, k):
                    if x[j]:
                        s += 2 * x[i] * x[j] * self.b_gens[i][j]
        return mod2(s)

    def b(self, x, y) -> Fraction:
        if self.generators is not None:
            den, rows = self._scaled_generators()
            n = len(self.gram_ambient)
            v = [sum(c * r[i] for c, r in zip(x, rows)) for i in range(n)]
            w = [sum(c * r[i] for c, r in zip(y, rows)) for i in range(n)]
            return mod1(Fraction(self._vq(v, w), den * den))
        s = Fraction(0)
        for i, a in enumerate(x):
            if a:
                for j, c in enumerate(y):
                    if c:
                        s += a * c * self.b_gens[i][j]
        return mod1(s)

    def element_from_vector(self, r):
        """FQM element of a rational vector r in L* (lattice-derived modules only)."""
        if self.coordinate_map is None:
            raise LatticeError("module has no coordinate map to the dual lattice")
        g = self.gram_ambient
        n = len(g)
        dual = [sum(Fraction(r[j]) * g[j][i] for j in range(n)) for i in range(n)]
        if any(x.denominator != 1 for x in dual):
            raise LatticeError(f"{list(r)} is not in the dual lattice")
        dual = [int(x) for x in dual]
        return tuple(sum(u * y for u, y in zip(row, dual)) % d for row, d in zip(self.coordinate_map, self.divisors))

    def is_nondegenerate(self) -> bool:
        if "nondeg" not in self._cache:
            elems = self.elements()
            z = self.zero()
            ok = True
            for x in elems:
                if x != z and all(self.b(x, y) == 0 for y in self.generator_elements()):
                    ok = False
                    break
            self._cache["nondeg"] = ok
        return self._cache["nondeg"]

    def generator_elements(self):
        k = self.ngens
        return [tuple(int(i == j) for j in range(k)) for i in range(k)]

    def to_json(self):
        out = {
            "order": self.order,
            "divisors": list(self.divisors),
            "q_generators": [str(x) for x in self.q_gens],
            "b_generators": [[str(x) for x in row] for row in self.b_gens],
        }
        if self.generators is not None:
            out["generators"] = [[str(c) for c in g] for g in self.generators]
        return out


FQMElement = tuple


@dataclass(frozen=True)
class FQMAutomorphism:
    """Group homomorphism given by the images of the generators.

    ``divisors`` are those of the target module; for automorphisms they
    coincide with the source.
    """

    images: tuple
    divisors: tuple

    def apply(self, x):
        out = [0] * len(self.divisors)
        for c, img in zip(x, self.images):
            if c:
                for i, a in enumerate(img):
                    out[i] += c * a
        return tuple(o % d for o, d in zip(out, self.divisors))

    __call__ = apply

    def __mul__(self, other: "FQMAutomorphism") -> "FQMAutomorphism":
        # (self * other)(x) = self(other(x))
        return FQMAutomorphism(tuple(self.apply(img) for img in other.images), self.divisors)

    def is_identity(self) -> bool:
        k = len(self.images)
        return all(img == tuple(int(i == j) for j in range(k)) for i, img in enumerate(self.images))

    def inverse(self) -> "FQMAutomorphism":
        p = self
        prev = identity(self.divisors)
        while not p.is_identity():
            prev = p
            p = p * self
        return prev

    def to_json(self):
        return [list(img) for img in self.images]


def identity(divisors) -> FQMAutomorphism:
    k = len(divisors)
    return FQMAutomorphism(tuple(tuple(int(i == j) for j in range(k)) for i in range(k)), tuple(divisors))


def negation(divisors) -> FQMAutomorphism:
    k = len(divisors)
    return FQMAutomorphism(
        tuple(tuple((-int(i == j)) % divisors[j] for j in range(k)) for i in range(k)), tuple(divisors)
    )


def generate_group(gens, unit):
    """Closure of ``gens`` under multiplication, sorted."""
    seen = {unit}
    frontier = [unit]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = g * s
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return sorted(seen, key=lambda a: a.images)


# -- discriminant groups ---------------------------------------------------------


def discriminant_group(L: IntegerLattice) -> FiniteQuadraticModule:
    """A_L = L*/L from the Smith normal form U G V = diag(d) of the Gram matrix.

    The generator of the factor Z/d_i is the column V e_i / d_i, reduced into
    [0, 1) coordinatewise.
    """
    g = L.matrix()
    n = L.rank
    d, u, v = smith_normal_form(g)
    keep = [i for i in range(n) if d[i] > 1]
    gens = []
    for i in keep:
        vec = tuple(mod1(Fraction(v[r][i], d[i])) for r in range(n))
        gens.append(vec)
    divisors = tuple(d[i] for i in keep)
    k = len(keep)

    den = 1
    for x in gens:
        for c in x:
            den = lcm(den, c.denominator)
    ints = [[int(c * den) for c in x] for x in gens]
    gi = [[sum(g[r][c] * w[c] for c in range(n)) for r in range(n)] for w in ints]

    def pair(i, j):
        return Fraction(sum(ints[i][r] * gi[j][r] for r in range(n)), den * den)

    q = tuple(mod2(pair(i, i)) for i in range(k))
    b = tuple(tuple(mod1(pair(i, j)) for j in range(k)) for i in range(k))
    return FiniteQuadraticModule(
        divisors,
        q,
        b,
        generators=tuple(gens),
        gram_ambient=L.gram,
        coordinate_map=tuple(tuple(u[i]) for i in keep),
        name=L.name,
    )


def qf_values(A: FiniteQuadraticModule, x, y):
    """(q(x) in [0, 2), b(x, y) in [0, 1))."""
    A.check_element(x)
    A.check_element(y)
    return A.q(x), A.b(x, y)


def _check_budget(A, budget):
    if A.order > budget:
        raise BudgetExceeded(f"|A| = {A.order} exceeds the enumeration budget {budget}")


# -- subgroups ---------------------------------------------------------------------


@dataclass(frozen=True)
class Subgroup:
    generators: tuple
    elements: tuple

    @property
    def order(self):
        return len(self.elements)

    def to_json(self):
        return {
            "order": self.order,
            "generators": [list(g) for g in self.generators],
            "elements": [list(e) for e in self.elements],
        }


def span(A: FiniteQuadraticModule, gens) -> tuple:
    """Sorted elements of the subgroup generated by ``gens``."""
    elems = {A.zero()}
    for g in gens:
        g = A.reduce(g)
        multiples = []
        m = A.zero()
        while True:
            multiples.append(m)
            m = A.add(m, g)
            if m == A.zero():
                break
        elems = {A.add(e, t) for e in elems for t in multiples}
    return tuple(sorted(elems))


def _canonical_generators(A, elements):
    """Greedy generating set: smallest elements, each enlarging the span."""
    gens = []
    current = {A.zero()}
    target = len(elements)
    for x in elements:
        if len(current) == target:
            break
        if x not in current:
            gens.append(x)
            current = set(span(A, gens))
    return tuple(gens)


def make_subgroup(A, gens) -> Subgroup:
    elems = span(A, gens)
    return Subgroup(_canonical_generators(A, elems), elems)


def isotropic_subgroups(A: FiniteQuadraticModule, order: int, budget: int = DEFAULT_BUDGET) -> list:
    """All subgroups of the given order on which q vanishes identically."""
    if order < 1 or A.order % order:
        raise LatticeError(f"order {order} does not divide |A| = {A.order}")
    _check_budget(A, budget)
    zero = A.zero()
    if order == 1:
        return [Subgroup((), (zero,))]
    iso = [x for x in A.elements() if x != zero and A.q(x) == 0 and order % A.element_order(x) == 0]
    layer = {(zero,)}
    found = set()
    while layer:
        nxt = set()
        for elems in layer:
            have = set(elems)
            for x in iso:
                if x in have:
                    continue
                new = span(A, list(elems) + [x]) if len(elems) > 1 else span(A, [x])
                if order % len(new):
                    continue
                if any(A.q(y) != 0 for y in new):
                    continue
                if len(new) == order:
                    found.add(new)
                else:
                    nxt.add(new)
        layer = nxt
    return [Subgroup(_canonical_generators(A, e), e) for e in sorted(found)]


# -- isometries ----------------------------------------------------------------------


def _isometry_search(A1, A2, budget, first_only):
    _check_budget(A1, budget)
    _check_budget(A2, budget)
    if A1.order != A2.order:
        return []
    k = A1.ngens
    cands = []
    for i in range(k):
        d, qv = A1.divisors[i], A1.q_gens[i]
        cands.append([x for x in A2.elements() if A2.element_order(x) == d and A2.q(x) == qv])
        if not cands[-1]:
            return []
    check_injective = not A1.is_nondegenerate()
    found = []
    chosen = []

    def rec(i):
        if i == k:
            phi = FQMAutomorphism(tuple(chosen), A2.divisors)
            if check_injective:
                imgs = {phi.apply(x) for x in A1.elements()}
                if len(imgs) != A1.order:
                    return False
            found.append(phi)
            return first_only
        for x in cands[i]:
            if all(A2.b(x, chosen[j]) == A1.b_gens[i][j] for j in range(i)):
                chosen.append(x)
                if rec(i + 1):
                    return True
                chosen.pop()
        return False

    if k == 0:
        return [FQMAutomorphism((), A2.divisors)] if A2.order == 1 else []
    rec(0)
    return found


def orthogonal_group(A: FiniteQuadraticModule, budget: int = DEFAULT_BUDGET) -> list:
    """Every q-preserving automorphism of A, sorted by generator images.

    Candidate images of each generator are filtered by (order, q-value) and
    pairwise bilinear values; raises BudgetExceeded for |A| > budget.
    """
    return sorted(_isometry_search(A, A, budget, first_only=False), key=lambda a: a.images)


def qf_isometric(A1: FiniteQuadraticModule, A2: FiniteQuadraticModule, budget: int = DEFAULT_BUDGET):
    """A q-preserving isomorphism A1 -> A2, or None when none exists."""
    res = _isometry_search(A1, A2, budget, first_only=True)
    return res[0] if res else None


def is_isometry(A1, A2, phi: FQMAutomorphism) -> bool:
    """Brute-force verification that phi is a bijective q-preserving map A1 -> A2."""
    images = set()
    for x in A1.elements():
        y = phi.apply(x)
        if A2.q(y) != A1.q(x):
            return False
        images.add(y)
    return len(images) == A1.order == A2.order


# -- primary parts, quotients, overlattices ------------------------------------------


def _derived(A, gens_coeffs, divisors, name=None):
    """Module on the given elements of A (assumed to generate an internal direct sum)."""
    k = len(gens_coeffs)
    q = tuple(A.q(x) for x in gens_coeffs)
    b = tuple(tuple(A.b(gens_coeffs[i], gens_coeffs[j]) for j in range(k)) for i in range(k))
    vecs = None
    if A.generators is not None:
        vecs = tuple(tuple(mod1(c) for c in A.element_vector(x)) for x in gens_coeffs)
    return FiniteQuadraticModule(tuple(divisors), q, b, generators=vecs, gram_ambient=A.gram_ambient, name=name)


def primary_part(A: FiniteQuadraticModule, p: int) -> FiniteQuadraticModule:
    """The p-Sylow subgroup with the restricted form."""
    if p < 2 or any(p % r == 0 for r in range(2, int(p**0.5) + 1)):
        raise LatticeError(f"{p} is not prime")
    gens, divs = [], []
    for i, d in enumerate(A.divisors):
        pk = 1
        while d % (pk * p) == 0:
            pk *= p
        if pk > 1:
            e = [0] * A.ngens
            e[i] = d // pk
            gens.append(tuple(e))
            divs.append(pk)
    return _derived(A, gens, divs)


def orthogonal_complement(A: FiniteQuadraticModule, elements) -> tuple:
    gens = _canonical_generators(A, span(A, elements))
    return tuple(x for x in A.elements() if all(A.b(x, h) == 0 for h in gens))


def subquotient(A: FiniteQuadraticModule, k_gens, h_gens) -> FiniteQuadraticModule:
    """K/H for subgroups H <= K of A, with q restricted from A.

    The form is only well defined when H is isotropic and orthogonal to K (as
    for K = H^perp); this is checked.
    """
    k = A.ngens
    kset = set(span(A, k_gens))
    hset = span(A, h_gens)
    if not set(hset) <= kset:
        raise LatticeError("H is not contained in K")
    for h in hset:
        if A.q(h) != 0 or any(A.b(h, x) != 0 for x in k_gens):
            raise LatticeError("q does not descend to K/H")
    rel = [[A.divisors[i] * int(i == j) for j in range(k)] for i in range(k)]
    kbasis_h, _ = hermite_rows([list(x) for x in k_gens] + rel)
    kb = [row for row in kbasis_h if any(row)]
    kinv = inverse_rational(kb)
    hrows = [list(x) for x in h_gens] + rel
    coords = [[int(sum(Fraction(r[i]) * kinv[i][j] for i in range(k))) for j in range(k)] for r in hrows]
    d, _, v = smith_normal_form(coords)
    vinv = inverse_rational(v)
    gens, divs = [], []
    for i in range(k):
        if d[i] > 1:
            w = [int(x) for x in vinv[i]]
            elem = tuple(sum(w[r] * kb[r][j] for r in range(k)) for j in range(k))
            gens.append(A.reduce(elem))
            divs.append(d[i])
    return _derived(A, gens, divs)


def overlattice(L: IntegerLattice, H_gens: Sequence, A: Optional[FiniteQuadraticModule] = None) -> IntegerLattice:
    """The even overlattice L + <H> for an isotropic subgroup H of A_L.

    The result is expressed in the Hermite-normal-form basis of the overlattice
    (rows of the HNF of the generating set, scaled by a common denominator) so
    the output is canonical for a given subgroup.
    """
    A = A or discriminant_group(L)
    H_gens = [A.reduce(tuple(h)) for h in H_gens]
    for h in H_gens:
        A.check_element(h)
    for x in span(A, H_gens):
        if A.q(x) != 0:
            raise NotIsotropicError(x, A.q(x))
    n = L.rank
    den, h = _overlattice_hnf(L, H_gens, A)
    g = L.gram
    den2 = den * den
    gram = []
    for a in h:
        row = []
        for bvec in h:
            val = sum(a[i] * g[i][j] * bvec[j] for i in range(n) for j in range(n))
            if val % den2:
                raise NotIsotropicError(H_gens[0], A.q(H_gens[0]))
            row.append(val // den2)
        gram.append(row)
    return IntegerLattice(gram, L.name)


def _overlattice_hnf(L, H_gens, A):
    n = L.rank
    den, scaled = A._scaled_generators()
    vecs = [[sum(c * r[i] for c, r in zip(A.reduce(tuple(x)), scaled)) for i in range(n)] for x in H_gens]
    rows = [[den * int(i == j) for j in range(n)] for i in range(n)] + vecs
    h, _ = hermite_rows(rows)
    return den, h[:n]


def overlattice_basis(L: IntegerLattice, H_gens, A=None):
    """Rational basis rows of the overlattice, in the basis of L (same HNF as :func:`overlattice`)."""
    A = A or discriminant_group(L)
    den, h = _overlattice_hnf(L, H_gens, A)
    return [[Fraction(c, den) for c in row] for row in h]


def group_report(elements) -> dict:
    return {"order": len(elements), "elements": sorted(list(e) for e in elements)}
