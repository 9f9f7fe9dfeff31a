"""Line-bundle cohomology on products of projective spaces (Bott formula + Kunneth),
and the exceptional-collection and mutation checks built on it.

Mutation convention: the right mutation of F through an exceptional E sits in
the triangle  R_E F -> F -> E (x) Hom^*(F, E)^dual.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb

from .lattice import LatticeError


@dataclass(frozen=True)
class ProductSpace:
    factors: tuple

    def __post_init__(self):
        f = tuple(self.factors)
        if not f or any(isinstance(n, bool) or not isinstance(n, int) or n < 1 for n in f):
            raise LatticeError("factors must be a nonempty list of positive integers")
        object.__setattr__(self, "factors", f)

    @property
    def dimension(self) -> int:
        return sum(self.factors)

    def canonical(self) -> "LineBundleClass":
        return LineBundleClass(tuple(-n - 1 for n in self.factors))

    def check(self, L: "LineBundleClass"):
        if len(L.degrees) != len(self.factors):
            raise LatticeError(f"line bundle {L.degrees} does not match space with factors {self.factors}")


@dataclass(frozen=True, order=True)
class LineBundleClass:
    degrees: tuple

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))

    def __add__(self, other):
        return LineBundleClass(tuple(a + b for a, b in zip(self.degrees, other.degrees)))

    def __sub__(self, other):
        return LineBundleClass(tuple(a - b for a, b in zip(self.degrees, other.degrees)))

    def __str__(self):
        return "O(" + ",".join(str(d) for d in self.degrees) + ")"


@dataclass(frozen=True)
class CohomologyTable:
    """h^i for i = 0 .. len(dims) - 1."""

    dims: tuple

    def __getitem__(self, i):
        return self.dims[i] if 0 <= i < len(self.dims) else 0

    @property
    def euler(self) -> int:
        return sum((-1) ** i * h for i, h in enumerate(self.dims))

    @property
    def total(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return not any(self.dims)

    def is_point(self) -> bool:
        """One-dimensional, concentrated in degree 0."""
        return self.dims[0] == 1 and not any(self.dims[1:])

    def nonzero(self) -> dict:
        return {i: h for i, h in enumerate(self.dims) if h}

    def to_json(self):
        return {str(i): h for i, h in self.nonzero().items()}


def bott_dims(n: int, d: int) -> CohomologyTable:
    """Cohomology of O(d) on P^n."""
    dims = [0] * (n + 1)
    if d >= 0:
        dims[0] = comb(n + d, n)
    elif d <= -n - 1:
        dims[n] = comb(-d - 1, n)
    return CohomologyTable(tuple(dims))


def euler_poly(n: int, d: int) -> int:
    """chi(O(d)) on P^n as the polynomial (d+1)(d+2)...(d+n)/n!, valid for every d."""
    num = 1
    for i in range(1, n + 1):
        num *= d + i
    den = 1
    for i in range(1, n + 1):
        den *= i
    return num // den


def line_bundle_cohomology(S: ProductSpace, L: LineBundleClass) -> CohomologyTable:
    """Kunneth: graded tensor product of the per-factor Bott tables."""
    S.check(L)
    acc = [1]
    for n, d in zip(S.factors, L.degrees):
        t = bott_dims(n, d).dims
        nxt = [0] * (len(acc) + len(t) - 1)
        for i, a in enumerate(acc):
            if a:
                for j, b in enumerate(t):
                    if b:
                        nxt[i + j] += a * b
        acc = nxt
    return CohomologyTable(tuple(acc))


def ext_table(S: ProductSpace, L1: LineBundleClass, L2: LineBundleClass) -> CohomologyTable:
    """Ext^*(L1, L2) = H^*(L2 - L1)."""
    S.check(L1)
    S.check(L2)
    return line_bundle_cohomology(S, L2 - L1)


def chi(S: ProductSpace, L: LineBundleClass) -> int:
    out = 1
    for n, d in zip(S.factors, L.degrees):
        out *= euler_poly(n, d)
    return out


def chi_pair(S: ProductSpace, A: LineBundleClass, B: LineBundleClass) -> int:
    """Euler form sum (-1)^i dim Ext^i(A, B)."""
    return chi(S, B - A)


@dataclass
class Report:
    passed: bool
    violations: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def to_json(self):
        return {"passed": self.passed, "violations": self.violations, **self.details}


def check_collection(S: ProductSpace, C) -> Report:
    """Every member exceptional and Ext^*(E_j, E_i) = 0 for j > i."""
    C = [c if isinstance(c, LineBundleClass) else LineBundleClass(tuple(c)) for c in C]
    if not C:
        raise LatticeError("collection is empty")
    for c in C:
        S.check(c)
    violations = []
    for i, E in enumerate(C):
        t = ext_table(S, E, E)
        if not t.is_point():
            violations.append({"kind": "not exceptional", "index": i, "bundle": list(E.degrees), "ext": t.to_json()})
    for i in range(len(C)):
        for j in range(i + 1, len(C)):
            t = ext_table(S, C[j], C[i])
            if not t.is_zero():
                violations.append(
                    {
                        "kind": "nonzero backward ext",
                        "from_index": j,
                        "to_index": i,
                        "from": list(C[j].degrees),
                        "to": list(C[i].degrees),
                        "ext": t.to_json(),
                    }
                )
    return Report(not violations, violations, {"length": len(C)})


def probe_grid(S: ProductSpace, radius: int = 3):
    rng = range(-radius, radius + 1)
    return [LineBundleClass(t) for t in itertools.product(rng, repeat=len(S.factors))]


def mutation_check(S: ProductSpace, E, F, G, shift: int, radius: int = 3) -> Report:
    """Numerical verification of R_E F = G[shift].

    Hom level: Hom^*(F, E) is computed; the candidate G[shift] must lie in the
    left orthogonal of E (Hom^*(G, E) = 0) and ranks must satisfy
    (-1)^shift rk G = rk F - chi(F, E) rk E.
    K-theory level: for each twist t on the probe grid,
    (-1)^shift chi(G(t)) = chi(F(t)) - chi(F, E) chi(E(t)).
    """
    E, F, G = (x if isinstance(x, LineBundleClass) else LineBundleClass(tuple(x)) for x in (E, F, G))
    for x in (E, F, G):
        S.check(x)
    if not ext_table(S, E, E).is_point():
        raise LatticeError(f"{E} is not exceptional")
    sign = -1 if shift % 2 else 1
    hom_fe = ext_table(S, F, E)
    chi_fe = hom_fe.euler
    violations = []
    g_to_e = ext_table(S, G, E)
    if not g_to_e.is_zero():
        violations.append({"level": "hom", "kind": "G not left orthogonal to E", "ext": g_to_e.to_json()})
    if sign * 1 != 1 - chi_fe * 1:
        violations.append({"level": "hom", "kind": "rank mismatch", "expected": 1 - chi_fe, "got": sign})
    probes = []
    for t in probe_grid(S, radius):
        lhs = sign * chi(S, G + t)
        rhs = chi(S, F + t) - chi_fe * chi(S, E + t)
        ok = lhs == rhs
        probes.append({"twist": list(t.degrees), "lhs": lhs, "rhs": rhs, "passed": ok})
        if not ok:
            violations.append({"level": "k-theory", "twist": list(t.degrees), "lhs": lhs, "rhs": rhs})
    details = {
        "hom_F_E": hom_fe.to_json(),
        "chi_F_E": chi_fe,
        "probe_radius": radius,
        "probes_passed": sum(p["passed"] for p in probes),
        "probes_total": len(probes),
        "probes": probes,
    }
    return Report(not violations, violations, details)


P1_CUBED = ProductSpace((1, 1, 1))

COLLECTION_3_1 = tuple(
    LineBundleClass(d)
    for d in [
        (-1, -1, -1),
        (0, -1, -1),
        (-1, 0, -1),
        (-1, -1, 0),
        (0, 0, 0),
        (1, 0, 0),
        (0, 1, 0),
        (0, 0, 1),
    ]
)

MUTATIONS_3_1 = tuple(
    (LineBundleClass((0, 0, 0)), LineBundleClass(f), LineBundleClass(g), -1)
    for f, g in [((-1, 0, 0), (1, 0, 0)), ((0, -1, 0), (0, 1, 0)), ((0, 0, -1), (0, 0, 1))]
)
