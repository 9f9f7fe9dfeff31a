"""Indefinite binary quadratic forms ax^2 + bxy + cy^2 and their reduction cycles.

Reduced means the Gauss condition |sqrt(D) - 2|a|| < b < sqrt(D).  All
comparisons with sqrt(D) are done on squares of integers.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .lattice import IntegerLattice, LatticeError


@dataclass(frozen=True, order=True)
class BinaryQuadraticForm:
    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def __neg__(self):
        return BinaryQuadraticForm(-self.a, -self.b, -self.c)

    def __call__(self, x, y):
        return self.a * x * x + self.b * x * y + self.c * y * y

    def as_list(self):
        return [self.a, self.b, self.c]

    def transform(self, p, q, r, s):
        """f(px + ry, qx + sy): the form in the basis given by the columns (p, q), (r, s)."""
        a, b, c = self.a, self.b, self.c
        return BinaryQuadraticForm(
            a * p * p + b * p * q + c * q * q,
            2 * a * p * r + b * (p * s + q * r) + 2 * c * q * s,
            a * r * r + b * r * s + c * s * s,
        )


def _lt_sqrt(x, D):
    """x < sqrt(D) for D > 0 not a square."""
    return x < 0 or x * x < D


def _gt_sqrt(y, D):
    """sqrt(D) < y."""
    return y > 0 and D < y * y


def check_discriminant(D: int) -> None:
    if D <= 0:
        raise LatticeError(f"discriminant {D} is not positive")
    if D % 4 not in (0, 1):
        raise LatticeError(f"discriminant {D} is not 0 or 1 mod 4")
    if isqrt(D) ** 2 == D:
        raise LatticeError(f"discriminant {D} is a perfect square")


def is_reduced(f: BinaryQuadraticForm) -> bool:
    D = f.discriminant
    b = f.b
    return b > 0 and _lt_sqrt(b, D) and _lt_sqrt(2 * abs(f.a) - b, D) and _gt_sqrt(2 * abs(f.a) + b, D)


def form_to_lattice(f: BinaryQuadraticForm) -> IntegerLattice:
    return IntegerLattice([[2 * f.a, f.b], [f.b, 2 * f.c]])


def lattice_to_form(L: IntegerLattice) -> BinaryQuadraticForm:
    if L.rank != 2:
        raise LatticeError(f"need a rank-2 lattice, got rank {L.rank}")
    g = L.gram
    if g[0][0] % 2 or g[1][1] % 2:
        raise LatticeError("lattice is not even")
    return BinaryQuadraticForm(g[0][0] // 2, g[0][1], g[1][1] // 2)


def form_lattice_bridge(x):
    """Form -> Gram [[2a, b], [b, 2c]]; rank-2 even lattice -> form."""
    if isinstance(x, BinaryQuadraticForm):
        return form_to_lattice(x)
    return lattice_to_form(x)


def enumerate_reduced(D: int) -> list:
    check_discriminant(D)
    out = []
    for b in range(D % 2, isqrt(D) + 1, 2):
        if b == 0:
            continue
        ac = (b * b - D) // 4
        for a in range(1, -ac + 1):
            if ac % a:
                continue
            for sa in (a, -a):
                f = BinaryQuadraticForm(sa, b, ac // sa)
                if is_reduced(f):
                    out.append(f)
    return sorted(out)


def _neighbor_b(b, c, D):
    """b' = -b mod 2|c|, in (sqrt(D) - 2|c|, sqrt(D)) if |c| < sqrt(D), else in (-|c|, |c|]."""
    m = 2 * abs(c)
    if _lt_sqrt(abs(c), D):
        t = isqrt(D)
        return t - ((t + b) % m)
    bp = (-b) % m
    if bp > abs(c):
        bp -= m
    return bp


def rho(f: BinaryQuadraticForm) -> BinaryQuadraticForm:
    """Neighbor step (a, b, c) -> (c, b', (b'^2 - D) / 4c); properly equivalent to f."""
    D = f.discriminant
    bp = _neighbor_b(f.b, f.c, D)
    return BinaryQuadraticForm(f.c, bp, (bp * bp - D) // (4 * f.c))


def reduce_form(f: BinaryQuadraticForm, max_steps: int = 10_000) -> BinaryQuadraticForm:
    D = f.discriminant
    check_discriminant(D)
    for _ in range(max_steps):
        if is_reduced(f):
            return f
        f = rho(f)
    raise RuntimeError("reduction did not terminate")  # pragma: no cover


def reduction_cycle(f: BinaryQuadraticForm) -> list:
    """The rho-cycle of reduced forms properly equivalent to f, starting at reduce_form(f)."""
    start = reduce_form(f)
    cycle = [start]
    g = rho(start)
    while g != start:
        cycle.append(g)
        g = rho(g)
    return cycle


def _cycles(D):
    forms = enumerate_reduced(D)
    seen = set()
    cycles = []
    for f in forms:
        if f in seen:
            continue
        cyc = reduction_cycle(f)
        seen.update(cyc)
        cycles.append(cyc)
    return cycles


def proper_classes(D: int) -> list:
    """One cycle per proper (SL2(Z)) class, each cycle listed from its smallest form."""
    out = []
    for cyc in _cycles(D):
        i = cyc.index(min(cyc))
        out.append(cyc[i:] + cyc[:i])
    return out


def lattice_classes(D: int) -> list:
    """Proper classes merged under (a, b, c) -> (c, b, a), i.e. GL2(Z) classes.

    (c, b, a) is f evaluated at (y, x), an improper change of basis; it keeps
    reduced forms reduced.  Each entry lists the member cycles.
    """
    cycles = proper_classes(D)
    where = {f: i for i, cyc in enumerate(cycles) for f in cyc}
    parent = list(range(len(cycles)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, cyc in enumerate(cycles):
        f = cyc[0]
        j = where[BinaryQuadraticForm(f.c, f.b, f.a)]
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)
    groups = {}
    for i in range(len(cycles)):
        groups.setdefault(find(i), []).append(cycles[i])
    return [groups[k] for k in sorted(groups)]


@dataclass(frozen=True)
class ClassCount:
    proper: int
    improper: int
    lattice_classes: int

    def to_json(self):
        return {"proper": self.proper, "improper": self.improper, "lattice_classes": self.lattice_classes}


def class_count(D: int) -> ClassCount:
    """Proper and improper class numbers of discriminant D.

    Improper classes coincide with isometry classes of the even lattices
    [[2a, b], [b, 2c]], so ``lattice_classes`` equals ``improper``.
    """
    proper = len(proper_classes(D))
    improper = len(lattice_classes(D))
    return ClassCount(proper, improper, improper)


def same_proper_class(f: BinaryQuadraticForm, g: BinaryQuadraticForm) -> bool:
    if f.discriminant != g.discriminant:
        return False
    return reduce_form(g) in reduction_cycle(f)


def same_lattice_class(f: BinaryQuadraticForm, g: BinaryQuadraticForm) -> bool:
    return same_proper_class(f, g) or same_proper_class(BinaryQuadraticForm(f.c, f.b, f.a), g)
