"""Even integral lattices given by Gram matrices."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Optional, Sequence

from . import _kernels
from .linalg import congruence_diagonal, content, det, xgcd


class LatticeError(ValueError):
    """Invalid lattice input or violated precondition."""


class NotPrimitiveError(LatticeError):
    def __init__(self, vector, content):
        super().__init__(f"vector {tuple(vector)} is not primitive (content {content})")
        self.vector = tuple(vector)
        self.content = content


@dataclass(frozen=True)
class IntegerLattice:
    """Free Z-module with an even, nondegenerate, symmetric Gram matrix."""

    gram: tuple
    name: Optional[str] = None

    def __post_init__(self):
        rows = tuple(tuple(_as_int(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", rows)
        n = len(rows)
        if n == 0:
            raise LatticeError("gram matrix is empty")
        if any(len(row) != n for row in rows):
            raise LatticeError("gram matrix is not square")
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise LatticeError(f"gram matrix is not symmetric at ({i},{j})")
        odd = [i for i in range(n) if rows[i][i] % 2]
        if odd:
            raise LatticeError(f"lattice is not even: odd diagonal entry at index {odd[0]}")
        if det(rows) == 0:
            raise LatticeError("gram matrix is degenerate (determinant 0)")

    @property
    def rank(self) -> int:
        return len(self.gram)

    def matrix(self):
        return [list(row) for row in self.gram]

    def to_json(self) -> dict:
        out = {"gram": [list(r) for r in self.gram]}
        if self.name:
            out["name"] = self.name
        return out

    @classmethod
    def from_json(cls, doc) -> "IntegerLattice":
        if isinstance(doc, list):
            doc = {"gram": doc}
        if not isinstance(doc, dict) or "gram" not in doc:
            raise LatticeError("lattice document needs a 'gram' field")
        gram = doc["gram"]
        if not isinstance(gram, list) or not all(isinstance(r, list) for r in gram):
            raise LatticeError("'gram' must be a list of rows")
        name = doc.get("name")
        if name is not None and not isinstance(name, str):
            raise LatticeError("'name' must be a string")
        return cls(gram, name)

    @classmethod
    def load(cls, path) -> "IntegerLattice":
        with open(path) as fh:
            return cls.from_json(json.load(fh))


def _as_int(x):
    if isinstance(x, bool) or not isinstance(x, int):
        raise LatticeError(f"gram entries must be integers, got {x!r}")
    return x


@dataclass(frozen=True)
class LatticeInvariants:
    determinant: int
    discriminant: int
    signature: tuple
    even: bool

    def to_json(self):
        return {
            "determinant": self.determinant,
            "discriminant": self.discriminant,
            "signature": list(self.signature),
            "even": self.even,
        }


def signature(L: IntegerLattice) -> tuple:
    diag = congruence_diagonal(L.gram)
    pos = sum(1 for d in diag if d > 0)
    neg = sum(1 for d in diag if d < 0)
    if pos + neg != L.rank:
        raise LatticeError("gram matrix is degenerate")
    return pos, neg


def basic_invariants(L: IntegerLattice) -> LatticeInvariants:
    d = det(L.gram)
    return LatticeInvariants(
        determinant=d,
        discriminant=abs(d),
        signature=signature(L),
        even=all(L.gram[i][i] % 2 == 0 for i in range(L.rank)),
    )


def _check_dim(L, v):
    if len(v) != L.rank:
        raise LatticeError(f"vector of length {len(v)} does not match lattice rank {L.rank}")


def pairing_row(L: IntegerLattice, v: Sequence[int]) -> list:
    """The integers v . e_i for the basis vectors e_i."""
    _check_dim(L, v)
    return [sum(v[j] * L.gram[j][i] for j in range(L.rank)) for i in range(L.rank)]


def inner(L: IntegerLattice, v: Sequence[int], w: Sequence[int]) -> int:
    _check_dim(L, w)
    return sum(a * b for a, b in zip(pairing_row(L, v), w))


def square(L: IntegerLattice, v: Sequence[int]) -> int:
    return inner(L, v, v)


def divisibility(L: IntegerLattice, v: Sequence[int]) -> int:
    """gcd of v . u over all u in L."""
    _check_dim(L, v)
    if not any(v):
        raise LatticeError("divisibility of the zero vector is undefined")
    return content(pairing_row(L, v))


def represent(L: IntegerLattice, n: int, bound: int) -> list:
    """All v with v^2 == n and every coordinate in [-bound, bound], lexicographically sorted.

    Exhaustive inside the box only; says nothing about vectors outside it.
    """
    if bound < 1:
        raise LatticeError("bound must be >= 1")
    if _kernels.fits_int64(L.gram, bound) and abs(n) < 2**62:
        rows = _kernels.box_solutions(L.gram, n, bound)
        return [tuple(int(x) for x in row) for row in rows]
    return _kernels.box_solutions_exact(L.gram, n, bound)


def congruence_obstruction(L: IntegerLattice, n: int, modulus: int) -> bool:
    """True when no v in L can have v^2 == n, certified modulo ``modulus``.

    The test is on the integral form v^2/2: it checks whether v^2/2 = n/2 has a
    solution over (Z/modulus)^rank.  An odd ``n`` is never a square in an even
    lattice.
    """
    if modulus < 2:
        raise LatticeError("modulus must be >= 2")
    if n % 2:
        return True
    half = n // 2
    if _kernels.fits_int64(L.gram, modulus):
        return not _kernels.residue_hit(L.gram, half, modulus)
    g = L.gram
    r = L.rank
    for v in itertools.product(range(modulus), repeat=r):
        s = sum(g[i][i] // 2 * v[i] * v[i] for i in range(r))
        s += sum(g[i][j] * v[i] * v[j] for i in range(r) for j in range(i + 1, r))
        if (s - half) % modulus == 0:
            return False
    return True


def primitive_and_complete(L: IntegerLattice, v: Sequence[int]) -> list:
    """Unimodular integer matrix (rows x columns) whose first column is ``v``.

    Raises NotPrimitiveError if the coordinates of ``v`` have a common factor.
    """
    _check_dim(L, v)
    if not any(v):
        raise LatticeError("zero vector cannot be completed to a basis")
    c = content(v)
    if c != 1:
        raise NotPrimitiveError(v, c)
    n = L.rank
    basis = [[int(i == j) for j in range(n)] for i in range(n)]  # columns are basis vectors
    coords = list(v)
    for j in range(n - 1, 0, -1):
        y = coords[j]
        if y == 0:
            continue
        x = coords[0]
        g, s, t = xgcd(x, y)
        # new b0 = (x/g) b0 + (y/g) bj, new bj = -t b0 + s bj; determinant s*x/g + t*y/g = 1
        xg, yg = x // g, y // g
        for i in range(n):
            b0, bj = basis[i][0], basis[i][j]
            basis[i][0] = xg * b0 + yg * bj
            basis[i][j] = -t * b0 + s * bj
        coords[0], coords[j] = g, 0
    if coords[0] == -1:
        for i in range(n):
            basis[i][0] = -basis[i][0]
    return basis


def is_primitive(v: Sequence[int]) -> bool:
    return any(v) and content(v) == 1


def change_basis(L: IntegerLattice, basis) -> IntegerLattice:
    """Lattice with Gram B^T G B, where the columns of ``basis`` are the new basis vectors."""
    n = L.rank
    cols = [[basis[i][j] for i in range(n)] for j in range(len(basis[0]))]
    gram = [[inner(L, a, b) for b in cols] for a in cols]
    return IntegerLattice(gram, L.name)
