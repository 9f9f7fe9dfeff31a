"""Genus comparison (signature + discriminant form) and rank-2 genus enumeration."""
from __future__ import annotations

from dataclasses import dataclass

from .binary_forms import (
    BinaryQuadraticForm,
    check_discriminant,
    form_to_lattice,
    lattice_classes,
    lattice_to_form,
    same_lattice_class,
)
from .discriminant import DEFAULT_BUDGET, FiniteQuadraticModule, discriminant_group, qf_isometric
from .lattice import IntegerLattice, LatticeError, basic_invariants


@dataclass(frozen=True)
class GenusDescriptor:
    signature: tuple
    discriminant_form: FiniteQuadraticModule


def genus_descriptor(L: IntegerLattice) -> GenusDescriptor:
    return GenusDescriptor(basic_invariants(L).signature, discriminant_group(L))


def same_genus(L1: IntegerLattice, L2: IntegerLattice, budget: int = DEFAULT_BUDGET) -> bool:
    if L1.rank != L2.rank:
        return False
    i1, i2 = basic_invariants(L1), basic_invariants(L2)
    if i1.signature != i2.signature or i1.discriminant != i2.discriminant:
        return False
    return qf_isometric(discriminant_group(L1), discriminant_group(L2), budget) is not None


def genus_representatives_rank2(L: IntegerLattice, budget: int = DEFAULT_BUDGET) -> list:
    """Isometry classes in the genus of an indefinite even binary lattice.

    Every lattice class of discriminant D = -det is visited via the reduced
    forms; the class containing ``L`` is represented by ``L`` itself, the
    others by the Gram matrix of their smallest reduced form.
    """
    if L.rank != 2:
        raise LatticeError(f"need rank 2, got rank {L.rank}")
    f = lattice_to_form(L)
    D = f.discriminant
    if D <= 0:
        raise LatticeError("lattice is definite; only indefinite lattices are supported")
    check_discriminant(D)
    out = []
    for cls in lattice_classes(D):
        rep = min(g for cyc in cls for g in cyc)
        if same_lattice_class(f, rep):
            out.append(L)
            continue
        M = form_to_lattice(rep)
        if same_genus(L, M, budget):
            out.append(M)
    return out


def lattices_isometric_rank2(L1: IntegerLattice, L2: IntegerLattice) -> bool:
    f1, f2 = lattice_to_form(L1), lattice_to_form(L2)
    return f1.discriminant == f2.discriminant and same_lattice_class(f1, f2)


__all__ = [
    "BinaryQuadraticForm",
    "GenusDescriptor",
    "genus_descriptor",
    "genus_representatives_rank2",
    "lattices_isometric_rank2",
    "same_genus",
]
