"""Exact lattice and line-bundle computations for K3 branch divisors of Fano double covers."""
from .lattice import (
    IntegerLattice,
    LatticeError,
    LatticeInvariants,
    NotPrimitiveError,
    basic_invariants,
    congruence_obstruction,
    divisibility,
    inner,
    primitive_and_complete,
    represent,
)
from .discriminant import (
    BudgetExceeded,
    FiniteQuadraticModule,
    FQMAutomorphism,
    discriminant_group,
    isotropic_subgroups,
    orthogonal_group,
    overlattice,
    primary_part,
    qf_isometric,
    qf_values,
)

__version__ = "0.1.0"
