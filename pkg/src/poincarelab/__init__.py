"""Verification laboratory for mass-shell representations.

Exact symbolic operators for the ten continuous generators and the two
discrete symmetries of each catalogued representation, mechanical
verification of the full relation set, a commutant solver deciding
irreducibility, and a momentum-grid harness cross-checking the algebra
numerically.
"""

from .catalog import (
    LIE_RELATIONS,
    RepSpec,
    allowed_spectra,
    build,
    catalog_labels,
    discrete_relations,
    enumerate_catalog,
    full_verification,
    pauli_lubanski,
    verify_casimirs,
    verify_discrete_relations,
    verify_lie_relations,
    verify_self_adjointness,
    verify_spectrum,
)
from .commutant import (
    CommutantBasis,
    Verdict,
    commutant_basis,
    irreducibility_verdict,
    reduce_to_constant_blocks,
)
from .gridlab import Grid, GridState, convergence_study, residual, sample_gaussian
from .localization import newton_wigner, verify_position_axioms
from .report import Check, RelationReport
from .spin_algebra import SpinWeight, spin_matrices, tau_matrix
from .symop import BlockOp, ScalarOp, commutator

__version__ = "0.1.0"

__all__ = [
    "LIE_RELATIONS",
    "RepSpec",
    "allowed_spectra",
    "build",
    "catalog_labels",
    "discrete_relations",
    "enumerate_catalog",
    "full_verification",
    "pauli_lubanski",
    "verify_casimirs",
    "verify_discrete_relations",
    "verify_lie_relations",
    "verify_self_adjointness",
    "verify_spectrum",
    "CommutantBasis",
    "Verdict",
    "commutant_basis",
    "irreducibility_verdict",
    "reduce_to_constant_blocks",
    "Grid",
    "GridState",
    "convergence_study",
    "residual",
    "sample_gaussian",
    "newton_wigner",
    "verify_position_axioms",
    "Check",
    "RelationReport",
    "SpinWeight",
    "spin_matrices",
    "tau_matrix",
    "BlockOp",
    "ScalarOp",
    "commutator",
    "__version__",
]
