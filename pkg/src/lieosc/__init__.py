"""Exact oscillator representations, L-operators and rational R-matrices
for the classical Lie algebras sp(2n), so(N) and su(n).

All arithmetic is exact over Q(i, sqrt d): matrices hold quadratic surds,
spectral parameters are rationals, and every verification reports a zero
or nonzero exact residual.
"""

__version__ = "0.1.0"

from .definingrep import RepBundle, build_rep, check_cartan_weyl, check_trace_transpose
from .errors import (
    ConsistencyError,
    ConstructionError,
    CutoffTooSmallError,
    FamilyMismatchError,
    InvalidRankError,
    InvalidScalarError,
    LieOscError,
    PoleError,
    StructureError,
)
from .fock import (
    OperatorRep,
    bosonic_space,
    check_commutators,
    fermionic_space,
    metaplectic_rep,
    spinor_rep_b,
    spinor_rep_d,
    su_oscillator_rep,
)
from .loper import (
    LOperator,
    QuadraticSpec,
    build_L,
    casimir_checks,
    closed_form_L,
    eigen_structure,
    operator_product_laws,
    quadratic_residual,
    quadratic_spec,
)
from .matrix import SurdMatrix, SurdTensor
from .report import CheckReport
from .rootsys import Family, RootSystem, positive_roots
from .rtt import RMatrix, TOperator, build_T, check_rtt, check_ybe, invariant_form, monodromy, r_matrix
from .scalar import Surd
from .tensors import StructureTensors, complete_basis, structure_tensors

__all__ = [
    "__version__",
    "CheckReport",
    "ConsistencyError",
    "ConstructionError",
    "CutoffTooSmallError",
    "Family",
    "FamilyMismatchError",
    "InvalidRankError",
    "InvalidScalarError",
    "LOperator",
    "LieOscError",
    "OperatorRep",
    "PoleError",
    "QuadraticSpec",
    "RMatrix",
    "RepBundle",
    "RootSystem",
    "StructureError",
    "StructureTensors",
    "Surd",
    "SurdMatrix",
    "SurdTensor",
    "TOperator",
    "bosonic_space",
    "build_L",
    "build_T",
    "build_rep",
    "casimir_checks",
    "check_cartan_weyl",
    "check_commutators",
    "check_rtt",
    "check_trace_transpose",
    "check_ybe",
    "closed_form_L",
    "complete_basis",
    "eigen_structure",
    "fermionic_space",
    "invariant_form",
    "metaplectic_rep",
    "monodromy",
    "operator_product_laws",
    "positive_roots",
    "quadratic_residual",
    "quadratic_spec",
    "r_matrix",
    "spinor_rep_b",
    "spinor_rep_d",
    "structure_tensors",
    "su_oscillator_rep",
]
