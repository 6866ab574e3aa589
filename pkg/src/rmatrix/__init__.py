"""Exact verification and quantization of geometric classical r-matrices.

The package works over the rationals with explicit truncation in the
deformation parameter, so every check in it is an exact equality:

- ``check_classical`` decides the classical Yang-Baxter and unitarity
  conditions for polynomial vector fields on X x X;
- ``extract`` slices the finite dimensional Lie algebra, module and
  bijective 1-cocycle out of a classical r-matrix;
- ``quantize`` runs the constructive pipeline (cocycle exponentiation,
  circle operation, point-map assembly) and returns a verified quantum
  R-matrix as a truncated formal diffeomorphism;
- ``families`` provides the permutation, algebra and line families with
  closed-form quantizations for comparison.
"""

from .classical import ClassicalResidual, check_classical, is_geometric_classical_rmatrix
from .cocycle import LieCocycleData, extract, reconstruct, verify_lemma1
from .diffeo import (
    FormalDiffeo,
    QuantumResidual,
    check_qybe,
    check_unitarity_q,
    classical_limit,
    verify_quantum,
)
from .errors import (
    CocycleNotBijectiveError,
    ExtractionError,
    FormatError,
    LeadingTermError,
    NotClassicalError,
    NotClosedError,
    NotInSpanError,
    OrderMismatchError,
    QuantizationError,
    RMatrixError,
    SpaceMismatchError,
    SubstitutionError,
)
from .families import (
    AlgebraSpec,
    algebra_R,
    algebra_r,
    check_monomial_intertwining,
    line_R,
    line_r,
    permutation_R,
    permutation_r,
    scalar_algebra,
)
from .poly import MPoly
from .quantize import (
    DualVector,
    GroupElement,
    circ,
    circ_left_inverse,
    eval_dual,
    group_act_dual,
    group_mul,
    pi_forward,
    pi_inverse,
    quantize,
)
from .series import HSeries, poly_substitute
from .spaces import Space
from .vectorfields import PolyVectorField, vf_exp_series, vf_log

__all__ = [
    "AlgebraSpec",
    "ClassicalResidual",
    "CocycleNotBijectiveError",
    "DualVector",
    "ExtractionError",
    "FormalDiffeo",
    "FormatError",
    "GroupElement",
    "HSeries",
    "LeadingTermError",
    "LieCocycleData",
    "MPoly",
    "NotClassicalError",
    "NotClosedError",
    "NotInSpanError",
    "OrderMismatchError",
    "PolyVectorField",
    "QuantizationError",
    "QuantumResidual",
    "RMatrixError",
    "Space",
    "SpaceMismatchError",
    "SubstitutionError",
    "algebra_R",
    "algebra_r",
    "check_classical",
    "check_monomial_intertwining",
    "check_qybe",
    "check_unitarity_q",
    "circ",
    "circ_left_inverse",
    "classical_limit",
    "eval_dual",
    "extract",
    "group_act_dual",
    "group_mul",
    "is_geometric_classical_rmatrix",
    "line_R",
    "line_r",
    "permutation_R",
    "permutation_r",
    "pi_forward",
    "pi_inverse",
    "poly_substitute",
    "quantize",
    "reconstruct",
    "scalar_algebra",
    "verify_lemma1",
    "verify_quantum",
    "vf_exp_series",
    "vf_log",
]

__version__ = "0.1.0"
