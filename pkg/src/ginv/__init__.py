"""Generalized inverses, the core-EP decomposition, and EP-extending matrix classes.

Two arithmetic backends share one API: complex float ``numpy`` arrays and
exact Gaussian-rational :class:`ExactMatrix` objects.
"""

from .classes import (
    ClassificationReport, ClassLabel, IndexZeroError, PredicateInconsistency,
    classify_all, hierarchy_check, is_member, structural_member,
)
from .decomposition import (
    CoreEPForm, DecompositionError, NonsingularMatrixError, assemble, core_ep_decompose,
    delta_of, index_of, rank_sequence, t_tilde,
)
from .generate import GeneratorSpec, InfeasibleClassWarning, generate, generate_form
from .ginverse import (
    GInverseKind, GroupInverseError, composite_inverse, compute_inverse, core_ep_inverse,
    definitional_inverse, drazin, group_inverse, moore_penrose, table4_form,
)
from .io import parse_matrix, serialize_matrix
from .kernels import BACKEND as KERNEL_BACKEND
from .numeric import DEFAULT_TOL, ExactMatrix, GaussianRational, Tolerance
from .verify import (
    TheoremId, VerificationReport, class_theorem_suites, commuting_inverse_suite,
    cross_backend_audit, drazin_characterization_check, run_suites,
)

__version__ = "0.1.0"

__all__ = [
    "ClassificationReport", "ClassLabel", "IndexZeroError", "PredicateInconsistency",
    "classify_all", "hierarchy_check", "is_member", "structural_member",
    "CoreEPForm", "DecompositionError", "NonsingularMatrixError", "assemble",
    "core_ep_decompose", "delta_of", "index_of", "rank_sequence", "t_tilde",
    "GeneratorSpec", "InfeasibleClassWarning", "generate", "generate_form",
    "GInverseKind", "GroupInverseError", "composite_inverse", "compute_inverse",
    "core_ep_inverse", "definitional_inverse", "drazin", "group_inverse", "moore_penrose",
    "table4_form", "parse_matrix", "serialize_matrix", "KERNEL_BACKEND",
    "DEFAULT_TOL", "ExactMatrix", "GaussianRational", "Tolerance",
    "TheoremId", "VerificationReport", "class_theorem_suites", "commuting_inverse_suite",
    "cross_backend_audit", "drazin_characterization_check", "run_suites",
]
