"""Exact toolkit for q-ary Golay complementary array pairs of size 2 x ... x 2.

Construction from standard parameters, exact verification over Z[zeta_q],
constructive decomposition back to parameters with a checkable certificate,
and exhaustive censuses of small array spaces.
"""

from .boolfun import Anf, VarPartition, from_anf, interaction_components, separate, to_anf
from .census import (
    CensusReport,
    DEFAULT_BUDGET,
    enumerate_all_gaps,
    enumerate_standard,
    verify_theorem,
)
from .cyclotomic import CycContext, CycElement, cyclotomic_polynomial, get_context
from .decompose import (
    DecompositionCertificate,
    GcdSplit,
    decompose,
    extract_d,
    gcd_normalized,
    join_last,
    recognize_standard,
    replay,
    split_last,
    verify_certificate,
)
from .errors import (
    BudgetExceededError,
    GolayError,
    NotAGapError,
    OddModulusError,
    PartitionTooFineError,
    VerificationError,
)
from .genfun import (
    GenFun,
    correlation_via_coefficients,
    disjoint_product,
    embed,
    from_array,
    star,
)
from .qarray import (
    QaryArray,
    all_shifts,
    autocorrelation,
    combine,
    correlation_spectrum,
    half_shifts,
    is_gap,
    is_gcp,
    restrict,
    sequence_autocorrelation,
)
from .standard import StandardParams, construct_standard

__version__ = "0.1.0"

__all__ = [
    "Anf",
    "BudgetExceededError",
    "CensusReport",
    "CycContext",
    "CycElement",
    "DEFAULT_BUDGET",
    "DecompositionCertificate",
    "GcdSplit",
    "GenFun",
    "GolayError",
    "NotAGapError",
    "OddModulusError",
    "PartitionTooFineError",
    "QaryArray",
    "StandardParams",
    "VarPartition",
    "VerificationError",
    "all_shifts",
    "autocorrelation",
    "combine",
    "construct_standard",
    "correlation_spectrum",
    "correlation_via_coefficients",
    "cyclotomic_polynomial",
    "decompose",
    "disjoint_product",
    "embed",
    "enumerate_all_gaps",
    "enumerate_standard",
    "extract_d",
    "from_anf",
    "from_array",
    "gcd_normalized",
    "get_context",
    "half_shifts",
    "interaction_components",
    "is_gap",
    "is_gcp",
    "join_last",
    "recognize_standard",
    "replay",
    "restrict",
    "separate",
    "sequence_autocorrelation",
    "split_last",
    "star",
    "to_anf",
    "verify_certificate",
    "verify_theorem",
]
