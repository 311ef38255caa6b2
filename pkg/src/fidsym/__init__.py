"""Fidelity on density operators and reconstruction of fidelity-preserving
symmetries."""

from .matcore import (
    DensityOperator,
    DimensionMismatch,
    NotNormalized,
    NotPositive,
    PureState,
    SolverFailure,
    Spectrum,
    eig_hermitian,
    pure_state,
    sqrt_psd,
    validate_density,
)
from .fidelity import fidelity, fidelity_pure, is_leq, is_orthogonal, partial_fidelity
from .charact import (
    OrthogonalCertificate,
    CertificateFailure,
    is_rank_one,
    is_rank_one_projection,
    order_totality_probe,
    rank_one_certificate,
)
from .wigner import (
    DensityMapOracle,
    ReconstructionReport,
    SymmetryOperator,
    apply_symmetry,
    extend_normalized,
    reconstruct,
    symmetry_distance,
    symmetry_oracle,
)
from .mapzoo import ClassificationReport, MapSpec, classify_map, make_map, verify_theorem

__version__ = "0.1.0"
