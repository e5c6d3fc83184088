"""Exact cohomology of bounded double complexes.

Bott-Chern, Aeppli, Dolbeault and de Rham cohomology, the Schweitzer complexes
L_{p,q} interpolating between them, Frölicher spectral sequences, zigzag
multiplicities and symbol complexes, all over the Gaussian rationals.
"""

from .bicomplex import (
    DoubleComplex,
    DoubleComplexError,
    GradedComplex,
    conjugate,
    direct_sum,
    dual,
    from_document,
    load,
    save,
    to_document,
    total_complex,
    validate,
)
from .invariants import (
    aeppli_direct,
    bott_chern_direct,
    chi_p,
    corollary_identities_n3,
    de_rham,
    dolbeault,
    euler_identity_check,
    fd_defect,
    frolicher,
    grgr_derham,
    ktheory_dims_identity,
    report,
    serre_chi_check,
)
from .linalg import GaussianRational, Matrix, Subspace, kernel_basis, rank, scalar
from .schweitzer import (
    aeppli_via_L,
    bott_chern_via_L,
    build_L,
    duality_dim_check,
    euler_chi_pq,
    pairing_matrix,
    s_dims,
)
from .symbol import Covector, ellipticity_sweep, exactness_check, symbol_complex
from .zigzag import calibration_matrix, enumerate_shapes, invariant_vector, multiplicities

__version__ = "0.1.0"

__all__ = [
    "Covector", "DoubleComplex", "DoubleComplexError", "GaussianRational", "GradedComplex",
    "Matrix", "Subspace", "aeppli_direct", "aeppli_via_L", "bott_chern_direct",
    "bott_chern_via_L", "build_L", "calibration_matrix", "chi_p", "conjugate",
    "corollary_identities_n3", "de_rham", "direct_sum", "dolbeault", "dual",
    "duality_dim_check", "ellipticity_sweep", "enumerate_shapes", "euler_chi_pq",
    "euler_identity_check", "exactness_check", "fd_defect", "from_document", "frolicher",
    "grgr_derham", "invariant_vector", "kernel_basis", "ktheory_dims_identity", "load",
    "multiplicities", "pairing_matrix", "rank", "report", "s_dims", "save", "scalar",
    "serre_chi_check", "symbol_complex", "to_document", "total_complex", "validate",
]
