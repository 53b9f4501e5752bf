"""Fermionic Gaussian states: Williamson form, modewise decomposition, mode entanglement.

Covariance matrices are 2N x 2N numpy arrays; mode i owns rows 2i and 2i+1.
Mode indices are 0-based throughout the Python API.
"""

from ._core import (
    EntangledPair,
    EntanglementReport,
    InvalidInput,
    ModewiseDecomposition,
    NotIsotropic,
    NumericalConsistency,
    ResidualMode,
    ResourceLimit,
    bcs_fcm,
    binary_entropy,
    dense_ground_state,
    fcm_from_state,
    ground_state_fcm,
    hamiltonian_to_majorana,
    is_orthogonal_symplectic,
    is_pure,
    isotropic_fcm,
    isotropic_separability,
    isotropy_parameter,
    kitaev_chain,
    modewise_decompose,
    ppt_min_eigenvalue,
    ppt_pair_entangled,
    pure_mode_entanglement,
    random_pure_fcm,
    reconstruct_state,
    reconstruction_residual,
    schmidt_entropy,
    verify,
    williamson_form,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
