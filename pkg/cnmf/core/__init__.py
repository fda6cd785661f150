from .forms import (
    conv_motif,
    explicit_kron_operator,
    kron_operator,
    reconstruct,
    reconstruct_kron_matvec,
    reconstruct_kron_rmatvec,
    reconstruct_outer,
    reconstruct_toeplitz,
)
from .loss import component_loadings, normalized_loss
from .preprocess import log_shift
from .residual import residual_full, residual_patch
from .shifts import shift_columns, shift_columns_left, shift_matrix
from .types import ActivationMatrix, CnmfModel, DataMatrix, MotifTensor, Residual

__all__ = [
    "ActivationMatrix",
    "CnmfModel",
    "DataMatrix",
    "MotifTensor",
    "Residual",
    "component_loadings",
    "conv_motif",
    "explicit_kron_operator",
    "kron_operator",
    "log_shift",
    "normalized_loss",
    "reconstruct",
    "reconstruct_kron_matvec",
    "reconstruct_kron_rmatvec",
    "reconstruct_outer",
    "reconstruct_toeplitz",
    "residual_full",
    "residual_patch",
    "shift_columns",
    "shift_columns_left",
    "shift_matrix",
]
