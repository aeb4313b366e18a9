from exact.fields import Field, FieldKind, Scalar
from exact.spectral import (
    Spectrum,
    eigenvalues_in_field,
    lagrange_idempotents,
    nilpotent_exp_scaled,
    projectors_from_direct_sum,
)
from exact.subspaces import Subspace, rank_kernel, subspace_intersect, subspace_sum

__all__ = [
    "Field",
    "FieldKind",
    "Scalar",
    "Spectrum",
    "Subspace",
    "eigenvalues_in_field",
    "lagrange_idempotents",
    "nilpotent_exp_scaled",
    "projectors_from_direct_sum",
    "rank_kernel",
    "subspace_intersect",
    "subspace_sum",
]
