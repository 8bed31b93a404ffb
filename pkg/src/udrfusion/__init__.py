"""Universal deformation rings and fusion for N x| G, G a central extension of D_2n by Z/m."""
from .errors import (
    ConsistencyError,
    InconsistentPresentationError,
    InvalidRepresentationError,
    NotDeterminedError,
    OutsideRegimeError,
    ParameterError,
    UDRError,
    UnsupportedRegimeError,
)
from .ffield import PrimeField, select_prime
from .groups import ExtensionParams, embeddable

__all__ = [
    "ConsistencyError",
    "ExtensionParams",
    "InconsistentPresentationError",
    "InvalidRepresentationError",
    "NotDeterminedError",
    "OutsideRegimeError",
    "ParameterError",
    "PrimeField",
    "UDRError",
    "UnsupportedRegimeError",
    "embeddable",
    "select_prime",
]
