"""
Bound module: analytical BER upper bound via the product-state matrix and
the generating function, with exact derivatives in the dummy variable.
"""

from .chernoff import chernoff_matrix, chernoff_pair, validate_fading_parameter
from .dual import Dual
from .product_state import ProductStateMatrix, build_product_state_matrix
from .transfer import (
    ber_upper_bound,
    bound_curve,
    evaluate_bound,
    snr_at_target,
    spectral_radius,
)

__all__ = [
    "chernoff_matrix",
    "chernoff_pair",
    "validate_fading_parameter",
    "Dual",
    "ProductStateMatrix",
    "build_product_state_matrix",
    "ber_upper_bound",
    "bound_curve",
    "evaluate_bound",
    "snr_at_target",
    "spectral_radius",
]
