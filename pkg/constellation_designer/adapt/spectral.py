"""
Spectral efficiency as frame-success goodput.

    SE = log2(M) * R * (1 - p_b)^N_b

The (1 - p_b)^N_b factor is the probability that a frame of N_b information
bits is delivered without error; SE saturates at log2(M) * R as p_b -> 0.
"""

from fractions import Fraction
from typing import Union

import math

from constellation_designer.core.errors import ConfigurationError

PRINTED_FORM_NOTE = (
    "spectral efficiency uses log2(M)*R*(1-p_b)^N_b; the printed "
    "log2(M)*(1-(1-p_b)^N_b)*R form vanishes at p_b = 0 and is not used"
)


def spectral_efficiency(
    p_b: float,
    M: int,
    R: Union[Fraction, float],
    n_b: int
) -> float:
    """
    Goodput in bits/s/Hz.

    Args:
        p_b: Bit error probability in [0, 1]
        M: Modulation order
        R: Code rate
        n_b: Information bits per frame

    Returns:
        SE in [0, log2(M) * R]

    Raises:
        ConfigurationError: If p_b is outside [0, 1] or n_b < 1

    Example:
        >>> spectral_efficiency(0.0, 16, Fraction(1, 2), 920)
        2.0
        >>> round(spectral_efficiency(1e-5, 16, Fraction(3, 4), 920), 4)
        2.9725
    """
    if not 0.0 <= p_b <= 1.0:
        raise ConfigurationError(f"bit error probability must lie in [0, 1], got {p_b}")
    if n_b < 1:
        raise ConfigurationError(f"frame size must be positive, got {n_b}")
    peak = math.log2(M) * float(R)
    return peak * (1.0 - p_b) ** n_b
