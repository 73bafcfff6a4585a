"""
Bit-to-symbol mapping.

Consecutive groups of log2(M) coded bits are read MSB first; the integer value
of a group is the label of the transmitted point.
"""

from typing import Sequence

import numpy as np

from constellation_designer.core.constellation import Constellation
from constellation_designer.core.errors import CodecError


def bits_to_labels(coded_bits: Sequence[int], bits_per_symbol: int) -> np.ndarray:
    """Group bits MSB first into integer labels."""
    bits = np.asarray(coded_bits, dtype=np.int64)
    if bits.size % bits_per_symbol:
        raise CodecError(
            f"coded length {bits.size} is not a multiple of {bits_per_symbol} bits per symbol"
        )
    weights = 1 << np.arange(bits_per_symbol - 1, -1, -1)
    return bits.reshape(-1, bits_per_symbol) @ weights


def labels_to_bits(labels: Sequence[int], bits_per_symbol: int) -> np.ndarray:
    """Inverse of bits_to_labels."""
    values = np.asarray(labels, dtype=np.int64)
    shifts = np.arange(bits_per_symbol - 1, -1, -1)
    return ((values[:, None] >> shifts) & 1).astype(np.uint8).ravel()


def map_symbols(coded_bits: Sequence[int], constellation: Constellation) -> np.ndarray:
    """
    Map coded bits to constellation points.

    Args:
        coded_bits: Punctured coded bits, N_c of them
        constellation: Labeled constellation

    Returns:
        N_c / log2(M) complex symbols

    Raises:
        CodecError: If N_c is not a multiple of log2(M)

    Example:
        >>> from constellation_designer.core.constellation import qam_constellation
        >>> map_symbols([1, 1, 1, 1], qam_constellation(16))
        array([-0.9486833-0.9486833j])
    """
    labels = bits_to_labels(coded_bits, constellation.bits_per_symbol)
    return constellation.points[labels]
