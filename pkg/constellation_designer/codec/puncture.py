"""
Periodic puncturing.

Coded bits are laid out step by step, each step holding one bit per encoder
output stream. The mask column for step t is ``t % period``.
"""

from typing import Sequence

import numpy as np

from constellation_designer.core.errors import CodecError
from constellation_designer.core.models import PuncturePattern


def keep_mask(pattern: PuncturePattern, n_steps: int) -> np.ndarray:
    """Boolean keep flags in stream-major-per-step order for `n_steps` steps."""
    mask = np.asarray(pattern.mask, dtype=bool)
    columns = np.arange(n_steps) % pattern.period
    return mask[:, columns].T.ravel()


def puncture(coded_bits: Sequence[int], pattern: PuncturePattern) -> np.ndarray:
    """
    Delete the coded bits whose mask entry is 0.

    Args:
        coded_bits: Encoder output, `pattern.streams` bits per step
        pattern: Puncturing pattern

    Returns:
        Kept bits in their original order

    Example:
        >>> p = PuncturePattern(mask=[[1, 1, 0], [0, 1, 1]])
        >>> puncture([1, 1, 0, 1, 0, 0], p).tolist()
        [1, 0, 1, 0]
    """
    bits = np.asarray(coded_bits, dtype=np.uint8)
    if bits.size % pattern.streams:
        raise CodecError(
            f"coded length {bits.size} is not a multiple of {pattern.streams} streams"
        )
    return bits[keep_mask(pattern, bits.size // pattern.streams)]

