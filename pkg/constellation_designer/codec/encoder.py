"""
Feedforward rate-1/n convolutional encoder.

Generators are written in octal as in the coding literature ([5, 7] is the
4-state rate-1/2 code). The most significant tap of each generator multiplies
the current input bit; the encoder state holds the previous K-1 input bits
with the most recent one in the MSB.

Example:
    >>> enc = build_encoder([5, 7])
    >>> enc.constraint_length, enc.num_states
    (3, 4)
    >>> encode(enc, [1, 0, 1, 1], terminate=False).tolist()
    [1, 1, 0, 1, 0, 0, 1, 0]
"""

import logging
from dataclasses import dataclass, field
from typing import Sequence, Tuple

import numpy as np

from constellation_designer.core.errors import CodecError

logger = logging.getLogger(__name__)


def octal_to_int(generator: int) -> int:
    """Interpret the decimal digits of `generator` as an octal number (133 -> 0b1011011)."""
    digits = str(int(generator))
    if any(d in "89" for d in digits):
        raise CodecError(f"generator {generator} is not an octal number")
    return int(digits, 8)


@dataclass(frozen=True)
class Encoder:
    """
    Shift-register convolutional encoder with one input bit per step.

    Attributes:
        generators: Generator polynomials as written in octal
        taps: The same polynomials as binary tap masks
        constraint_length: K, one more than the register memory
        num_states: 2^(K-1)
    """

    generators: Tuple[int, ...]
    taps: Tuple[int, ...] = field(repr=False)
    constraint_length: int

    @property
    def num_states(self) -> int:
        return 1 << (self.constraint_length - 1)

    @property
    def memory(self) -> int:
        return self.constraint_length - 1

    @property
    def rate_numerator(self) -> int:
        return 1

    @property
    def rate_denominator(self) -> int:
        return len(self.taps)

    def step(self, state: int, bit: int) -> Tuple[int, Tuple[int, ...]]:
        """
        Advance the register by one input bit.

        Returns:
            (next state, output bits in generator order)
        """
        register = (bit << self.memory) | state
        outputs = tuple(bin(tap & register).count("1") & 1 for tap in self.taps)
        return register >> 1, outputs

    @property
    def label(self) -> str:
        return "[" + ",".join(str(g) for g in self.generators) + "]_8"


def build_encoder(generators: Sequence[int]) -> Encoder:
    """
    Build an encoder from octal generator polynomials.

    Args:
        generators: Octal-digit generator polynomials, e.g. [5, 7]

    Returns:
        Encoder whose constraint length is the longest generator's bit length

    Raises:
        CodecError: If the list is empty, a generator is zero or not octal
    """
    if not generators:
        raise CodecError("at least one generator polynomial is required")

    taps = tuple(octal_to_int(g) for g in generators)
    if any(tap == 0 for tap in taps):
        raise CodecError(f"generator polynomials must be nonzero, got {list(generators)}")

    constraint_length = max(tap.bit_length() for tap in taps)
    encoder = Encoder(
        generators=tuple(int(g) for g in generators),
        taps=taps,
        constraint_length=constraint_length,
    )
    logger.debug(
        f"Built encoder {encoder.label}: K={constraint_length}, "
        f"{encoder.num_states} states, rate 1/{encoder.rate_denominator}"
    )
    return encoder


def encode(encoder: Encoder, info_bits: Sequence[int], terminate: bool = True) -> np.ndarray:
    """
    Encode a frame starting from the zero state.

    Args:
        encoder: Encoder to use
        info_bits: Information bits
        terminate: Append K-1 zero tail bits so the frame ends in state 0

    Returns:
        Coded bits, n bits per step in generator order
    """
    bits = [int(b) & 1 for b in info_bits]
    if terminate:
        bits.extend([0] * encoder.memory)

    out = np.empty(len(bits) * encoder.rate_denominator, dtype=np.uint8)
    state = 0
    n = encoder.rate_denominator
    for t, bit in enumerate(bits):
        state, outputs = encoder.step(state, bit)
        out[t * n:(t + 1) * n] = outputs
    return out
