"""
Codec module: convolutional encoding, puncturing, symbol mapping,
supertrellis construction and fixed-lag soft-decision Viterbi decoding.
"""

from .encoder import Encoder, build_encoder, encode
from .mapping import bits_to_labels, labels_to_bits, map_symbols
from .puncture import puncture
from .trellis import SuperTrellis, build_supertrellis
from .viterbi import viterbi_decode

__all__ = [
    "Encoder",
    "build_encoder",
    "encode",
    "bits_to_labels",
    "labels_to_bits",
    "map_symbols",
    "puncture",
    "SuperTrellis",
    "build_supertrellis",
    "viterbi_decode",
]
