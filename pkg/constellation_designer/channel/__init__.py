"""
Channel module: Nakagami-m fading, frame transmission and Monte-Carlo BER estimation.
"""

from .fading import complex_noise, nakagami_gain
from .link import Frame, detect_uncoded, transmit_frame, transmit_uncoded, trellis_for_mcs
from .simulate import simulate_ber

__all__ = [
    "complex_noise",
    "nakagami_gain",
    "Frame",
    "detect_uncoded",
    "transmit_frame",
    "transmit_uncoded",
    "trellis_for_mcs",
    "simulate_ber",
]
