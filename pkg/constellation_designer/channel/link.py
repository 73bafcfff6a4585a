"""
Frame transmission over the fading channel.

    r_i = h_i s_i + n_i

Information bits are zero-padded up to the supertrellis boundary (the K-1
bit tail plus whatever alignment fill the supertrellis needs), encoded,
punctured and mapped. The gains are returned with the frame as perfect CSI.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from constellation_designer.channel.fading import complex_noise, nakagami_gain
from constellation_designer.codec.encoder import build_encoder, encode
from constellation_designer.codec.mapping import labels_to_bits, map_symbols
from constellation_designer.codec.puncture import puncture
from constellation_designer.codec.trellis import SuperTrellis, build_supertrellis
from constellation_designer.core.constellation import Constellation
from constellation_designer.core.errors import CodecError, ConfigurationError
from constellation_designer.core.models import ChannelContext, McsEntry


@dataclass(frozen=True)
class Frame:
    """
    One transmitted frame.

    Attributes:
        info_bits: N_b information bits
        coded_bits: N_c coded bits after puncturing, as mapped
        symbols: N_s transmitted points
        gains: N_s fading amplitudes
        received: N_s received samples
        padding_bits: Zero bits appended after the information bits
    """

    info_bits: np.ndarray = field(repr=False)
    coded_bits: np.ndarray = field(repr=False)
    symbols: np.ndarray = field(repr=False)
    gains: np.ndarray = field(repr=False)
    received: np.ndarray = field(repr=False)
    padding_bits: int = 0

    @property
    def n_info(self) -> int:
        return self.info_bits.size

    @property
    def n_symbols(self) -> int:
        return self.symbols.size


@lru_cache(maxsize=32)
def trellis_for_mcs(mcs: McsEntry) -> SuperTrellis:
    """Supertrellis of a scheme, built once per scheme."""
    return build_supertrellis(build_encoder(mcs.generators), mcs.puncture, mcs.modulation_order)


def _through_channel(
    symbols: np.ndarray,
    ctx: ChannelContext,
    rng: np.random.Generator,
    add_noise: bool
):
    gains = nakagami_gain(ctx, rng, size=symbols.size)
    received = gains * symbols
    if add_noise:
        received = received + complex_noise(ctx.n0, rng, symbols.size)
    return gains, received


def transmit_frame(
    info_bits: Sequence[int],
    mcs: McsEntry,
    constellation: Constellation,
    ctx: ChannelContext,
    rng: np.random.Generator,
    trellis: Optional[SuperTrellis] = None,
    add_noise: bool = True
) -> Frame:
    """
    Encode, puncture, map and send one frame.

    Args:
        info_bits: Information bits
        mcs: Scheme whose code and modulation order are used
        constellation: Points for the scheme's labels
        ctx: Channel context
        rng: Random generator for gains and noise
        trellis: Prebuilt supertrellis of the scheme (built when omitted)
        add_noise: False leaves r_i = h_i s_i

    Returns:
        Frame with perfect CSI

    Raises:
        CodecError: If the constellation size differs from the scheme's M
    """
    if constellation.M != mcs.modulation_order:
        raise CodecError(
            f"MCS-{mcs.id} uses M={mcs.modulation_order}, constellation has {constellation.M} points"
        )
    trellis = trellis or trellis_for_mcs(mcs)
    info = np.asarray(info_bits, dtype=np.uint8)
    padding = trellis.frame_padding(info.size)

    coded = encode(
        trellis.encoder,
        np.concatenate([info, np.zeros(padding, dtype=np.uint8)]),
        terminate=False,
    )
    if mcs.puncture is not None:
        coded = puncture(coded, mcs.puncture)
    symbols = map_symbols(coded, constellation)
    gains, received = _through_channel(symbols, ctx, rng, add_noise)
    return Frame(
        info_bits=info,
        coded_bits=coded,
        symbols=symbols,
        gains=gains,
        received=received,
        padding_bits=padding,
    )


def transmit_uncoded(
    info_bits: Sequence[int],
    constellation: Constellation,
    ctx: ChannelContext,
    rng: np.random.Generator,
    add_noise: bool = True
) -> Frame:
    """Map information bits straight onto the constellation, no encoder."""
    info = np.asarray(info_bits, dtype=np.uint8)
    if info.size % constellation.bits_per_symbol:
        raise ConfigurationError(
            f"{info.size} bits do not fill whole {constellation.M}-ary symbols"
        )
    symbols = map_symbols(info, constellation)
    gains, received = _through_channel(symbols, ctx, rng, add_noise)
    return Frame(info_bits=info, coded_bits=info, symbols=symbols, gains=gains, received=received)


def detect_uncoded(frame: Frame, constellation: Constellation) -> np.ndarray:
    """Symbol-wise minimum-distance detection with perfect CSI, returned as bits."""
    distances = np.abs(
        frame.received[:, None] - frame.gains[:, None] * constellation.points[None, :]
    ) ** 2
    return labels_to_bits(np.argmin(distances, axis=1), constellation.bits_per_symbol)
