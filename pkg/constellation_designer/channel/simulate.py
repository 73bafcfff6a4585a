"""
Monte-Carlo BER estimation.

Frame k draws its bits, gains and noise from the stream keyed by
(seed, k), so an estimate depends only on the seed and the stopping rule.
Frames are simulated in batches (in worker processes when asked) and the
per-frame error counts are then accumulated in frame order, stopping at the
first frame that reaches the error target. Serial and parallel runs therefore
agree exactly.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from typing import Optional

import numpy as np

from constellation_designer.channel.link import (
    detect_uncoded,
    transmit_frame,
    transmit_uncoded,
    trellis_for_mcs,
)
from constellation_designer.codec.trellis import SuperTrellis
from constellation_designer.codec.viterbi import viterbi_decode
from constellation_designer.config import settings
from constellation_designer.core.constellation import Constellation
from constellation_designer.core.errors import ConfigurationError
from constellation_designer.core.models import (
    BerEstimate,
    ChannelContext,
    DecoderConfig,
    McsEntry,
    StopRule,
)
from constellation_designer.utils.rng import SIMULATION_STREAM, stream

logger = logging.getLogger(__name__)

FRAMES_PER_WORKER_BATCH = 8


def frame_errors(
    index: int,
    seed: int,
    mcs: Optional[McsEntry],
    constellation: Constellation,
    ctx: ChannelContext,
    n_b: int,
    trellis: Optional[SuperTrellis],
    decoder: Optional[DecoderConfig]
) -> int:
    """Information-bit errors of frame `index`; `mcs=None` runs uncoded."""
    rng = stream(seed, SIMULATION_STREAM, index)
    info = rng.integers(0, 2, n_b, dtype=np.uint8)

    if mcs is None:
        frame = transmit_uncoded(info, constellation, ctx, rng)
        decided = detect_uncoded(frame, constellation)
    else:
        frame = transmit_frame(info, mcs, constellation, ctx, rng, trellis=trellis)
        decided = viterbi_decode(
            frame.received,
            frame.gains,
            constellation,
            trellis,
            config=decoder,
            n_info_bits=n_b,
        )
    return int(np.count_nonzero(decided != info))


def simulate_ber(
    mcs: Optional[McsEntry],
    constellation: Constellation,
    ctx: ChannelContext,
    n_b: Optional[int] = None,
    stop: Optional[StopRule] = None,
    seed: Optional[int] = None,
    decoder: Optional[DecoderConfig] = None,
    workers: Optional[int] = None,
    uncoded: bool = False
) -> BerEstimate:
    """
    Estimate the information-bit error rate of a scheme and constellation.

    Args:
        mcs: Scheme to simulate (ignored when uncoded)
        constellation: Transmit constellation
        ctx: Channel context
        n_b: Information bits per frame (settings.DEFAULT_FRAME_BITS)
        stop: Stopping rule (settings.MIN_BIT_ERRORS / settings.MAX_FRAMES)
        seed: Seed of the frame streams (settings.DEFAULT_SEED)
        decoder: Viterbi settings, e.g. a traceback window
        workers: Worker processes (settings.WORKERS); does not change the result
        uncoded: Map bits directly and detect symbol by symbol

    Returns:
        BerEstimate over the simulated frames

    Raises:
        ConfigurationError: For a missing scheme in coded mode or a bad frame size
        CodecError: If the constellation does not match the scheme

    Example:
        >>> from constellation_designer.core.constellation import qam_constellation
        >>> ctx = ChannelContext.from_snr_db(m=1, snr_db=10.0)
        >>> est = simulate_ber(None, qam_constellation(2), ctx, n_b=1000,
        ...                    stop=StopRule(min_errors=50, max_frames=10), seed=1, uncoded=True)
        >>> est.frames <= 10
        True
    """
    n_b = settings.DEFAULT_FRAME_BITS if n_b is None else n_b
    stop = stop or StopRule()
    seed = settings.DEFAULT_SEED if seed is None else seed
    workers = settings.WORKERS if workers is None else workers
    if n_b < 1:
        raise ConfigurationError(f"frame size must be positive, got {n_b}")

    if uncoded:
        scheme, trellis = None, None
    else:
        if mcs is None:
            raise ConfigurationError("coded simulation needs an MCS")
        scheme, trellis = mcs, trellis_for_mcs(mcs)

    job = partial(
        frame_errors,
        seed=seed,
        mcs=scheme,
        constellation=constellation,
        ctx=ctx,
        n_b=n_b,
        trellis=trellis,
        decoder=decoder,
    )
    executor = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    batch = FRAMES_PER_WORKER_BATCH * workers if executor else 1

    bit_errors = 0
    frames = 0
    try:
        while frames < stop.max_frames and bit_errors < stop.min_errors:
            indices = range(frames, min(frames + batch, stop.max_frames))
            counts = executor.map(job, indices) if executor else map(job, indices)
            for count in counts:
                bit_errors += count
                frames += 1
                if bit_errors >= stop.min_errors:
                    break
    finally:
        if executor is not None:
            executor.shutdown(cancel_futures=True)

    estimate = BerEstimate(bit_errors=bit_errors, bits_simulated=frames * n_b, frames=frames)
    logger.info(
        f"Simulated m={ctx.m} at {ctx.snr_db:.2f} dB: {bit_errors} errors in {frames} frames, "
        f"BER {estimate.ber:.4e} +/- {estimate.std_error:.1e}"
    )
    return estimate
