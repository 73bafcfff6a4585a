"""
Required-SNR sweeps over the Viterbi traceback window.

For every (tau, target BER) cell the smallest average SNR at which the
simulated BER meets the target is found by bisection in dB. All probes of a
sweep share the frame seed, so neighbouring cells see the same bits, gains
and noise.
"""

import logging
from typing import Any, List, Optional, Sequence

from constellation_designer.adapt.selection import ConstellationSource, constellation_for
from constellation_designer.channel.link import trellis_for_mcs
from constellation_designer.channel.simulate import simulate_ber
from constellation_designer.config import settings
from constellation_designer.core.errors import ConfigurationError
from constellation_designer.core.models import (
    ChannelContext,
    DecoderConfig,
    LatencyCell,
    McsEntry,
    StopRule,
)
from constellation_designer.services.lut_store import LutStoreInterface
from constellation_designer.utils.search import bisect_threshold

logger = logging.getLogger(__name__)


def latency_sweep(
    mcs: McsEntry,
    source: ConstellationSource,
    m: Any,
    targets: Sequence[float],
    taus: Sequence[int],
    store: Optional[LutStoreInterface] = None,
    n_b: Optional[int] = None,
    stop: Optional[StopRule] = None,
    seed: Optional[int] = None,
    snr_min_db: Optional[float] = None,
    snr_max_db: Optional[float] = None,
    resolution_db: Optional[float] = None,
    workers: Optional[int] = None,
    omega: Optional[float] = None
) -> List[LatencyCell]:
    """
    Required SNR for each traceback window and target BER.

    Args:
        mcs: Scheme
        source: "adaptive" re-selects the constellation at every probed SNR
        m: Fading parameter
        targets: Target BERs in (0, 0.5)
        taus: Traceback windows in supertrellis steps
        store: LUT store for adaptive mode
        n_b: Frame size
        stop: Monte-Carlo stopping rule per probe
        seed: Frame seed shared by all probes
        snr_min_db: Search range start (settings.LATENCY_SNR_MIN_DB)
        snr_max_db: Search range end (settings.LATENCY_SNR_MAX_DB)
        resolution_db: Bisection resolution (settings.LATENCY_RESOLUTION_DB)
        workers: Worker processes per probe

    Returns:
        One LatencyCell per (tau, target), tau-major; unreachable targets
        have attained=False and no required SNR

    Raises:
        ConfigurationError: For a window shorter than the constraint length
            or a target outside (0, 0.5)
    """
    trellis = trellis_for_mcs(mcs)
    constraint_length = trellis.encoder.constraint_length
    for tau in taus:
        if tau < constraint_length:
            raise ConfigurationError(
                f"traceback window {tau} is shorter than the constraint length {constraint_length}"
            )
    for target in targets:
        if not 0.0 < target < 0.5:
            raise ConfigurationError(f"target BER must lie in (0, 0.5), got {target}")

    snr_min_db = settings.LATENCY_SNR_MIN_DB if snr_min_db is None else snr_min_db
    snr_max_db = settings.LATENCY_SNR_MAX_DB if snr_max_db is None else snr_max_db
    resolution_db = settings.LATENCY_RESOLUTION_DB if resolution_db is None else resolution_db
    seed = settings.DEFAULT_SEED if seed is None else seed

    cells = []
    for tau in taus:
        decoder = DecoderConfig(traceback_window=tau)
        for target in targets:
            def meets_target(snr_db: float) -> bool:
                ctx = ChannelContext.from_snr_db(m=m, snr_db=snr_db, omega=omega)
                constellation = constellation_for(mcs, m, snr_db, source, store, fallback=True)
                estimate = simulate_ber(
                    mcs, constellation, ctx,
                    n_b=n_b, stop=stop, seed=seed, decoder=decoder, workers=workers,
                )
                return estimate.ber <= target

            snr = bisect_threshold(meets_target, snr_min_db, snr_max_db, resolution_db)
            cell = LatencyCell(
                tau=tau,
                tau_bits=tau * trellis.l,
                target_ber=target,
                required_snr_db=snr,
                attained=snr is not None,
            )
            if cell.attained:
                logger.info(f"tau={tau} ({cell.tau_bits} bits), target {target:g}: {snr:.2f} dB")
            else:
                logger.warning(
                    f"tau={tau}, target {target:g} not reached below {snr_max_db} dB"
                )
            cells.append(cell)
    return cells
