"""
Look-up-table design over an SNR grid.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, List, Optional, Sequence

from constellation_designer.adapt.mcs import conventional_constellation
from constellation_designer.bound.transfer import evaluate_bound
from constellation_designer.channel.link import trellis_for_mcs
from constellation_designer.core.errors import NumericalFailureError
from constellation_designer.core.models import ChannelContext, LutRecord, McsEntry, PsoConfig
from constellation_designer.services.lut_store import LutStoreInterface
from constellation_designer.shaper.pso import pso_optimize

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DesignPoint:
    """
    Outcome at one grid point.

    Attributes:
        snr_db: Grid SNR
        record: Stored record
        conventional_bound: Bound of Gray QAM in the same context (inf if divergent)
        gain_db: 10 log10(conventional bound / optimized bound)
    """

    snr_db: float
    record: LutRecord
    conventional_bound: float
    gain_db: float


@dataclass
class DesignReport:
    points: List[DesignPoint] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)


def design_lut(
    m: Any,
    snr_grid_db: Sequence[float],
    mcs: McsEntry,
    cfg: PsoConfig,
    store: LutStoreInterface,
    omega: Optional[float] = None,
    workers: Optional[int] = None
) -> DesignReport:
    """
    Optimize and store one constellation per grid SNR.

    Points where every candidate bound diverges are skipped; the skip is
    logged and returned in the report's warnings.

    Args:
        m: Fading parameter
        snr_grid_db: Design SNRs in dB
        mcs: Scheme
        cfg: Swarm configuration
        store: Destination store
        omega: Average fading power
        workers: Fitness-evaluation processes

    Returns:
        DesignReport with stored points and warnings
    """
    trellis = trellis_for_mcs(mcs)
    conventional = conventional_constellation(mcs)
    report = DesignReport()

    for snr_db in snr_grid_db:
        ctx = ChannelContext.from_snr_db(m=m, snr_db=snr_db, omega=omega, e_s=cfg.energy_budget)
        try:
            reference = evaluate_bound(trellis, conventional, ctx).p_b_bound
        except NumericalFailureError:
            reference = math.inf

        result = pso_optimize(cfg, ctx, trellis, mcs.modulation_order, workers=workers)
        if not result.converged:
            message = f"skipped m={m}, {snr_db} dB, MCS-{mcs.id}: the bound diverges for every candidate"
            logger.warning(message)
            report.warnings.append(message)
            continue

        record = result.to_record(mcs.id, snr_db=snr_db)
        store.store(record)
        gain_db = math.inf if math.isinf(reference) else 10.0 * math.log10(reference / result.fitness)
        report.points.append(
            DesignPoint(snr_db=snr_db, record=record, conventional_bound=reference, gain_db=gain_db)
        )
        logger.info(
            f"Designed m={m}, {snr_db} dB, MCS-{mcs.id}: bound {result.fitness:.4e} "
            f"vs conventional {reference:.4e} ({gain_db:.2f} dB)"
        )
    return report
