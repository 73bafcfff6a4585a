"""
SNR-adaptive constellation and MCS selection.

A constellation source is either "adaptive" (the look-up-table design whose
SNR label is nearest to the operating SNR) or "conventional" (Gray QAM shared
by all schemes of the same order).
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Literal, Optional, Sequence, Tuple

from constellation_designer.adapt.mcs import conventional_constellation
from constellation_designer.adapt.spectral import spectral_efficiency
from constellation_designer.bound.transfer import evaluate_bound
from constellation_designer.channel.link import trellis_for_mcs
from constellation_designer.channel.simulate import simulate_ber
from constellation_designer.config import settings
from constellation_designer.core.constellation import Constellation
from constellation_designer.core.errors import ConfigurationError, LutKeyError
from constellation_designer.core.models import (
    ChannelContext,
    LutRecord,
    McsEntry,
    SeCurvePoint,
    StopRule,
)
from constellation_designer.services.lut_store import LutStoreInterface

logger = logging.getLogger(__name__)

ConstellationSource = Literal["adaptive", "conventional"]
PbSource = Literal["bound", "sim"]


def select_record(m: Any, snr_db: float, mcs_id: int, store: LutStoreInterface) -> LutRecord:
    """
    Record of (m, mcs) whose SNR label is nearest to `snr_db`.

    Equidistant labels resolve to the lower SNR, the more conservative design.

    Raises:
        LutKeyError: If the store holds nothing for (m, mcs)
    """
    candidates = store.records(m=m, mcs=mcs_id)
    if not candidates:
        raise LutKeyError(f"no LUT records for m={m}, MCS-{mcs_id}")
    return min(candidates, key=lambda r: (abs(r.snr_db - snr_db), r.snr_db))


def select_constellation(m: Any, snr_db: float, mcs_id: int, store: LutStoreInterface) -> Constellation:
    """
    Constellation to transmit at (m, snr_db) with scheme `mcs_id`.

    Example:
        >>> complex(select_constellation(2, 12.4, 1, get_fixture_store()).points[0])
        (0.1358+0.6934j)
    """
    return Constellation.from_pairs(select_record(m, snr_db, mcs_id, store).points)


def constellation_for(
    mcs: McsEntry,
    m: Any,
    snr_db: float,
    source: ConstellationSource,
    store: Optional[LutStoreInterface] = None,
    fallback: bool = False
) -> Constellation:
    """
    Resolve a constellation source at one operating point.

    Args:
        mcs: Scheme
        m: Fading parameter
        snr_db: Operating SNR
        source: "adaptive" or "conventional"
        store: LUT store (required for adaptive)
        fallback: Use conventional QAM when the store has no design for the scheme

    Raises:
        ConfigurationError: For an unknown source or a missing store
        LutKeyError: If adaptive lookup fails and fallback is off
    """
    if source == "conventional":
        return conventional_constellation(mcs)
    if source != "adaptive":
        raise ConfigurationError(f"unknown constellation source {source!r}")
    if store is None:
        raise ConfigurationError("adaptive constellations need a LUT store")
    try:
        return select_constellation(m, snr_db, mcs.id, store)
    except LutKeyError:
        if not fallback:
            raise
        logger.warning(f"No LUT design for m={m}, MCS-{mcs.id}; using conventional QAM")
        return conventional_constellation(mcs)


def bit_error_probability(
    mcs: McsEntry,
    constellation: Constellation,
    ctx: ChannelContext,
    pb_source: PbSource = "bound",
    n_b: Optional[int] = None,
    stop: Optional[StopRule] = None,
    seed: Optional[int] = None
) -> float:
    """p_b from the analytical bound (clipped to 1, inf when divergent) or from simulation."""
    if pb_source == "bound":
        result = evaluate_bound(trellis_for_mcs(mcs), constellation, ctx)
        return 1.0 if result.divergent else min(result.p_b_bound, 1.0)
    if pb_source == "sim":
        return simulate_ber(mcs, constellation, ctx, n_b=n_b, stop=stop, seed=seed).ber
    raise ConfigurationError(f"unknown p_b source {pb_source!r}")


def se_point(
    mcs: McsEntry,
    constellation: Constellation,
    ctx: ChannelContext,
    snr_db: float,
    n_b: int,
    pb_source: PbSource = "bound",
    stop: Optional[StopRule] = None,
    seed: Optional[int] = None
) -> SeCurvePoint:
    p_b = bit_error_probability(mcs, constellation, ctx, pb_source, n_b, stop, seed)
    return SeCurvePoint(
        snr_db=snr_db,
        mcs=mcs.id,
        pb_source=pb_source,
        pb=p_b,
        se=spectral_efficiency(p_b, mcs.modulation_order, mcs.rate, n_b),
    )


def select_mcs(
    m: Any,
    snr_db: float,
    candidates: Sequence[McsEntry],
    store: Optional[LutStoreInterface],
    n_b: Optional[int] = None,
    source: ConstellationSource = "adaptive",
    omega: Optional[float] = None
) -> Tuple[int, SeCurvePoint]:
    """
    Scheme with the highest bound-based spectral efficiency at (m, snr_db).

    Ties go to the lower modulation order, then the lower rate.

    Returns:
        (winning MCS id, its SE point)

    Raises:
        ConfigurationError: If no candidates are given
    """
    if not candidates:
        raise ConfigurationError("MCS selection needs at least one candidate")
    n_b = settings.DEFAULT_FRAME_BITS if n_b is None else n_b
    ctx = ChannelContext.from_snr_db(m=m, snr_db=snr_db, omega=omega)

    scored = []
    for mcs in candidates:
        constellation = constellation_for(mcs, m, snr_db, source, store, fallback=True)
        point = se_point(mcs, constellation, ctx, snr_db, n_b)
        scored.append((-point.se, mcs.modulation_order, mcs.rate, mcs.id, point))
    best = min(scored, key=lambda row: row[:4])
    logger.debug(f"m={m}, {snr_db} dB: MCS-{best[3]} wins with SE {best[4].se:.4f}")
    return best[3], best[4]


@dataclass(frozen=True)
class SeCurveRow:
    """Per-MCS SE points at one SNR plus the envelope (best scheme)."""

    snr_db: float
    points: Dict[int, SeCurvePoint]
    envelope_mcs: int

    @property
    def envelope(self) -> float:
        return self.points[self.envelope_mcs].se


def se_curve(
    m: Any,
    snr_grid_db: Sequence[float],
    schemes: Sequence[McsEntry],
    source: ConstellationSource,
    store: Optional[LutStoreInterface] = None,
    n_b: Optional[int] = None,
    pb_source: PbSource = "bound",
    stop: Optional[StopRule] = None,
    seed: Optional[int] = None,
    omega: Optional[float] = None
) -> List[SeCurveRow]:
    """
    Spectral efficiency of every scheme over an SNR grid with the envelope.

    In adaptive mode each point uses the design nearest to its SNR; schemes
    with no design at all fall back to conventional QAM with a warning.
    """
    if not schemes:
        raise ConfigurationError("an SE curve needs at least one MCS")
    n_b = settings.DEFAULT_FRAME_BITS if n_b is None else n_b
    rows = []
    for snr_db in snr_grid_db:
        ctx = ChannelContext.from_snr_db(m=m, snr_db=snr_db, omega=omega)
        points = {}
        for mcs in schemes:
            constellation = constellation_for(mcs, m, snr_db, source, store, fallback=True)
            points[mcs.id] = se_point(mcs, constellation, ctx, snr_db, n_b, pb_source, stop, seed)
        envelope_mcs = min(
            schemes,
            key=lambda s: (-points[s.id].se, s.modulation_order, s.rate, s.id),
        ).id
        rows.append(SeCurveRow(snr_db=snr_db, points=points, envelope_mcs=envelope_mcs))
        logger.info(
            f"SE at m={m}, {snr_db} dB ({source}): envelope {points[envelope_mcs].se:.4f} "
            f"by MCS-{envelope_mcs}"
        )
    return rows
