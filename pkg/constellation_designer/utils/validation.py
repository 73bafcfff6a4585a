"""
Validation utilities.

Provides grid parsing, constellation checks and the verification of the
bundled published constellations.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from constellation_designer.adapt.mcs import get_mcs, rate_discrepancies
from constellation_designer.adapt.spectral import PRINTED_FORM_NOTE
from constellation_designer.bound.transfer import evaluate_bound
from constellation_designer.channel.link import trellis_for_mcs
from constellation_designer.config import settings
from constellation_designer.core.constellation import Constellation, qam_constellation
from constellation_designer.core.errors import ConfigurationError, ConstellationDesignError
from constellation_designer.core.models import RECORD_ENERGY_SLACK, ChannelContext
from constellation_designer.services.lut_store import LutStoreInterface, get_fixture_store

logger = logging.getLogger(__name__)


def parse_snr_grid(spec: str) -> List[float]:
    """
    Parse an SNR grid in dB.

    Accepts "start:end:step" (end inclusive), a comma-separated list, or a
    single value.

    Args:
        spec: Grid specification

    Returns:
        Grid values in dB

    Raises:
        ConfigurationError: For malformed specs, a nonpositive step or end < start

    Example:
        >>> parse_snr_grid("12:18:6")
        [12.0, 18.0]
        >>> parse_snr_grid("8,10")
        [8.0, 10.0]
    """
    text = spec.strip()
    try:
        if ":" in text:
            parts = [float(p) for p in text.split(":")]
            if len(parts) != 3:
                raise ConfigurationError(f"SNR range must be start:end:step, got {spec!r}")
            start, end, step = parts
            if step <= 0:
                raise ConfigurationError(f"SNR step must be positive, got {step}")
            if end < start:
                raise ConfigurationError(f"SNR range end {end} is below its start {start}")
            count = int(math.floor((end - start) / step + 1e-9)) + 1
            return [round(start + i * step, 10) for i in range(count)]
        return [float(p) for p in text.split(",") if p.strip()]
    except ValueError as e:
        raise ConfigurationError(f"cannot parse SNR grid {spec!r}: {e}") from e


def default_design_grid() -> List[float]:
    """
    Design SNRs used when optimize is given no grid.

    Runs from settings.LUT_SNR_MIN_DB to settings.LUT_SNR_MAX_DB in steps of
    settings.LUT_GRID_STEP_DB.

    Example:
        >>> default_design_grid()
        [12.0, 14.0, 16.0, 18.0]
    """
    return parse_snr_grid(
        f"{settings.LUT_SNR_MIN_DB}:{settings.LUT_SNR_MAX_DB}:{settings.LUT_GRID_STEP_DB}"
    )


def validate_energy(points: Sequence[complex], e_s: float = 1.0, slack: float = 0.0) -> List[str]:
    """
    Check the average-energy constraint.

    Returns:
        List of validation error messages (empty if valid)
    """
    values = np.asarray(points, dtype=np.complex128)
    energy = float(np.mean(np.abs(values) ** 2))
    if energy > e_s * (1.0 + slack):
        return [f"mean energy {energy:.6f} exceeds {e_s} (slack {slack:g})"]
    return []


def validate_labeling(points: Sequence[complex]) -> List[str]:
    """
    Check that labels 0..M-1 map one-to-one onto distinct points.

    Returns:
        List of validation error messages (empty if valid)
    """
    errors = []
    values = np.asarray(points, dtype=np.complex128)
    count = values.size
    if count < 2 or count & (count - 1):
        errors.append(f"{count} points cannot carry whole-bit labels")
    if np.unique(values).size != count:
        errors.append("two labels map to the same point")
    return errors


@dataclass
class FixtureReport:
    """Outcome of a fixture verification: errors fail it, notes are informational."""

    errors: List[str] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)
    checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.errors


def verify_fixtures(store: Optional[LutStoreInterface] = None) -> FixtureReport:
    """
    Verify the published constellations.

    For every stored design: the energy budget (with rounding slack), the
    label bijection, and a bound strictly below conventional QAM at the
    design point. Both bounds use the Chernoff distance divisor the store
    declares, falling back to settings.CHERNOFF_DISTANCE_DIVISOR. The
    conventional reference must equal unit-energy Gray 16-QAM to 4 decimals.

    Args:
        store: Store to verify (the bundled fixture store by default)

    Returns:
        FixtureReport
    """
    store = store or get_fixture_store()
    report = FixtureReport()
    report.notes.extend(rate_discrepancies())
    report.notes.append(PRINTED_FORM_NOTE)

    try:
        records = store.records()
        references = store.references()
        divisor = store.distance_divisor()
    except ConstellationDesignError as e:
        report.errors.append(f"fixture store unreadable: {e}")
        return report

    if divisor is None:
        divisor = settings.CHERNOFF_DISTANCE_DIVISOR
    elif divisor != settings.CHERNOFF_DISTANCE_DIVISOR:
        report.notes.append(
            f"designs were made with Chernoff distance divisor {divisor:g}; "
            f"bounds here use it instead of {settings.CHERNOFF_DISTANCE_DIVISOR:g}"
        )

    for reference in references:
        points = Constellation.from_pairs(reference.points).points
        report.checked += 1
        qam = qam_constellation(points.size).points
        if not np.allclose(points, qam, atol=5e-5, rtol=0.0):
            report.errors.append(f"{reference.name}: differs from Gray QAM beyond 4 decimals")
        report.errors.extend(f"{reference.name}: {e}" for e in validate_labeling(points))
        report.errors.extend(
            f"{reference.name}: {e}" for e in validate_energy(points, slack=RECORD_ENERGY_SLACK)
        )

    for record in records:
        label = f"m={record.m}, {record.snr_db} dB, MCS-{record.mcs}"
        report.checked += 1
        constellation = Constellation.from_pairs(record.points)
        report.errors.extend(f"{label}: {e}" for e in validate_labeling(constellation.points))
        report.errors.extend(
            f"{label}: {e}" for e in validate_energy(constellation.points, slack=RECORD_ENERGY_SLACK)
        )

        try:
            mcs = get_mcs(record.mcs)
            trellis = trellis_for_mcs(mcs)
            ctx = ChannelContext.from_snr_db(
                m=record.m, snr_db=record.snr_db, distance_divisor=divisor
            )
            optimized = evaluate_bound(trellis, constellation, ctx)
            conventional = evaluate_bound(trellis, qam_constellation(mcs.modulation_order), ctx)
        except ConstellationDesignError as e:
            logger.error(f"Bound evaluation failed for {label}", exc_info=True)
            report.errors.append(f"{label}: bound evaluation failed: {e}")
            continue

        if not optimized.p_b_bound < conventional.p_b_bound:
            report.errors.append(
                f"{label}: bound {optimized.p_b_bound:.4e} is not below conventional "
                f"{conventional.p_b_bound:.4e}"
            )
        else:
            logger.info(
                f"{label}: bound {optimized.p_b_bound:.4e} < conventional {conventional.p_b_bound:.4e}"
            )
    return report
