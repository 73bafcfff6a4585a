"""
Adapt module: MCS catalog, spectral efficiency, SNR-adaptive selection,
look-up-table design and decoding-latency sweeps.
"""

from .design import DesignPoint, DesignReport, design_lut
from .latency import latency_sweep
from .mcs import MCS_CATALOG, conventional_constellation, get_mcs, get_mcs_list, rate_discrepancies
from .selection import (
    SeCurveRow,
    constellation_for,
    se_curve,
    select_constellation,
    select_mcs,
    select_record,
)
from .spectral import PRINTED_FORM_NOTE, spectral_efficiency

__all__ = [
    "DesignPoint",
    "DesignReport",
    "design_lut",
    "latency_sweep",
    "MCS_CATALOG",
    "conventional_constellation",
    "get_mcs",
    "get_mcs_list",
    "rate_discrepancies",
    "SeCurveRow",
    "constellation_for",
    "se_curve",
    "select_constellation",
    "select_mcs",
    "select_record",
    "PRINTED_FORM_NOTE",
    "spectral_efficiency",
]
