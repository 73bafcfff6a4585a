"""
Core module for the constellation designer.

Contains the data models, the constellation type and the error hierarchy
shared by every other module.
"""

from .constellation import Constellation, qam_constellation
from .errors import (
    AlignmentError,
    CodecError,
    ConfigurationError,
    ConstellationDesignError,
    ConvergenceError,
    FixtureError,
    LutFormatError,
    LutKeyError,
    NumericalFailureError,
)
from .models import (
    AWGN,
    BerEstimate,
    BoundResult,
    ChannelContext,
    DecoderConfig,
    LatencyCell,
    LutRecord,
    McsEntry,
    PsoConfig,
    PuncturePattern,
    ReferenceConstellation,
    RunManifest,
    SeCurvePoint,
    StopRule,
    check_point_set,
    is_awgn,
)

__all__ = [
    # Constellations
    "Constellation",
    "qam_constellation",
    # Models
    "AWGN",
    "BerEstimate",
    "BoundResult",
    "ChannelContext",
    "DecoderConfig",
    "LatencyCell",
    "LutRecord",
    "McsEntry",
    "PsoConfig",
    "PuncturePattern",
    "ReferenceConstellation",
    "RunManifest",
    "SeCurvePoint",
    "StopRule",
    "check_point_set",
    "is_awgn",
    # Errors
    "AlignmentError",
    "CodecError",
    "ConfigurationError",
    "ConstellationDesignError",
    "ConvergenceError",
    "FixtureError",
    "LutFormatError",
    "LutKeyError",
    "NumericalFailureError",
]
