"""
Pydantic models for type-safe data structures in the constellation designer.

These models provide validation, serialization, and documentation for the
configuration objects, catalog entries and result records that flow between
the codec, bound, shaper, channel and adapt modules.

Example:
    >>> ctx = ChannelContext.from_snr_db(m=2, snr_db=12.0)
    >>> round(ctx.snr_db, 6)
    12.0
    >>> mcs = McsEntry(id=2, table_rate="3/4", modulation_order=16,
    ...                generators=[5, 7], puncture=PuncturePattern(mask=[[1, 1, 0], [0, 1, 1]]))
    >>> mcs.rate
    Fraction(3, 4)
"""

import hashlib
import math
from datetime import datetime
from fractions import Fraction
from typing import Any, Dict, List, Literal, Optional, Tuple, Union

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    PositiveInt,
    computed_field,
    field_validator,
    model_validator,
)

from constellation_designer.config import settings

AWGN = "awgn"
"""Fading-parameter sentinel for the m -> infinity (no fading) limit."""

FadingParameter = Union[PositiveInt, Literal["awgn"]]

# Published tables are rounded to 4 decimals, which can push the mean energy
# of a unit-energy constellation slightly above 1.
RECORD_ENERGY_SLACK = 0.02


def is_awgn(m: Any) -> bool:
    """True for the AWGN sentinel (string or an infinite float)."""
    if isinstance(m, str):
        return m.lower() in {AWGN, "inf", "infinity"}
    return isinstance(m, float) and math.isinf(m) and m > 0


def check_point_set(points):
    """Reject point lists whose size is not a power of two or whose mean energy exceeds 1 + slack."""
    count = len(points)
    if count & (count - 1):
        raise ValueError(f"number of points must be a power of two, got {count}")
    energy = sum(re * re + im * im for re, im in points) / count
    if energy > 1.0 + RECORD_ENERGY_SLACK:
        raise ValueError(f"mean symbol energy {energy:.6f} exceeds the unit budget")
    return points


def db_to_linear(value_db: float) -> float:
    return 10.0 ** (value_db / 10.0)


def linear_to_db(value: float) -> float:
    return 10.0 * math.log10(value)


class ChannelContext(BaseModel):
    """
    Channel parameters seen by the bound engine and the link simulator.

    Attributes:
        m: Nakagami fading parameter (positive integer) or "awgn"
        omega: Average fading power
        n0: Total noise variance (N0/2 per dimension)
        e_s: Average symbol energy budget
        distance_divisor: c in the Chernoff factor (1 + Omega d^2 / (c N0 m))^-m

    Example:
        >>> ctx = ChannelContext(m=1, omega=1.0, n0=0.1, e_s=1.0)
        >>> ctx.snr
        10.0
    """

    model_config = ConfigDict(frozen=True)

    m: FadingParameter = Field(..., description="Nakagami-m parameter or 'awgn'")
    omega: float = Field(
        default_factory=lambda: settings.DEFAULT_FADING_POWER,
        gt=0,
        description="Average fading power"
    )
    n0: float = Field(..., gt=0, description="Noise variance N0")
    e_s: float = Field(default=1.0, gt=0, description="Average symbol energy budget")
    distance_divisor: float = Field(
        default_factory=lambda: settings.CHERNOFF_DISTANCE_DIVISOR,
        gt=0,
        description="Scale of the squared distance in the Chernoff factor"
    )

    @field_validator("m", mode="before")
    @classmethod
    def normalize_awgn(cls, v):
        """Accept 'AWGN', 'inf' and float('inf') as the AWGN sentinel."""
        if is_awgn(v):
            return AWGN
        return v

    @property
    def is_awgn(self) -> bool:
        return self.m == AWGN

    @property
    def snr(self) -> float:
        """Average received SNR Omega * E_s / N0 (linear)."""
        return self.omega * self.e_s / self.n0

    @property
    def snr_db(self) -> float:
        return linear_to_db(self.snr)

    @classmethod
    def from_snr_db(
        cls,
        m: Any,
        snr_db: float,
        omega: Optional[float] = None,
        e_s: float = 1.0,
        distance_divisor: Optional[float] = None
    ) -> "ChannelContext":
        """
        Build a context whose N0 realizes the requested average SNR.

        Omega and the distance divisor default to settings.DEFAULT_FADING_POWER
        and settings.CHERNOFF_DISTANCE_DIVISOR.
        """
        omega = settings.DEFAULT_FADING_POWER if omega is None else omega
        extra = {} if distance_divisor is None else {"distance_divisor": distance_divisor}
        return cls(m=m, omega=omega, e_s=e_s, n0=omega * e_s / db_to_linear(snr_db), **extra)


class PuncturePattern(BaseModel):
    """
    Periodic puncturing mask, one row per encoder output stream.

    Attributes:
        mask: {0,1} matrix with `period` columns

    Example:
        >>> p = PuncturePattern(mask=[[1, 1, 0], [0, 1, 1]])
        >>> p.period, p.kept_per_period
        (3, 4)
    """

    model_config = ConfigDict(frozen=True)

    mask: Tuple[Tuple[int, ...], ...] = Field(..., description="Binary keep mask")

    @field_validator("mask")
    @classmethod
    def validate_mask(cls, v):
        """Require a rectangular binary mask with no fully erased column."""
        if not v or not v[0]:
            raise ValueError("puncture mask must be non-empty")
        period = len(v[0])
        if any(len(row) != period for row in v):
            raise ValueError("puncture mask rows must have equal length")
        if any(bit not in (0, 1) for row in v for bit in row):
            raise ValueError("puncture mask entries must be 0 or 1")
        for col in range(period):
            if not any(row[col] for row in v):
                raise ValueError(f"puncture mask column {col} erases every stream")
        return v

    @property
    def streams(self) -> int:
        return len(self.mask)

    @property
    def period(self) -> int:
        return len(self.mask[0])

    @property
    def kept_per_period(self) -> int:
        return sum(sum(row) for row in self.mask)

    @property
    def rate(self) -> Fraction:
        """Effective code rate of a single-input base code under this mask."""
        return Fraction(self.period, self.kept_per_period)

    @property
    def density(self) -> float:
        return self.kept_per_period / (self.streams * self.period)


class DecoderConfig(BaseModel):
    """
    Viterbi decoder settings.

    Attributes:
        traceback_window: Back-search limit tau in trellis steps (None = whole frame,
            default from settings.DEFAULT_TRACEBACK where 0 means whole frame)
    """

    model_config = ConfigDict(frozen=True)

    traceback_window: Optional[int] = Field(
        default_factory=lambda: settings.DEFAULT_TRACEBACK or None,
        ge=1,
        description="Fixed-lag window in supertrellis steps; None decodes the whole frame"
    )

    metric: Literal["soft_euclidean_csi"] = Field(
        default="soft_euclidean_csi",
        description="Branch metric: squared Euclidean distance with perfect CSI"
    )


class PsoConfig(BaseModel):
    """
    Particle swarm parameters.

    Attributes:
        swarm_size: Number of particles P (>= 2)
        iterations: Number of iterations N_iter
        c1: Cognitive acceleration
        c2: Social acceleration
        inertia_start: Inertia weight at the first iteration
        inertia_end: Inertia weight at the last iteration
        seed: Seed of the swarm random stream
        energy_budget: Average energy constraint E_s
        greedy_acceptance: Keep a move only if it does not worsen the particle's best

    Example:
        >>> cfg = PsoConfig(swarm_size=10, iterations=20, seed=7)
        >>> cfg.inertia(0), cfg.inertia(19)
        (0.9, 0.4)
    """

    model_config = ConfigDict(frozen=True)

    swarm_size: int = Field(default_factory=lambda: settings.PSO_SWARM_SIZE, ge=2)
    iterations: int = Field(default_factory=lambda: settings.PSO_ITERATIONS, ge=1)
    c1: float = Field(default_factory=lambda: settings.PSO_COGNITIVE_WEIGHT, gt=0)
    c2: float = Field(default_factory=lambda: settings.PSO_SOCIAL_WEIGHT, gt=0)
    inertia_start: float = Field(default_factory=lambda: settings.PSO_INERTIA_START, gt=0)
    inertia_end: float = Field(default_factory=lambda: settings.PSO_INERTIA_END, gt=0)
    seed: int = Field(default_factory=lambda: settings.DEFAULT_SEED, ge=0)
    energy_budget: float = Field(default_factory=lambda: settings.DEFAULT_ENERGY_BUDGET, gt=0)
    greedy_acceptance: bool = Field(default_factory=lambda: settings.PSO_GREEDY_ACCEPTANCE)

    @model_validator(mode="after")
    def validate_inertia(self):
        """Inertia must decay (or stay flat) over the run."""
        if self.inertia_end > self.inertia_start:
            raise ValueError(
                f"inertia_end ({self.inertia_end}) must not exceed inertia_start ({self.inertia_start})"
            )
        return self

    def inertia(self, iteration: int) -> float:
        """Linearly decayed inertia weight for a 0-indexed iteration."""
        if self.iterations == 1:
            return self.inertia_start
        frac = iteration / (self.iterations - 1)
        return self.inertia_start + (self.inertia_end - self.inertia_start) * frac

    def digest(self) -> str:
        """Short content hash used as LUT provenance."""
        return hashlib.sha256(self.model_dump_json().encode("utf-8")).hexdigest()[:12]


class StopRule(BaseModel):
    """Monte-Carlo stopping rule: stop at min_errors bit errors or max_frames frames."""

    model_config = ConfigDict(frozen=True)

    min_errors: int = Field(default_factory=lambda: settings.MIN_BIT_ERRORS, ge=1)
    max_frames: int = Field(default_factory=lambda: settings.MAX_FRAMES, ge=1)


class McsEntry(BaseModel):
    """
    Modulation and coding scheme.

    The code rate is always derived from the generators and the puncturing
    mask; `table_rate` keeps the label a catalog printed for the scheme, which
    may disagree with the mask (see `rate_discrepancy`).

    Attributes:
        id: Scheme identifier
        table_rate: Rate label as published, e.g. "3/4"
        modulation_order: M
        generators: Octal-digit generator polynomials
        puncture: Optional puncturing pattern
    """

    model_config = ConfigDict(frozen=True)

    id: int = Field(..., ge=0, description="MCS identifier")
    table_rate: Optional[str] = Field(default=None, description="Published rate label")
    modulation_order: int = Field(..., ge=2, description="Modulation order M")
    generators: Tuple[int, ...] = Field(..., min_length=1, description="Octal generators")
    puncture: Optional[PuncturePattern] = Field(default=None, description="Puncture mask")

    @field_validator("modulation_order")
    @classmethod
    def validate_power_of_two(cls, v):
        if v & (v - 1):
            raise ValueError(f"modulation order must be a power of two, got {v}")
        return v

    @model_validator(mode="after")
    def validate_streams(self):
        """Mask rows must match the number of encoder output streams."""
        if self.puncture is not None and self.puncture.streams != len(self.generators):
            raise ValueError(
                f"puncture mask has {self.puncture.streams} rows but the encoder has "
                f"{len(self.generators)} output streams"
            )
        return self

    @property
    def rate(self) -> Fraction:
        if self.puncture is None:
            return Fraction(1, len(self.generators))
        return Fraction(self.puncture.period, self.puncture.kept_per_period)

    @property
    def bits_per_symbol(self) -> int:
        return self.modulation_order.bit_length() - 1

    @property
    def peak_efficiency(self) -> float:
        """log2(M) * R, the error-free spectral efficiency."""
        return self.bits_per_symbol * float(self.rate)

    @property
    def rate_discrepancy(self) -> Optional[str]:
        """Human-readable note when the published rate differs from the mask rate."""
        if self.table_rate is None or Fraction(self.table_rate) == self.rate:
            return None
        return (
            f"MCS-{self.id}: published rate {self.table_rate} but the puncturing mask "
            f"yields rate {self.rate}"
        )


class LutRecord(BaseModel):
    """
    A stored optimized constellation keyed by (m, SNR in dB, MCS id).

    Attributes:
        m: Fading parameter the design targets
        snr_db: Design average SNR in dB
        mcs: MCS identifier
        generators: Encoder generators the design assumed
        puncture: Puncturing mask the design assumed (or None)
        points: [[re, im], ...] in label order
        bound: Analytical BER bound at the design point
        provenance: "pso:<config hash>:seed=<seed>" or "published-table"
    """

    m: FadingParameter
    snr_db: float
    mcs: int = Field(..., ge=0)
    generators: List[int] = Field(..., min_length=1)
    puncture: Optional[List[List[int]]] = None
    points: List[Tuple[float, float]] = Field(..., min_length=2)
    bound: Optional[float] = None
    provenance: str = Field(..., min_length=1)

    @field_validator("m", mode="before")
    @classmethod
    def normalize_awgn(cls, v):
        return AWGN if is_awgn(v) else v

    @field_validator("points")
    @classmethod
    def validate_points(cls, v):
        """Point count must be a power of two and the set must meet the energy budget."""
        return check_point_set(v)

    @property
    def key(self) -> Tuple[Any, float, int]:
        return (self.m, self.snr_db, self.mcs)


class ReferenceConstellation(BaseModel):
    """
    A named constellation shared by several schemes regardless of (m, SNR),
    such as the conventional 16-QAM of the published table.
    """

    name: str = Field(..., min_length=1)
    mcs: List[int] = Field(..., min_length=1)
    points: List[Tuple[float, float]] = Field(..., min_length=2)
    provenance: str = Field(..., min_length=1)

    @field_validator("points")
    @classmethod
    def validate_points(cls, v):
        return check_point_set(v)


class SeCurvePoint(BaseModel):
    """One spectral-efficiency sample of a curve."""

    snr_db: float
    mcs: int
    pb_source: Literal["bound", "sim"]
    pb: float = Field(..., ge=0.0, le=1.0)
    se: float = Field(..., ge=0.0)


class BerEstimate(BaseModel):
    """
    Monte-Carlo BER estimate.

    Attributes:
        bit_errors: Information-bit errors counted
        bits_simulated: Information bits simulated (tail excluded)
        frames: Frames simulated
    """

    bit_errors: int = Field(..., ge=0)
    bits_simulated: int = Field(..., ge=0)
    frames: int = Field(..., ge=0)

    @computed_field
    @property
    def ber(self) -> float:
        if self.bits_simulated == 0:
            return 0.0
        return self.bit_errors / self.bits_simulated

    @computed_field
    @property
    def std_error(self) -> float:
        """Binomial standard error treating bit errors as independent."""
        if self.bits_simulated == 0:
            return 0.0
        p = self.ber
        return math.sqrt(p * (1.0 - p) / self.bits_simulated)


class BoundResult(BaseModel):
    """
    Analytical BER upper bound with its convergence diagnostic.

    Attributes:
        p_b_bound: Bound value (+inf when divergent)
        spectral_radius: Spectral radius of the value part of S_BB
        divergent: True when the spectral radius is >= 1
        m: Fading parameter of the evaluation
        snr_db: Average SNR of the evaluation
        constellation_id: Content id of the constellation
        trellis_id: Descriptor of the supertrellis
    """

    p_b_bound: float
    spectral_radius: float = Field(..., ge=0.0)
    divergent: bool
    m: Optional[FadingParameter] = None
    snr_db: Optional[float] = None
    constellation_id: Optional[str] = None
    trellis_id: Optional[str] = None

    @model_validator(mode="after")
    def validate_divergence(self):
        if self.divergent != (self.spectral_radius >= 1.0):
            raise ValueError("divergent flag must match spectral_radius >= 1")
        if self.divergent and not math.isinf(self.p_b_bound):
            raise ValueError("divergent bounds must carry an infinite value")
        return self


class LatencyCell(BaseModel):
    """Required SNR for one (tau, target BER) pair of a latency sweep."""

    tau: int = Field(..., ge=1)
    tau_bits: int = Field(..., ge=1, description="tau expressed in information bits")
    target_ber: float = Field(..., gt=0.0, lt=0.5)
    required_snr_db: Optional[float] = None
    attained: bool


class RunManifest(BaseModel):
    """
    Provenance of one CLI command execution.

    Attributes:
        command: Subcommand name
        config: Fully resolved configuration
        seed: Seed used by the command
        tool_version: Package version
        input_digests: sha256 of every input file read
        timestamp: When the command started
        warnings: Skipped or flagged points
    """

    command: str
    config: Dict[str, Any]
    seed: Optional[int] = None
    tool_version: str
    input_digests: Dict[str, str] = Field(default_factory=dict)
    timestamp: datetime = Field(default_factory=datetime.now)
    warnings: List[str] = Field(default_factory=list)
