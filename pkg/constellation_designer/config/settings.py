"""
Configuration settings for the constellation designer.

Uses pydantic-settings for environment variable management with validation.
Configuration can be overridden via environment variables or .env file.

Example:
    >>> from constellation_designer.config import settings
    >>> print(settings.PSO_SWARM_SIZE)
    >>> print(settings.DEFAULT_FRAME_BITS)
"""

from pathlib import Path
from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """
    Application settings loaded from environment variables.

    All settings can be overridden by setting environment variables with the same name.
    For example, set PSO_SWARM_SIZE=20 to shrink the default swarm.
    """

    # ===== Particle Swarm Configuration =====

    PSO_SWARM_SIZE: int = Field(
        default=50,
        description="Number of particles P in the swarm"
    )

    PSO_ITERATIONS: int = Field(
        default=500,
        description="Number of swarm iterations N_iter"
    )

    PSO_COGNITIVE_WEIGHT: float = Field(
        default=1.49,
        description="Cognitive (personal best) acceleration c1"
    )

    PSO_SOCIAL_WEIGHT: float = Field(
        default=1.49,
        description="Social (global best) acceleration c2"
    )

    PSO_INERTIA_START: float = Field(
        default=0.9,
        description="Inertia weight at the first iteration"
    )

    PSO_INERTIA_END: float = Field(
        default=0.4,
        description="Inertia weight at the last iteration (linear decay)"
    )

    PSO_GREEDY_ACCEPTANCE: bool = Field(
        default=True,
        description="Keep a moved particle only if it does not worsen its own best"
    )

    DEFAULT_SEED: int = Field(
        default=42,
        description="Seed used when a command is not given one"
    )

    # ===== Link Configuration =====

    DEFAULT_FRAME_BITS: int = Field(
        default=920,
        description="Information bits per frame N_b"
    )

    DEFAULT_ENERGY_BUDGET: float = Field(
        default=1.0,
        description="Average symbol energy budget E_s"
    )

    DEFAULT_FADING_POWER: float = Field(
        default=1.0,
        description="Average fading power Omega"
    )

    # ===== Monte-Carlo Configuration =====

    MIN_BIT_ERRORS: int = Field(
        default=200,
        description="Stop a BER estimate once this many bit errors are counted"
    )

    MAX_FRAMES: int = Field(
        default=20000,
        description="Hard cap on simulated frames per BER estimate"
    )

    WORKERS: int = Field(
        default=1,
        description="Worker processes for frame simulation (results do not depend on it)"
    )

    # ===== Codec Configuration =====

    SUPERTRELLIS_MAX_STEPS: int = Field(
        default=64,
        description="Largest number of base encoder steps searched for symbol alignment"
    )

    DEFAULT_TRACEBACK: int = Field(
        default=0,
        description="Viterbi back-search window in trellis steps (0 = whole frame)"
    )

    # ===== Bound Configuration =====

    SPECTRAL_RADIUS_TOL: float = Field(
        default=1e-10,
        description="Relative tolerance of the power iteration"
    )

    SPECTRAL_RADIUS_MAX_ITER: int = Field(
        default=100_000,
        description="Iteration cap of the power iteration"
    )

    ENERGY_TOLERANCE: float = Field(
        default=1e-9,
        description="Relative slack allowed on the average energy constraint"
    )

    BOUND_START_WEIGHTING: Literal["ones", "uniform"] = Field(
        default="ones",
        description="Left vector of the generating function: all ones, or 1/num_states when set to uniform"
    )

    CHERNOFF_DISTANCE_DIVISOR: float = Field(
        default=4.0,
        description="c in D = (1 + Omega d^2 / (c N0 m))^-m; 4 is the Chernoff bound for N0/2 noise per dimension"
    )

    # ===== Adaptation Configuration =====

    LUT_GRID_STEP_DB: float = Field(
        default=2.0,
        description="Spacing of the design SNR grid in dB"
    )

    LUT_SNR_MIN_DB: float = Field(
        default=12.0,
        description="First design SNR when optimize is run without --snr"
    )

    LUT_SNR_MAX_DB: float = Field(
        default=18.0,
        description="Last design SNR when optimize is run without --snr"
    )

    LATENCY_SNR_MIN_DB: float = Field(
        default=0.0,
        description="Lower end of the required-SNR search"
    )

    LATENCY_SNR_MAX_DB: float = Field(
        default=40.0,
        description="Upper end of the required-SNR search"
    )

    LATENCY_RESOLUTION_DB: float = Field(
        default=0.1,
        description="Bisection stops once the SNR bracket is this narrow"
    )

    # ===== Resource Paths =====

    RESOURCES_DIR: Path = Field(
        default=Path(__file__).parent.parent.resolve() / "resources",
        description="Directory containing bundled fixture stores"
    )

    LUT_STORE_PATH: Path = Field(
        default=Path("constellation_lut.json"),
        description="Default path of the writable constellation look-up table"
    )

    # ===== Logging Configuration =====

    LOG_LEVEL: str = Field(
        default="INFO",
        description="Logging level (DEBUG, INFO, WARNING, ERROR)"
    )

    # Pydantic settings configuration
    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        extra="ignore"
    )

    @property
    def fixture_store_path(self) -> Path:
        """Path to the bundled optimized-constellation fixture store."""
        return self.RESOURCES_DIR / "published_lut.json"


# Create singleton settings instance
settings = Settings()


def validate_settings() -> None:
    """
    Validate cross-field settings constraints.

    Call this at application startup to ensure configuration is valid.

    Raises:
        ValueError: If settings are inconsistent or resources are missing
    """
    if settings.PSO_SWARM_SIZE < 2:
        raise ValueError(f"PSO_SWARM_SIZE must be at least 2, got {settings.PSO_SWARM_SIZE}")

    if not 0 < settings.PSO_INERTIA_END <= settings.PSO_INERTIA_START:
        raise ValueError(
            f"Inertia schedule must satisfy 0 < end <= start, got "
            f"{settings.PSO_INERTIA_START} -> {settings.PSO_INERTIA_END}"
        )

    if settings.MIN_BIT_ERRORS < 1 or settings.MAX_FRAMES < 1:
        raise ValueError("MIN_BIT_ERRORS and MAX_FRAMES must be positive")

    if settings.WORKERS < 1:
        raise ValueError(f"WORKERS must be positive, got {settings.WORKERS}")

    if settings.CHERNOFF_DISTANCE_DIVISOR <= 0:
        raise ValueError(
            f"CHERNOFF_DISTANCE_DIVISOR must be positive, got {settings.CHERNOFF_DISTANCE_DIVISOR}"
        )

    if settings.DEFAULT_TRACEBACK < 0:
        raise ValueError(f"DEFAULT_TRACEBACK must be >= 0, got {settings.DEFAULT_TRACEBACK}")

    if settings.LUT_GRID_STEP_DB <= 0 or settings.LUT_SNR_MAX_DB < settings.LUT_SNR_MIN_DB:
        raise ValueError(
            f"Design grid needs a positive step and max >= min, got "
            f"{settings.LUT_SNR_MIN_DB}:{settings.LUT_SNR_MAX_DB}:{settings.LUT_GRID_STEP_DB}"
        )

    if not settings.fixture_store_path.exists():
        raise ValueError(f"Required resource file not found: {settings.fixture_store_path}")
