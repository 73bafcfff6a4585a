"""
Pairwise Chernoff factors over integer Nakagami-m fading.

D = (1 + Omega |s - s_hat|^2 / (c N0 m))^(-m), and exp(-Omega |s - s_hat|^2 / (c N0))
in the AWGN limit m -> infinity. With noise variance N0/2 per dimension the
Chernoff bound on a pairwise error has c = 4, the default. Designs made under
another scaling of the distance (the bundled published store uses c = 1) are
evaluated by passing their c explicitly.
"""

from typing import Any, Union

import numpy as np

from constellation_designer.core.errors import ConfigurationError
from constellation_designer.core.models import AWGN, ChannelContext, is_awgn

CHERNOFF_DIVISOR = 4.0


def validate_fading_parameter(m: Any) -> Union[int, str]:
    """
    Normalize a fading parameter to a positive int or the AWGN sentinel.

    Raises:
        ConfigurationError: For non-integer finite or non-positive values
    """
    if is_awgn(m):
        return AWGN
    if isinstance(m, bool) or not isinstance(m, (int, float, np.integer, np.floating)):
        raise ConfigurationError(f"fading parameter must be a positive integer or 'awgn', got {m!r}")
    if not float(m).is_integer() or m < 1:
        raise ConfigurationError(
            f"only integer fading parameters m >= 1 are supported, got {m!r}"
        )
    return int(m)


def chernoff_factor(
    squared_distance: Union[float, np.ndarray],
    m: Any,
    omega: float,
    n0: float,
    divisor: float = CHERNOFF_DIVISOR
) -> Union[float, np.ndarray]:
    """Chernoff factor for one or many squared distances."""
    if omega <= 0 or n0 <= 0:
        raise ConfigurationError(f"omega and n0 must be positive, got omega={omega}, n0={n0}")
    if divisor <= 0:
        raise ConfigurationError(f"distance divisor must be positive, got {divisor}")
    m = validate_fading_parameter(m)
    x = np.asarray(squared_distance, dtype=np.float64) * omega / (divisor * n0)
    if m == AWGN:
        result = np.exp(-x)
    else:
        result = (1.0 + x / m) ** (-m)
    return float(result) if result.ndim == 0 else result


def chernoff_pair(
    s: complex,
    s_hat: complex,
    m: Any,
    omega: float,
    n0: float,
    divisor: float = CHERNOFF_DIVISOR
) -> float:
    """
    Chernoff bound on deciding `s_hat` when `s` was sent.

    Args:
        s: Transmitted point
        s_hat: Competing point
        m: Integer fading parameter or "awgn"
        omega: Average fading power
        n0: Noise variance
        divisor: Scale c of the squared distance (4 for N0/2 per dimension)

    Returns:
        Factor in (0, 1], equal to 1 only when s == s_hat

    Raises:
        ConfigurationError: For nonpositive omega/n0/divisor or a non-integer finite m

    Example:
        >>> chernoff_pair(1, -1, 1, 1.0, 1.0)
        0.5
        >>> round(chernoff_pair(1, -1, "awgn", 1.0, 1.0), 6)
        0.367879
        >>> chernoff_pair(1, -1, 1, 1.0, 1.0, divisor=1.0)
        0.2
    """
    return chernoff_factor(abs(complex(s) - complex(s_hat)) ** 2, m, omega, n0, divisor)


def chernoff_matrix(points: np.ndarray, ctx: ChannelContext) -> np.ndarray:
    """M x M matrix of Chernoff factors between all constellation points."""
    diff = points[:, None] - points[None, :]
    return chernoff_factor(np.abs(diff) ** 2, ctx.m, ctx.omega, ctx.n0, ctx.distance_divisor)
