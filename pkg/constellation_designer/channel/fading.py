"""
Nakagami-m fast fading and complex Gaussian noise.

The squared gain h^2 is Gamma distributed with shape m and scale Omega/m, so
E[h^2] = Omega and h is Nakagami-m. Gains are real and nonnegative: with
perfect CSI and coherent detection the fading phase carries no information.
"""

from typing import Optional, Union

import numpy as np

from constellation_designer.bound.chernoff import validate_fading_parameter
from constellation_designer.core.models import AWGN, ChannelContext


def nakagami_gain(
    ctx: ChannelContext,
    rng: np.random.Generator,
    size: Optional[int] = None
) -> Union[float, np.ndarray]:
    """
    Draw independent fading amplitudes, one per symbol.

    Args:
        ctx: Channel context (m and Omega are used)
        rng: Random generator
        size: Number of draws; a scalar is returned when omitted

    Returns:
        Nonnegative gains; sqrt(Omega) everywhere for AWGN

    Raises:
        ConfigurationError: For a non-integer finite m

    Example:
        >>> ctx = ChannelContext(m="awgn", n0=1.0)
        >>> float(nakagami_gain(ctx, np.random.default_rng(0)))
        1.0
    """
    m = validate_fading_parameter(ctx.m)
    if m == AWGN:
        gains = np.full(1 if size is None else size, np.sqrt(ctx.omega))
    else:
        gains = np.sqrt(rng.gamma(shape=m, scale=ctx.omega / m, size=1 if size is None else size))
    return float(gains[0]) if size is None else gains


def complex_noise(n0: float, rng: np.random.Generator, size: int) -> np.ndarray:
    """Circular complex Gaussian samples with variance n0/2 per dimension."""
    sigma = np.sqrt(n0 / 2.0)
    return sigma * (rng.standard_normal(size) + 1j * rng.standard_normal(size))
