"""
Average-energy constraint handling for candidate constellations.
"""

from typing import Iterable, Union

import numpy as np

from constellation_designer.config import settings
from constellation_designer.core.errors import ConfigurationError


def mean_energy(points: Union[np.ndarray, Iterable[complex]]) -> float:
    values = np.asarray(points, dtype=np.complex128)
    return float(np.mean(values.real ** 2 + values.imag ** 2))


def project_energy(
    points: Union[np.ndarray, Iterable[complex]],
    e_s: float
) -> np.ndarray:
    """
    Scale a point set onto the energy budget when it exceeds it.

    Feasible sets (mean |s|^2 <= e_s) are returned unchanged; otherwise every
    point is multiplied by sqrt(e_s / mean |s|^2), which keeps ratios and
    angles and puts the mean energy exactly on the budget.

    Args:
        points: Complex points
        e_s: Energy budget

    Returns:
        Complex array with mean energy <= e_s

    Raises:
        ConfigurationError: If e_s <= 0 or no points are given

    Example:
        >>> project_energy([2, -2], 1.0).tolist()
        [(1+0j), (-1+0j)]
    """
    if e_s <= 0:
        raise ConfigurationError(f"energy budget must be positive, got {e_s}")
    values = np.array(points, dtype=np.complex128)
    if values.size == 0:
        raise ConfigurationError("cannot project an empty point set")

    energy = mean_energy(values)
    if energy <= e_s:
        return values
    return values * np.sqrt(e_s / energy)


def satisfies_budget(points: Union[np.ndarray, Iterable[complex]], e_s: float, tolerance: float = None) -> bool:
    """True when mean |s|^2 <= e_s * (1 + tolerance)."""
    tolerance = settings.ENERGY_TOLERANCE if tolerance is None else tolerance
    return mean_energy(points) <= e_s * (1.0 + tolerance)
