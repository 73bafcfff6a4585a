"""
Threshold search on a monotone predicate.
"""

from typing import Callable, Optional


def bisect_threshold(
    predicate: Callable[[float], bool],
    low: float,
    high: float,
    resolution: float
) -> Optional[float]:
    """
    Smallest x in [low, high] where a non-decreasing predicate holds, to `resolution`.

    Returns:
        `low` if the predicate already holds there, the upper end of the
        final bracket otherwise, or None if it does not hold at `high`

    Example:
        >>> bisect_threshold(lambda x: x >= 3.0, 0.0, 8.0, 0.5)
        3.0
    """
    if not predicate(high):
        return None
    if predicate(low):
        return low
    while high - low > resolution:
        mid = 0.5 * (low + high)
        if predicate(mid):
            high = mid
        else:
            low = mid
    return high
