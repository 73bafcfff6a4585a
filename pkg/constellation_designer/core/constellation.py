"""
Labeled two-dimensional signal constellations.

A Constellation stores its points in label order: ``points[i]`` is the symbol
transmitted for the bit pattern whose MSB-first integer value is ``i``.

Example:
    >>> qam = qam_constellation(16)
    >>> qam.points[0]
    (0.31622776601683794+0.31622776601683794j)
    >>> round(qam.avg_energy, 12)
    1.0
"""

import hashlib
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from constellation_designer.core.errors import ConfigurationError


def _is_power_of_two(value: int) -> bool:
    return value >= 2 and not value & (value - 1)


class Constellation:
    """
    M labeled complex points with an average-energy figure.

    Args:
        points: Complex symbol values
        labels: Optional bit label of each point; defaults to the index order

    Raises:
        ConfigurationError: If M is not a power of two or labels are not a bijection
    """

    def __init__(self, points: Iterable[complex], labels: Optional[Sequence[int]] = None):
        values = np.asarray(list(points), dtype=np.complex128)
        count = values.size
        if not _is_power_of_two(count):
            raise ConfigurationError(f"constellation size must be a power of two >= 2, got {count}")

        if labels is not None:
            label_array = np.asarray(labels, dtype=np.int64)
            if label_array.shape != (count,) or sorted(label_array.tolist()) != list(range(count)):
                raise ConfigurationError("labels must be a bijection onto 0..M-1")
            ordered = np.empty_like(values)
            ordered[label_array] = values
            values = ordered

        values.setflags(write=False)
        self._points = values

    @property
    def points(self) -> np.ndarray:
        return self._points

    @property
    def labels(self) -> np.ndarray:
        """Label of each stored point (identity, since points are kept in label order)."""
        return np.arange(self.M)

    @property
    def M(self) -> int:
        return self._points.size

    @property
    def bits_per_symbol(self) -> int:
        return self.M.bit_length() - 1

    @property
    def avg_energy(self) -> float:
        return float(np.mean(np.abs(self._points) ** 2))

    @property
    def id(self) -> str:
        """Content hash of the points, stable across processes."""
        return hashlib.sha256(self._points.tobytes()).hexdigest()[:12]

    def squared_distances(self) -> np.ndarray:
        """M x M matrix of |s_i - s_j|^2."""
        diff = self._points[:, None] - self._points[None, :]
        return np.abs(diff) ** 2

    def to_position(self) -> np.ndarray:
        """Interleaved [re0, im0, re1, im1, ...] real vector of length 2M."""
        return np.column_stack([self._points.real, self._points.imag]).ravel()

    @classmethod
    def from_position(cls, position: np.ndarray) -> "Constellation":
        pairs = np.asarray(position, dtype=np.float64).reshape(-1, 2)
        return cls(pairs[:, 0] + 1j * pairs[:, 1])

    def to_pairs(self) -> List[Tuple[float, float]]:
        return [(float(p.real), float(p.imag)) for p in self._points]

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[float]]) -> "Constellation":
        return cls(complex(re, im) for re, im in pairs)

    def __len__(self) -> int:
        return self.M

    def __repr__(self) -> str:
        return f"Constellation(M={self.M}, avg_energy={self.avg_energy:.6f}, id={self.id})"


def _axis_levels(bits: int) -> np.ndarray:
    """
    Amplitude of each axis label for a sign + Gray-magnitude axis with `bits` bits.

    The first bit is the sign (0 = positive); the rest are a Gray code of the
    magnitude level, so neighbouring amplitudes differ in exactly one bit.
    """
    if bits == 0:
        return np.zeros(1)
    levels = np.empty(1 << bits)
    mag_bits = bits - 1
    for label in range(1 << bits):
        sign = -1.0 if label >> mag_bits else 1.0
        gray = label & ((1 << mag_bits) - 1)
        level = 0
        while gray:
            level ^= gray
            gray >>= 1
        levels[label] = sign * (2 * level + 1)
    return levels


def qam_constellation(M: int, e_s: float = 1.0) -> Constellation:
    """
    Gray-labeled square (or rectangular) QAM scaled to mean energy `e_s`.

    Label bits alternate between the in-phase and quadrature axes starting at
    the MSB, matching the published 16-QAM listing where s_0 = '0000' is
    (1 + 1j)/sqrt(10) and s_15 = '1111' is (-3 - 3j)/sqrt(10).

    Args:
        M: Modulation order (power of two)
        e_s: Average symbol energy

    Returns:
        Constellation in label order

    Raises:
        ConfigurationError: If M is not a power of two
    """
    if not _is_power_of_two(M):
        raise ConfigurationError(f"modulation order must be a power of two >= 2, got {M}")

    k = M.bit_length() - 1
    i_bits = (k + 1) // 2
    q_bits = k // 2
    i_levels = _axis_levels(i_bits)
    q_levels = _axis_levels(q_bits)

    points = np.empty(M, dtype=np.complex128)
    for label in range(M):
        i_label = q_label = 0
        for pos in range(k):
            bit = (label >> (k - 1 - pos)) & 1
            if pos % 2 == 0:
                i_label = (i_label << 1) | bit
            else:
                q_label = (q_label << 1) | bit
        points[label] = complex(i_levels[i_label], q_levels[q_label])

    energy = np.mean(np.abs(points) ** 2)
    return Constellation(points * np.sqrt(e_s / energy))
