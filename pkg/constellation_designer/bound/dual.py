"""
Dual numbers for exact first derivatives in the generating-function dummy variable.

A Dual (a, b) represents a + b*eps with eps^2 = 0; evaluating a polynomial
in I at the Dual (1, 1) yields its value and its derivative at I = 1.

Example:
    >>> Dual.power_of_dummy(3)
    Dual(value=1.0, deriv=3.0)
    >>> Dual(2.0, 1.0) * Dual(3.0, 4.0)
    Dual(value=6.0, deriv=11.0)
"""

from dataclasses import dataclass
from typing import Union

Number = Union[int, float]


@dataclass(frozen=True)
class Dual:
    """Value and derivative with respect to the dummy variable at I = 1."""

    value: float
    deriv: float = 0.0

    @classmethod
    def power_of_dummy(cls, weight: int) -> "Dual":
        """I^w at I = 1: value 1, derivative w."""
        return cls(1.0, float(weight))

    @staticmethod
    def _lift(other: Union["Dual", Number]) -> "Dual":
        return other if isinstance(other, Dual) else Dual(float(other), 0.0)

    def __add__(self, other):
        o = self._lift(other)
        return Dual(self.value + o.value, self.deriv + o.deriv)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return Dual(self.value - o.value, self.deriv - o.deriv)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return Dual(self.value * o.value, self.value * o.deriv + self.deriv * o.value)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        return Dual(
            self.value / o.value,
            (self.deriv * o.value - self.value * o.deriv) / (o.value * o.value),
        )

    def __neg__(self):
        return Dual(-self.value, -self.deriv)
