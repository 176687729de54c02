"""Exact bit quantities.

Every cost in the model is the base-2 logarithm of a positive rational
(a ratio of lengths, areas, piece counts or direction counts), so a bit
value is stored as that rational. Sums multiply ratios, differences divide
them, and ``2**-bits`` is recovered without rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational


@dataclass(frozen=True, order=False)
class Bits:
    """``log2(ratio)`` bits, kept exact."""

    ratio: Fraction

    def __post_init__(self):
        r = Fraction(self.ratio)
        if r <= 0:
            raise ValueError(f"bit ratio must be positive, got {r}")
        object.__setattr__(self, "ratio", r)

    @classmethod
    def log2(cls, value) -> Bits:
        """Bits for ``log2(value)`` with ``value`` a positive rational."""
        if isinstance(value, float):
            value = Fraction(value)
        elif not isinstance(value, (Rational, Fraction)):
            raise TypeError(f"expected a rational, got {type(value).__name__}")
        return cls(Fraction(value))

    @classmethod
    def integer(cls, n: int) -> Bits:
        return cls(Fraction(2) ** n)

    @classmethod
    def zero(cls) -> Bits:
        return cls(Fraction(1))

    def __float__(self) -> float:
        # math.log2 is exact-ish on big ints; subtracting avoids overflow on huge ratios
        return math.log2(self.ratio.numerator) - math.log2(self.ratio.denominator)

    def exp2neg(self) -> Fraction:
        """``2**-self`` as an exact fraction."""
        return 1 / self.ratio

    def __add__(self, other: Bits) -> Bits:
        if not isinstance(other, Bits):
            return NotImplemented
        return Bits(self.ratio * other.ratio)

    def __sub__(self, other: Bits) -> Bits:
        if not isinstance(other, Bits):
            return NotImplemented
        return Bits(self.ratio / other.ratio)

    def __neg__(self) -> Bits:
        return Bits(1 / self.ratio)

    def __lt__(self, other: Bits) -> bool:
        return self.ratio < other.ratio

    def __le__(self, other: Bits) -> bool:
        return self.ratio <= other.ratio

    def __gt__(self, other: Bits) -> bool:
        return self.ratio > other.ratio

    def __ge__(self, other: Bits) -> bool:
        return self.ratio >= other.ratio

    def is_integral(self) -> bool:
        r = self.ratio
        return (r.denominator == 1 and r.numerator & (r.numerator - 1) == 0) or (
            r.numerator == 1 and r.denominator & (r.denominator - 1) == 0
        )

    def __repr__(self) -> str:
        return f"Bits({float(self):.6f}, ratio={self.ratio})"

    def __format__(self, spec: str) -> str:
        return format(float(self), spec)
