"""Scalar support for the walk simulators.

Three arithmetic modes are used across the package:

* ``exact``: values in the ring Q[sqrt(2)][i], available whenever every coin
  angle is a rational multiple of pi with denominator dividing 4. Amplitudes
  are then sums of Gaussian-rational multiples of sqrt(2) and every equality
  test is exact.
* ``adaptive``: mpmath arithmetic with the working precision sized from the
  largest combinatorial coefficient that will appear, plus guard bits.
* ``double``: ordinary Python floats/complex, kept as an honest baseline so
  cancellation failures stay observable.

This module provides the ring, exact angles, and the precision policy.
"""

from __future__ import annotations

import math
import os
import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import mpmath

__all__ = [
    "Angle",
    "SqrtTwo",
    "SqrtTwoComplex",
    "guard_bits",
    "precision_for",
    "neumaier_sum",
]

_SQRT2 = math.sqrt(2.0)
_TWO_PI = 2.0 * math.pi

DEFAULT_GUARD_BITS = 64
GUARD_BITS_ENV = "QWALK_PRECISION_GUARD_BITS"


def guard_bits() -> int:
    """Guard bits added on top of the coefficient-size estimate.

    Overridable through the QWALK_PRECISION_GUARD_BITS environment variable.
    """
    raw = os.environ.get(GUARD_BITS_ENV)
    if raw is None:
        return DEFAULT_GUARD_BITS
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(
            f"{GUARD_BITS_ENV} must be an integer, got {raw!r}"
        ) from exc
    if value < 0:
        raise ValueError(f"{GUARD_BITS_ENV} must be non-negative, got {value}")
    return value


def precision_for(coefficient_bits: int) -> int:
    """Working precision (bits) for a sum whose largest term needs
    ``coefficient_bits`` bits."""
    return max(53, coefficient_bits + guard_bits())


_ANGLE_RE = re.compile(
    r"^\s*([+-]?\d+)?\s*(?:/\s*([+-]?\d+))?\s*\*?\s*pi\s*$", re.IGNORECASE
)


@dataclass(frozen=True)
class Angle:
    """An angle pi * pi_num / pi_den + offset radians.

    The rational-multiple-of-pi part is kept symbolically so that exact
    trigonometry is possible for the eighth-turn grid; ``offset`` holds any
    remaining float part (0.0 for exactly representable angles). The rational
    part is reduced and folded mod 2*pi on construction.
    """

    pi_num: int = 0
    pi_den: int = 1
    offset: float = 0.0

    def __post_init__(self) -> None:
        num, den = self.pi_num, self.pi_den
        if den == 0:
            raise ValueError("pi_den must be nonzero")
        if den < 0:
            num, den = -num, -den
        g = math.gcd(num, den)
        if g > 1:
            num //= g
            den //= g
        num %= 2 * den
        off = float(self.offset)
        if not math.isfinite(off):
            raise ValueError("angle offset must be finite")
        if off != 0.0:
            off = math.fmod(off, _TWO_PI)
            if off < 0.0:
                off += _TWO_PI
        object.__setattr__(self, "pi_num", num)
        object.__setattr__(self, "pi_den", den)
        object.__setattr__(self, "offset", off)

    @classmethod
    def from_pi_fraction(cls, num: int, den: int = 1) -> "Angle":
        return cls(num, den, 0.0)

    @classmethod
    def from_radians(cls, value: float) -> "Angle":
        if value == 0:
            return cls(0, 1, 0.0)
        return cls(0, 1, float(value))

    @classmethod
    def parse(cls, value) -> "Angle":
        """Accept an Angle, a number, or a string like "1/4 pi" or "-pi"."""
        if isinstance(value, Angle):
            return value
        if isinstance(value, bool):
            raise TypeError("angle cannot be a bool")
        if isinstance(value, Rational):
            # Plain rational numbers are radians, not multiples of pi.
            return cls.from_radians(float(value))
        if isinstance(value, float):
            return cls.from_radians(value)
        if isinstance(value, str):
            m = _ANGLE_RE.match(value)
            if m:
                num = int(m.group(1)) if m.group(1) is not None else 1
                den = int(m.group(2)) if m.group(2) is not None else 1
                return cls.from_pi_fraction(num, den)
            try:
                return cls.from_radians(float(value))
            except ValueError:
                raise ValueError(f"cannot parse angle {value!r}") from None
        raise TypeError(f"cannot parse angle from {type(value).__name__}")

    @property
    def is_pi_rational(self) -> bool:
        return self.offset == 0.0

    @property
    def radians(self) -> float:
        value = math.pi * self.pi_num / self.pi_den + self.offset
        value = math.fmod(value, _TWO_PI)
        if value < 0.0:
            value += _TWO_PI
        return value

    def mp_radians(self) -> mpmath.mpf:
        """Radians at the current mpmath working precision."""
        value = mpmath.pi * mpmath.mpf(self.pi_num) / self.pi_den
        if self.offset:
            value += mpmath.mpf(self.offset)
        return value

    def _eighth_turn(self) -> int | None:
        """Index n with self = n * pi/4, if that is exact."""
        if not self.is_pi_rational or 4 % self.pi_den != 0:
            return None
        return (self.pi_num * (4 // self.pi_den)) % 8

    def cos_exact(self) -> "SqrtTwo | None":
        n = self._eighth_turn()
        if n is None:
            return None
        return _COS_TABLE[n]

    def sin_exact(self) -> "SqrtTwo | None":
        n = self._eighth_turn()
        if n is None:
            return None
        return _SIN_TABLE[n]

    def exp_i_exact(self) -> "SqrtTwoComplex | None":
        c = self.cos_exact()
        if c is None:
            return None
        return SqrtTwoComplex(c, self.sin_exact())

    def __add__(self, other: "Angle") -> "Angle":
        if not isinstance(other, Angle):
            return NotImplemented
        frac = Fraction(self.pi_num, self.pi_den) + Fraction(other.pi_num, other.pi_den)
        return Angle(frac.numerator, frac.denominator, self.offset + other.offset)

    def __neg__(self) -> "Angle":
        return Angle(-self.pi_num, self.pi_den, -self.offset)

    def __repr__(self) -> str:
        if self.is_pi_rational:
            if self.pi_num == 0:
                return "Angle(0)"
            if self.pi_den == 1:
                return f"Angle({self.pi_num}*pi)"
            return f"Angle({self.pi_num}/{self.pi_den}*pi)"
        return f"Angle({self.radians!r} rad)"


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Rational):
        return Fraction(value)
    raise TypeError(f"expected a rational, got {type(value).__name__}")


@dataclass(frozen=True)
class SqrtTwo:
    """Element a + b*sqrt(2) of Q[sqrt(2)] with exact rational a, b."""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", _as_fraction(self.a))
        object.__setattr__(self, "b", _as_fraction(self.b))

    @classmethod
    def from_rational(cls, value) -> "SqrtTwo":
        return cls(_as_fraction(value), Fraction(0))

    @property
    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __add__(self, other):
        other = _coerce_ring(other)
        if other is None:
            return NotImplemented
        return SqrtTwo(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_ring(other)
        if other is None:
            return NotImplemented
        return SqrtTwo(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        other = _coerce_ring(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce_ring(other)
        if other is None:
            return NotImplemented
        return SqrtTwo(
            self.a * other.a + 2 * self.b * other.b,
            self.a * other.b + self.b * other.a,
        )

    __rmul__ = __mul__

    def __neg__(self) -> "SqrtTwo":
        return SqrtTwo(-self.a, -self.b)

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * _SQRT2

    def __repr__(self) -> str:
        return f"SqrtTwo({self.a}, {self.b})"


def _coerce_ring(value) -> SqrtTwo | None:
    if isinstance(value, SqrtTwo):
        return value
    if isinstance(value, (int, Fraction)):
        return SqrtTwo(Fraction(value), Fraction(0))
    return None


_HALF = Fraction(1, 2)
_R0 = SqrtTwo(Fraction(0), Fraction(0))
_R1 = SqrtTwo(Fraction(1), Fraction(0))
_RH = SqrtTwo(Fraction(0), _HALF)  # sqrt(2)/2

_COS_TABLE = (_R1, _RH, _R0, -_RH, -_R1, -_RH, _R0, _RH)
_SIN_TABLE = (_R0, _RH, _R1, _RH, _R0, -_RH, -_R1, -_RH)


@dataclass(frozen=True)
class SqrtTwoComplex:
    """Element of Q[sqrt(2)][i]: re + i*im with SqrtTwo components."""

    re: SqrtTwo = _R0
    im: SqrtTwo = _R0

    def __post_init__(self) -> None:
        re = self.re if isinstance(self.re, SqrtTwo) else SqrtTwo.from_rational(self.re)
        im = self.im if isinstance(self.im, SqrtTwo) else SqrtTwo.from_rational(self.im)
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)

    @classmethod
    def zero(cls) -> "SqrtTwoComplex":
        return _C0

    @classmethod
    def one(cls) -> "SqrtTwoComplex":
        return _C1

    @classmethod
    def i_unit(cls) -> "SqrtTwoComplex":
        return _CI

    @classmethod
    def from_rational(cls, re, im=0) -> "SqrtTwoComplex":
        return cls(SqrtTwo.from_rational(re), SqrtTwo.from_rational(im))

    @property
    def is_zero(self) -> bool:
        return self.re.is_zero and self.im.is_zero

    def conjugate(self) -> "SqrtTwoComplex":
        return SqrtTwoComplex(self.re, -self.im)

    def abs_sq(self) -> SqrtTwo:
        return self.re * self.re + self.im * self.im

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __add__(self, other):
        other = _coerce_ring_complex(other)
        if other is None:
            return NotImplemented
        return SqrtTwoComplex(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_ring_complex(other)
        if other is None:
            return NotImplemented
        return SqrtTwoComplex(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce_ring_complex(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce_ring_complex(other)
        if other is None:
            return NotImplemented
        return SqrtTwoComplex(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __neg__(self) -> "SqrtTwoComplex":
        return SqrtTwoComplex(-self.re, -self.im)

    def __pow__(self, exponent: int) -> "SqrtTwoComplex":
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = _C1
        base = self
        n = exponent
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __repr__(self) -> str:
        return f"SqrtTwoComplex({self.re!r}, {self.im!r})"


def _coerce_ring_complex(value) -> SqrtTwoComplex | None:
    if isinstance(value, SqrtTwoComplex):
        return value
    if isinstance(value, SqrtTwo):
        return SqrtTwoComplex(value, _R0)
    if isinstance(value, (int, Fraction)):
        return SqrtTwoComplex(SqrtTwo.from_rational(value), _R0)
    return None


_C0 = SqrtTwoComplex(_R0, _R0)
_C1 = SqrtTwoComplex(_R1, _R0)
_CI = SqrtTwoComplex(_R0, _R1)


def neumaier_sum(values) -> float:
    """Compensated (Neumaier) summation of an iterable of floats."""
    total = 0.0
    comp = 0.0
    for v in values:
        t = total + v
        if abs(total) >= abs(v):
            comp += (total - t) + v
        else:
            comp += (v - t) + total
        total = t
    return total + comp
