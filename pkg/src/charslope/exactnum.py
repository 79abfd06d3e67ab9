"""Exact rationals, canonical slopes and outward-rounded rational intervals.

Rationals are :class:`fractions.Fraction`; everything here stays exact, so
every inequality downstream is decided without floating point.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Union

RationalLike = Union[int, str, Fraction]

__all__ = [
    "InvalidSlopeError",
    "IntervalError",
    "PI_LOWER",
    "PI_UPPER",
    "RationalInterval",
    "Slope",
    "format_decimal",
    "format_rational",
    "parse_rational",
    "pi_enclosure",
    "rational_normalize",
]


class InvalidSlopeError(ValueError):
    pass


class IntervalError(ValueError):
    pass


_RATIONAL_RE = re.compile(r"^\s*[+-]?(\d+(/\d+)?|\d*\.\d+|\d+\.\d*)\s*$")


def parse_rational(value: RationalLike) -> Fraction:
    """Parse ``"p/q"``, an integer string or a decimal string exactly.

    Decimals are read as fractions over powers of ten, so ``"2.83"`` is
    exactly ``283/100``. Floats are rejected on purpose.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        if not _RATIONAL_RE.match(value):
            raise ValueError(f"not an exact rational: {value!r}")
        result = Fraction(value.strip())
        return result
    raise TypeError(f"cannot parse {type(value).__name__} as an exact rational")


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_decimal(value: Fraction) -> str:
    """Terminating decimal when the denominator is ``2^a 5^b``, else ``p/q``."""
    value = Fraction(value)
    d, digits = value.denominator, 0
    for prime in (2, 5):
        while d % prime == 0:
            d //= prime
    if d != 1:
        return format_rational(value)
    while (value * 10**digits).denominator != 1:
        digits += 1
    if digits == 0:
        return str(value.numerator)
    scaled = abs(value.numerator * 10**digits // value.denominator)
    sign = "-" if value < 0 else ""
    return f"{sign}{scaled // 10**digits}.{scaled % 10**digits:0{digits}d}"


@dataclass(frozen=True, order=False)
class Slope:
    """A slope ``p/q`` with ``gcd(|p|, q) = 1`` and ``q >= 1``.

    The meridian ``1/0`` is the one permitted value with ``q = 0``.
    """

    p: int
    q: int

    def __post_init__(self) -> None:
        if self.q == 0:
            if self.p != 1:
                raise InvalidSlopeError("the only slope with q = 0 is the meridian 1/0")
            return
        if self.q < 0:
            raise InvalidSlopeError("slope denominator must be positive")
        if gcd(self.p, self.q) != 1:
            raise InvalidSlopeError(f"{self.p}/{self.q} is not in lowest terms")

    @classmethod
    def meridian(cls) -> "Slope":
        return cls(1, 0)

    @classmethod
    def from_fraction(cls, value: Fraction) -> "Slope":
        return cls(value.numerator, value.denominator)

    @classmethod
    def parse(cls, text: str) -> "Slope":
        text = text.strip()
        if "/" in text:
            num, _, den = text.partition("/")
            try:
                return rational_normalize(int(num), int(den))
            except ValueError as exc:
                raise InvalidSlopeError(f"bad slope {text!r}: {exc}") from None
        try:
            return cls.from_fraction(parse_rational(text))
        except ValueError:
            raise InvalidSlopeError(f"bad slope {text!r}") from None

    @property
    def is_meridian(self) -> bool:
        return self.q == 0

    def as_fraction(self) -> Fraction:
        if self.is_meridian:
            raise InvalidSlopeError("the meridian 1/0 is not a rational number")
        return Fraction(self.p, self.q)

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"


def rational_normalize(p: int, q: int) -> Slope:
    """Reduce ``p/q`` to lowest terms with a positive denominator."""
    if q == 0:
        if p in (1, -1):
            return Slope.meridian()
        raise InvalidSlopeError(f"{p}/0 is not a slope")
    g = gcd(p, q)
    if q < 0:
        g = -g
    return Slope(p // g, q // g)


@dataclass(frozen=True)
class RationalInterval:
    """Closed interval ``[lower, upper]`` with exact rational endpoints.

    Arithmetic is exact on the endpoints, which is trivially outward rounded.
    """

    lower: Fraction
    upper: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "lower", parse_rational(self.lower))
        object.__setattr__(self, "upper", parse_rational(self.upper))
        if self.lower > self.upper:
            raise IntervalError(f"empty interval: lower {self.lower} > upper {self.upper}")

    @classmethod
    def point(cls, value: RationalLike) -> "RationalInterval":
        v = parse_rational(value)
        return cls(v, v)

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    def __contains__(self, value: RationalLike) -> bool:
        v = parse_rational(value)
        return self.lower <= v <= self.upper

    def contains_zero(self) -> bool:
        return self.lower <= 0 <= self.upper

    def __neg__(self) -> "RationalInterval":
        return RationalInterval(-self.upper, -self.lower)

    def __add__(self, other: "RationalInterval | RationalLike") -> "RationalInterval":
        o = _as_interval(other)
        return RationalInterval(self.lower + o.lower, self.upper + o.upper)

    __radd__ = __add__

    def __sub__(self, other: "RationalInterval | RationalLike") -> "RationalInterval":
        o = _as_interval(other)
        return RationalInterval(self.lower - o.upper, self.upper - o.lower)

    def __rsub__(self, other: RationalLike) -> "RationalInterval":
        return _as_interval(other) - self

    def __mul__(self, other: "RationalInterval | RationalLike") -> "RationalInterval":
        o = _as_interval(other)
        products = [a * b for a in (self.lower, self.upper) for b in (o.lower, o.upper)]
        return RationalInterval(min(products), max(products))

    __rmul__ = __mul__

    def reciprocal(self) -> "RationalInterval":
        if self.contains_zero():
            raise IntervalError("division by an interval containing zero")
        return RationalInterval(1 / self.upper, 1 / self.lower)

    def __truediv__(self, other: "RationalInterval | RationalLike") -> "RationalInterval":
        return self * _as_interval(other).reciprocal()

    def __rtruediv__(self, other: RationalLike) -> "RationalInterval":
        return _as_interval(other) * self.reciprocal()

    def __str__(self) -> str:
        return f"[{format_decimal(self.lower)}, {format_decimal(self.upper)}]"


def _as_interval(value: "RationalInterval | RationalLike") -> RationalInterval:
    if isinstance(value, RationalInterval):
        return value
    return RationalInterval.point(value)


# 40 decimals of pi, truncated for the lower endpoint and bumped in the last
# place for the upper one. Width 1e-40.
_PI_DIGITS = "3.1415926535897932384626433832795028841971"
PI_LOWER = Fraction(_PI_DIGITS)
PI_UPPER = PI_LOWER + Fraction(1, 10**40)


def pi_enclosure() -> RationalInterval:
    return RationalInterval(PI_LOWER, PI_UPPER)
