"""Exact decisions for the volume-length and slope-length inequalities.

The only irrational input is ``pi``, replaced by the upper endpoint of a
40-digit rational enclosure; every other step is Fraction arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor

from .exactnum import PI_UPPER, RationalLike, Slope, parse_rational

__all__ = [
    "LengthBoundConstants",
    "PAPER_CONSTANTS",
    "RIGOROUS_CONSTANTS",
    "VacuousBoundError",
    "fkp_bound_holds",
    "fkp_minimal_bound",
    "max_p_from_length",
    "max_q_from_length",
    "min_length_from_slope",
    "slope_distance",
]

TWO_PI_UPPER = 2 * PI_UPPER


class VacuousBoundError(ValueError):
    """The length cap does not exceed ``2*pi``, so the bound says nothing."""


@dataclass(frozen=True)
class LengthBoundConstants:
    """Constants converting a cusp length bound into bounds on ``p`` and ``q``.

    ``area_constant`` is the guaranteed cusp area, ``meridian_length_cap`` the
    6-theorem bound on the meridian, and ``q_coefficient`` the multiplier in
    ``|q| <= coeff * length``. The rigorous coefficient is exactly
    ``meridian_length_cap / area_constant = 120/67``; the rounded 1.79 is kept
    as a separate mode.
    """

    area_constant: Fraction = Fraction(335, 100)
    meridian_length_cap: Fraction = Fraction(6)
    q_coefficient: Fraction = Fraction(120, 67)
    label: str = "rigorous"

    def __post_init__(self) -> None:
        for name in ("area_constant", "meridian_length_cap", "q_coefficient"):
            value = parse_rational(getattr(self, name))
            if value <= 0:
                raise ValueError(f"{name} must be positive")
            object.__setattr__(self, name, value)

    @property
    def is_rigorous(self) -> bool:
        return self.q_coefficient == self.meridian_length_cap / self.area_constant


RIGOROUS_CONSTANTS = LengthBoundConstants()
PAPER_CONSTANTS = LengthBoundConstants(q_coefficient=Fraction(179, 100), label="paper")


def slope_distance(a: Slope, b: Slope) -> int:
    """Minimal geometric intersection number ``|p_a q_b - q_a p_b|``."""
    return abs(a.p * b.q - a.q * b.p)


def fkp_bound_holds(
    v_small_upper: RationalLike, v_big_lower: RationalLike, cap: RationalLike
) -> bool:
    """Decide ``2*pi / sqrt(1 - (v'/v)^(2/3)) < cap`` for all ``v' <= v_small_upper``, ``v >= v_big_lower``.

    Equivalent, for ``cap > 2*pi``, to ``(v'/v)^2 < (1 - (2*pi/cap)^2)^3``. The
    left side is largest at the given endpoints and the right side smallest
    at the upper endpoint of the pi enclosure, so the check is sound.
    """
    vs, vb, cap = parse_rational(v_small_upper), parse_rational(v_big_lower), parse_rational(cap)
    if not 0 < vs < vb:
        raise ValueError("need 0 < v_small_upper < v_big_lower")
    if cap <= TWO_PI_UPPER:
        raise VacuousBoundError(f"cap {cap} does not exceed 2*pi")
    ratio = vs / vb
    slack = 1 - (TWO_PI_UPPER / cap) ** 2
    return ratio**2 < slack**3


def fkp_minimal_bound(
    v_small_upper: RationalLike, v_big_lower: RationalLike, tolerance: RationalLike
) -> Fraction:
    """Smallest certified cap, to within ``tolerance``, by bracketing and bisection.

    The returned ``B`` satisfies ``fkp_bound_holds(..., B)`` while every cap at
    or below ``B - tolerance`` fails (or is vacuous).
    """
    tol = parse_rational(tolerance)
    if tol <= 0:
        raise ValueError("tolerance must be positive")

    def holds(cap: Fraction) -> bool:
        return fkp_bound_holds(v_small_upper, v_big_lower, cap)

    lo = TWO_PI_UPPER
    step = tol
    hi = lo + step
    while not holds(hi):
        lo = hi
        step *= 2
        hi = lo + step
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if holds(mid):
            hi = mid
        else:
            lo = mid
    return hi


def max_q_from_length(
    cap: RationalLike, constants: LengthBoundConstants = RIGOROUS_CONSTANTS
) -> int:
    cap = parse_rational(cap)
    if cap < 0:
        raise ValueError("length cap must be nonnegative")
    return floor(constants.q_coefficient * cap)


def max_p_from_length(
    cap: RationalLike, g: int, constants: LengthBoundConstants = RIGOROUS_CONSTANTS
) -> int:
    cap = parse_rational(cap)
    if cap < 0:
        raise ValueError("length cap must be nonnegative")
    if g < 1:
        raise ValueError("genus must be at least 1")
    return floor(constants.q_coefficient * cap * (2 * g - 1))


def min_length_from_slope(
    slope: Slope, g: int, constants: LengthBoundConstants = RIGOROUS_CONSTANTS
) -> Fraction:
    """Certified lower bound on the cusp length of ``slope`` on a genus-``g`` knot."""
    if g < 1:
        raise ValueError("genus must be at least 1")
    c = constants.q_coefficient
    return max(Fraction(abs(slope.q)) / c, Fraction(abs(slope.p)) / (c * (2 * g - 1)))
