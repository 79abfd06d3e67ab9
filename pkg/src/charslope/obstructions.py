"""Obstructions to two knots sharing a surgery.

Casson-Walker (plain and for cables), the nu+ mirror test built on the Ni-Wu
d-invariant formula, satellite slope and genus bookkeeping, and the genus
rigidity thresholds used to pin ``g(K') = g(K)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import NamedTuple, Sequence

from .exactnum import Slope, rational_normalize
from .laurent import LaurentPoly, check_alexander, torus_alexander

__all__ = [
    "CableSearch",
    "CableSolution",
    "Rigidity",
    "VSequence",
    "cable_alexander",
    "cable_solutions",
    "cw_correction_term",
    "cw_excludes",
    "d_gap_sum",
    "genus_rigidity",
    "nu_plus_excludes_mirror",
    "satellite_slope_transform",
    "schubert_genus",
]


def cw_correction_term(slope: Slope, delta2: Fraction) -> Fraction:
    """Knot-dependent term ``q / (2p) * Delta''(1)`` of the Casson-Walker surgery formula."""
    if slope.is_meridian or slope.p == 0:
        raise ValueError("surgery formula needs a rational homology sphere: p must be nonzero")
    return Fraction(slope.q, 2 * slope.p) * Fraction(delta2)


def cw_excludes(delta2_a: Fraction, delta2_b: Fraction) -> bool:
    return Fraction(delta2_a) != Fraction(delta2_b)


@dataclass(frozen=True)
class CableSolution:
    r: int
    s: int

    def __post_init__(self) -> None:
        if self.r < 1 or self.s < 2 or gcd(self.r, self.s) != 1:
            raise ValueError(f"invalid cable parameters ({self.r}, {self.s})")


class CableSearch(NamedTuple):
    solutions: list[CableSolution]
    complete: bool


def cable_solutions(target: Fraction, companion: Fraction, s_max: int) -> CableSearch:
    """All coprime ``(r, s)``, ``r >= 1``, ``2 <= s <= s_max`` with

        target = (r^2 - 1)(s^2 - 1)/12 + s^2 * companion.

    For each ``s`` the equation is solved for ``r^2`` and only exact integer
    squares are kept. ``complete`` is true when no solution can exist past
    ``s_max``, which needs a positive companion and ``s_max^2 > target/companion``.
    """
    if s_max < 2:
        raise ValueError("s_max must be at least 2")
    target, companion = Fraction(target), Fraction(companion)
    found: list[CableSolution] = []
    for s in range(2, s_max + 1):
        r_sq = 1 + 12 * (target - companion * s * s) / (s * s - 1)
        if r_sq < 1 or r_sq.denominator != 1:
            continue
        r = isqrt(r_sq.numerator)
        if r * r == r_sq.numerator and gcd(r, s) == 1:
            found.append(CableSolution(r, s))
    complete = companion > 0 and s_max * s_max > target / companion
    return CableSearch(found, complete)


def cable_alexander(companion: LaurentPoly, r: int, s: int) -> LaurentPoly:
    """Alexander polynomial of the ``(r, s)`` cable: ``Delta_C(t^s) * Delta_T(r,s)(t)``."""
    if s < 2:
        raise ValueError("cable winding number must be at least 2")
    check_alexander(companion)
    return companion.substitute_power(s) * torus_alexander(r, s)


@dataclass(frozen=True)
class VSequence:
    """Non-increasing, nonnegative ``V_0, V_1, ...``; zero past the stored values."""

    values: tuple[int, ...]

    def __post_init__(self) -> None:
        vals = tuple(self.values)
        object.__setattr__(self, "values", vals)
        if any(v < 0 for v in vals):
            raise ValueError("V-sequence entries are nonnegative")
        if any(a < b for a, b in zip(vals, vals[1:])):
            raise ValueError("V-sequence must be non-increasing")

    def __getitem__(self, i: int) -> int:
        if i < 0:
            raise IndexError("V-sequence index must be nonnegative")
        return self.values[i] if i < len(self.values) else 0

    @property
    def nu_plus(self) -> int:
        """Smallest index with ``V_i = 0``."""
        for i, v in enumerate(self.values):
            if v == 0:
                return i
        return len(self.values)


def d_gap_sum(v: VSequence | Sequence[int], p: int, q: int) -> int:
    """``sum_{i<p} max(V[floor(i/q)], V[ceil((p-i)/q)])``.

    Half the total d-invariant gap between ``p/q`` surgery on ``mK`` and on ``K``.
    """
    if p <= 0 or q <= 0:
        raise ValueError("p and q must be positive")
    if not isinstance(v, VSequence):
        v = VSequence(tuple(v))
    return sum(max(v[i // q], v[-((i - p) // q)]) for i in range(p))


def nu_plus_excludes_mirror(nu_plus: int, nu_plus_mirror: int) -> bool:
    if nu_plus < 0 or nu_plus_mirror < 0:
        raise ValueError("nu+ is nonnegative")
    return nu_plus > 0 and nu_plus_mirror == 0


def satellite_slope_transform(slope: Slope, w: int) -> Slope:
    """Companion slope ``p / (q w^2)`` for a satellite with winding number ``w``."""
    if w < 2:
        raise ValueError("winding number must be at least 2")
    return rational_normalize(slope.p, slope.q * w * w)


def schubert_genus(pattern_genus: int, w: int, companion_genus: int) -> int:
    if min(pattern_genus, w, companion_genus) < 0:
        raise ValueError("genera and winding number are nonnegative")
    return pattern_genus + w * companion_genus


class Rigidity(enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    NONE = "none"


# Negative-side threshold p <= min{2q - 12 - 4q^2, -10q}, for q >= 2.
NEG_QUADRATIC = (4, -2, 12)
NEG_LINEAR = 10


def genus_rigidity(slope: Slope, g: int) -> Rigidity:
    """Which genus-rigidity theorem, if any, forces ``g(K') = g(K)`` at ``slope``.

    Positive: ``p/q >= 4g + 4``. Negative: ``q >= 2`` and
    ``p <= min{2q - 12 - 4q^2, -10q}``. The negative constants are the ones
    established for genus 5 and are used as given.
    """
    if g < 1:
        raise ValueError("genus must be at least 1")
    if slope.is_meridian:
        return Rigidity.NONE
    p, q = slope.p, slope.q
    if p >= (4 * g + 4) * q:
        return Rigidity.POSITIVE
    a, b, c = NEG_QUADRATIC
    if q >= 2 and p <= min(-(a * q * q + b * q + c), -NEG_LINEAR * q):
        return Rigidity.NEGATIVE
    return Rigidity.NONE
