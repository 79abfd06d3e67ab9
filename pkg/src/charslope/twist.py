"""Non-characterizing slopes from twisting along two unknotted components.

Given a link ``C' u K'`` of two unknots with linking number ``omega``, doing
``1/n`` surgery on both components and blowing down either one exhibits the
result as ``n*omega^2 + 1/n`` surgery on two knots ``K`` and ``C``. When the
twisting circle meets a spanning disk of ``K'`` in two oppositely oriented
points, ``C`` bounds a genus-one surface, so any ``K`` of genus at least two
differs from ``C``.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .exactnum import format_rational

__all__ = [
    "TwistCertificate",
    "crossing_change_certificate",
    "family_certificate",
    "non_characterizing_certificate",
    "twist_surgery_slope",
]

COMPANION_GENUS_CAP = 1

_TUBE_ARGUMENT = (
    "Tubing the twisting disk along an arc of K' gives a genus-one surface "
    "bounded by C' and disjoint from K', so C has genus at most 1."
)
_ALTERNATING_GENUS = (
    "Seifert's algorithm on an alternating diagram gives a minimal genus "
    "surface (Crowell 1959; Murasugi 1958)."
)


def twist_surgery_slope(omega: int, n: int) -> Fraction:
    """Common surgery slope ``n*omega^2 + 1/n``; depends on ``omega`` only through its square."""
    if n == 0:
        raise ValueError("twist parameter n must be nonzero")
    return Fraction(n * n * omega * omega + 1, n)


@dataclass(frozen=True)
class TwistCertificate:
    q: int
    slope: Fraction
    knot_name: str
    knot_genus: int
    companion_genus_cap: int
    conclusion: str
    sign: int = 1
    citations: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        if self.q < 1 or self.sign not in (1, -1):
            raise ValueError("certificate needs q >= 1 and sign +-1")
        if self.slope != Fraction(self.sign, self.q):
            raise ValueError("certificate slope must be sign/q")
        if self.knot_genus < 2:
            raise ValueError("the genus argument needs a knot of genus at least 2")
        if self.companion_genus_cap != COMPANION_GENUS_CAP:
            raise ValueError("companion genus cap is 1 by the tube argument")
        if not self.knot_genus > self.companion_genus_cap:
            raise ValueError("knot genus must exceed the companion genus cap")

    def to_dict(self) -> dict[str, Any]:
        return {
            "q": self.q,
            "slope": f"{self.slope.numerator}/{self.slope.denominator}",
            "knot": self.knot_name,
            "knot_genus": self.knot_genus,
            "companion_genus_cap": self.companion_genus_cap,
            "conclusion": self.conclusion,
            "citations": list(self.citations),
        }


def non_characterizing_certificate(knot_name: str, knot_genus: int, q: int, sign: int = 1) -> TwistCertificate:
    """Certificate that ``sign/q`` is non-characterizing for a knot unknotted by ``q`` twists."""
    if q < 1:
        raise ValueError("q must be a positive integer")
    slope = twist_surgery_slope(0, sign * q)
    conclusion = (
        f"{format_rational(slope)}-surgery on {knot_name} (genus {knot_genus}) equals the same "
        f"surgery on a knot of genus <= {COMPANION_GENUS_CAP}; the knots differ, so "
        f"{format_rational(slope)} is non-characterizing for {knot_name}"
    )
    return TwistCertificate(
        q=q,
        slope=slope,
        knot_name=knot_name,
        knot_genus=knot_genus,
        companion_genus_cap=COMPANION_GENUS_CAP,
        conclusion=conclusion,
        sign=sign,
        citations=(_TUBE_ARGUMENT,),
    )


def family_certificate(q: int) -> TwistCertificate:
    """``1/q`` is non-characterizing for the genus-two two-bridge knot ``K_q``."""
    cert = non_characterizing_certificate(f"K_{q} two-bridge", 2, q)
    return dataclasses.replace(cert, citations=(_TUBE_ARGUMENT, _ALTERNATING_GENUS))


def crossing_change_certificate(knot_name: str, knot_genus: int, crossing_sign: int) -> TwistCertificate:
    """Unknotting number one: changing a crossing of sign ``+-1`` makes ``+-1`` non-characterizing."""
    if crossing_sign not in (1, -1):
        raise ValueError("crossing sign must be +1 or -1")
    return non_characterizing_certificate(knot_name, knot_genus, 1, sign=crossing_sign)
