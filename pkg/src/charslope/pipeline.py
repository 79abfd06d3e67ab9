"""Assemble census data, obstructions and length bounds into a slope region.

The flow mirrors the argument for 12n242:

1. every low-volume alternative to the target is ruled out in each of three
   settings (hyperbolic K', cable companion when q >= 2, L-space companion);
2. the volume-length bound against the census threshold gives a length cap,
   which becomes bounds on q and p;
3. genus rigidity on each side turns those into the three conditions of the
   region, and ``check_slope`` tests a slope against them.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil
from typing import Any, Optional

from .bounds import (
    RIGOROUS_CONSTANTS,
    TWO_PI_UPPER,
    LengthBoundConstants,
    fkp_bound_holds,
    fkp_minimal_bound,
    max_p_from_length,
    max_q_from_length,
    min_length_from_slope,
)
from .census import Census, KnotRecord, mirror_name
from .exactnum import Slope, format_decimal, format_rational, parse_rational
from .obstructions import (
    NEG_LINEAR,
    NEG_QUADRATIC,
    Rigidity,
    cable_solutions,
    cw_excludes,
    genus_rigidity,
    nu_plus_excludes_mirror,
)

__all__ = [
    "Context",
    "Exclusion",
    "ExclusionIncomplete",
    "ExclusionReport",
    "Mechanism",
    "PipelineError",
    "PreconditionError",
    "Region",
    "TraceStep",
    "Verdict",
    "certified_cap",
    "characterizing_region",
    "check_slope",
    "exclusion_report",
    "length_hypothesis_cap",
    "replay_exclusion",
]

DEFAULT_TOLERANCE = Fraction(1, 1000)
DEFAULT_S_MAX = 100


class PipelineError(Exception):
    """A precondition of the region argument does not hold."""


class ExclusionIncomplete(PipelineError):
    def __init__(self, context: "Context", alternative: str, reason: str):
        super().__init__(f"{context.value}: cannot exclude {alternative} ({reason})")
        self.context = context
        self.alternative = alternative


class PreconditionError(PipelineError):
    def __init__(self, claim: str, message: str):
        super().__init__(f"{claim}: {message}")
        self.claim = claim


class Mechanism(enum.Enum):
    VOLUME_LENGTH = "VolumeLength"
    CASSON_WALKER = "CassonWalker"
    CABLE_CASSON_WALKER = "CableCassonWalker"
    NU_PLUS_MIRROR = "NuPlusMirror"
    NOT_LSPACE_KNOT = "NotLSpaceKnot"
    IS_TARGET_ITSELF = "IsTargetItself"


class Context(enum.Enum):
    HYPERBOLIC_ALTERNATIVE = "HyperbolicAlternative"
    CABLE_COMPANION_QGE2 = "CableCompanionQge2"
    LSPACE_COMPANION = "LSpaceCompanion"


@dataclass(frozen=True)
class Exclusion:
    alternative: str
    mechanism: Mechanism
    detail: str
    evidence: dict[str, Any] = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class ExclusionReport:
    target: str
    context: Context
    entries: tuple[Exclusion, ...]

    def mechanisms(self) -> dict[str, Mechanism]:
        return {e.alternative: e.mechanism for e in self.entries}


def certified_cap(v_small_upper: Fraction, v_big_lower: Fraction, tolerance: Fraction) -> Fraction:
    """Bisected volume-length cap, rounded up onto the ``tolerance`` grid.

    Rounding up keeps the cap certified (the bound is monotone in the cap)
    and gives short decimals such as 14.164 and 27.34.
    """
    tolerance = parse_rational(tolerance)
    raw = fkp_minimal_bound(v_small_upper, v_big_lower, tolerance)
    return ceil(raw / tolerance) * tolerance


def _smaller_volume_alternatives(target: KnotRecord, census: Census) -> list[KnotRecord]:
    if target.volume is None:
        return []
    return [
        r
        for r in census.records
        if r.name != target.name and r.volume is not None and r.volume.upper < target.volume.lower
    ]


def length_hypothesis_cap(
    target: KnotRecord, census: Census, tolerance: Fraction = DEFAULT_TOLERANCE
) -> Fraction:
    """Length ``L0`` such that ``l_K(p/q) >= L0`` rules out every smaller-volume census knot.

    Never below ``2*pi`` (rounded up), which already makes the surgery hyperbolic.
    """
    tolerance = parse_rational(tolerance)
    cap = ceil(TWO_PI_UPPER / tolerance) * tolerance
    for alt in _smaller_volume_alternatives(target, census):
        cap = max(cap, certified_cap(alt.volume.upper, target.volume.lower, tolerance))
    return cap


def _volume_length(target: KnotRecord, alt: KnotRecord, hyp_cap: Fraction) -> Optional[Exclusion]:
    if target.volume is None or alt.volume is None or alt.volume.upper >= target.volume.lower:
        return None
    vs, vb = alt.volume.upper, target.volume.lower
    if not fkp_bound_holds(vs, vb, hyp_cap):
        return None
    detail = (
        f"2pi/sqrt(1-({format_decimal(vs)}/{format_decimal(vb)})^(2/3)) < "
        f"{format_decimal(hyp_cap)} <= length"
    )
    return Exclusion(
        alt.name,
        Mechanism.VOLUME_LENGTH,
        detail,
        {"v_small_upper": vs, "v_big_lower": vb, "cap": hyp_cap},
    )


def _casson_walker(target: KnotRecord, alt: KnotRecord) -> Optional[Exclusion]:
    if not cw_excludes(target.delta2, alt.delta2):
        return None
    detail = f"Delta''(1): {format_rational(alt.delta2)} != {format_rational(target.delta2)}"
    return Exclusion(alt.name, Mechanism.CASSON_WALKER, detail)


def _nu_plus_mirror(target: KnotRecord, alt: KnotRecord) -> Optional[Exclusion]:
    if alt.name != mirror_name(target.name):
        return None
    for knot in (target, alt):
        if nu_plus_excludes_mirror(knot.nu_plus, knot.nu_plus_mirror):
            detail = f"nu+({knot.name}) = {knot.nu_plus} > 0 and nu+ of its mirror = 0"
            return Exclusion(alt.name, Mechanism.NU_PLUS_MIRROR, detail, {"positive_side": knot.name})
    return None


def _s_max_for(target: Fraction, companion: Fraction, s_max: int) -> int:
    if companion > 0 and target > 0:
        needed = 2
        while needed * needed <= target / companion:
            needed += 1
        return max(s_max, needed)
    return s_max


def _cable_cw(target: KnotRecord, alt: KnotRecord, s_max: int) -> Optional[Exclusion]:
    s_max = _s_max_for(target.delta2, alt.delta2, s_max)
    search = cable_solutions(target.delta2, alt.delta2, s_max)
    if search.solutions or not search.complete:
        return None
    detail = (
        f"no coprime (r, s), s >= 2 with {format_rational(target.delta2)} = "
        f"(r^2-1)(s^2-1)/12 + {format_rational(alt.delta2)}*s^2 (complete to s = {s_max})"
    )
    return Exclusion(alt.name, Mechanism.CABLE_CASSON_WALKER, detail, {"s_max": s_max})


def exclusion_report(
    target: KnotRecord,
    census: Census,
    context: Context,
    *,
    tolerance: Fraction = DEFAULT_TOLERANCE,
    s_max: int = DEFAULT_S_MAX,
) -> ExclusionReport:
    """Rule out each census knot as the alternative ``K'`` (or companion ``J``) in ``context``.

    Raises :class:`ExclusionIncomplete` naming the first survivor.
    """
    if target.name not in census:
        raise PreconditionError("census", f"target {target.name!r} is not in the census")
    hyp_cap = length_hypothesis_cap(target, census, tolerance)
    entries: list[Exclusion] = []

    for alt in census.records:
        entry: Optional[Exclusion] = None
        if context is Context.HYPERBOLIC_ALTERNATIVE:
            if alt.name == target.name:
                entry = Exclusion(alt.name, Mechanism.IS_TARGET_ITSELF, "K' differs from K by assumption")
            else:
                entry = (
                    _volume_length(target, alt, hyp_cap)
                    or _casson_walker(target, alt)
                    or _nu_plus_mirror(target, alt)
                )
        elif context is Context.CABLE_COMPANION_QGE2:
            entry = _volume_length(target, alt, hyp_cap) or _cable_cw(target, alt, s_max)
        elif context is Context.LSPACE_COMPANION:
            if alt.name == target.name:
                if target.delta2 != 0:
                    entry = Exclusion(
                        alt.name,
                        Mechanism.IS_TARGET_ITSELF,
                        f"Delta''(1) = {format_rational(target.delta2)} != 0, so no p/q' with q' > q on K itself",
                    )
            elif not alt.is_lspace_knot:
                entry = Exclusion(alt.name, Mechanism.NOT_LSPACE_KNOT, f"{alt.name} is not an L-space knot")
        else:  # pragma: no cover
            raise ValueError(f"unknown context {context!r}")

        if entry is None:
            raise ExclusionIncomplete(context, alt.name, "no mechanism applies")
        entries.append(entry)
    return ExclusionReport(target.name, context, tuple(entries))


def replay_exclusion(entry: Exclusion, target: KnotRecord, census: Census) -> bool:
    """Re-evaluate one exclusion from the raw census values."""
    alt = census.lookup(entry.alternative)
    m = entry.mechanism
    if m is Mechanism.VOLUME_LENGTH:
        ev = entry.evidence
        return (
            alt.volume is not None
            and target.volume is not None
            and ev["v_small_upper"] == alt.volume.upper
            and ev["v_big_lower"] == target.volume.lower
            and alt.volume.upper < target.volume.lower
            and fkp_bound_holds(alt.volume.upper, target.volume.lower, ev["cap"])
        )
    if m is Mechanism.CASSON_WALKER:
        return cw_excludes(target.delta2, alt.delta2)
    if m is Mechanism.CABLE_CASSON_WALKER:
        search = cable_solutions(target.delta2, alt.delta2, entry.evidence["s_max"])
        return not search.solutions and search.complete
    if m is Mechanism.NU_PLUS_MIRROR:
        side = census.lookup(entry.evidence["positive_side"])
        return alt.name == mirror_name(target.name) and nu_plus_excludes_mirror(side.nu_plus, side.nu_plus_mirror)
    if m is Mechanism.NOT_LSPACE_KNOT:
        return not alt.is_lspace_knot
    if m is Mechanism.IS_TARGET_ITSELF:
        return alt.name == target.name
    return False


# -- region -------------------------------------------------------------------


@dataclass(frozen=True)
class Region:
    """Slopes ``p/q`` certified characterizing for ``target``.

    (i) ``q >= q_min``; (ii) ``p >= max{pos_slope_coeff*q, pos_p_min}``;
    (iii) ``q >= 2`` and ``p <= -max{a q^2 + b q + c, pos_p_min}``.
    """

    q_min: int
    pos_slope_coeff: int
    pos_p_min: int
    neg_quadratic: tuple[int, int, int]
    target: str = field(default="", compare=False)
    length_cap: Optional[Fraction] = field(default=None, compare=False)
    hypothesis_cap: Optional[Fraction] = field(default=None, compare=False)
    constants: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "neg_quadratic", tuple(self.neg_quadratic))
        if self.q_min < 1 or self.pos_p_min < 1:
            raise ValueError("q_min and pos_p_min must be positive")

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "target": self.target,
            "q_min": self.q_min,
            "pos_slope_coeff": self.pos_slope_coeff,
            "pos_p_min": self.pos_p_min,
            "neg_quadratic": list(self.neg_quadratic),
            "constants": self.constants,
        }
        if self.length_cap is not None:
            out["length_cap"] = format_rational(self.length_cap)
        if self.hypothesis_cap is not None:
            out["hypothesis_cap"] = format_rational(self.hypothesis_cap)
        return out

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Region":
        caps = {
            k: parse_rational(data[k]) if data.get(k) is not None else None
            for k in ("length_cap", "hypothesis_cap")
        }
        return cls(
            q_min=int(data["q_min"]),
            pos_slope_coeff=int(data["pos_slope_coeff"]),
            pos_p_min=int(data["pos_p_min"]),
            neg_quadratic=tuple(int(x) for x in data["neg_quadratic"]),
            target=data.get("target", ""),
            constants=data.get("constants", ""),
            **caps,
        )

    def describe(self) -> list[str]:
        a, b, c = self.neg_quadratic
        return [
            f"(i)   q >= {self.q_min}",
            f"(ii)  p >= max{{{self.pos_slope_coeff}q, {self.pos_p_min}}}",
            f"(iii) q >= 2 and p <= -max{{{_quadratic_str(a, b, c)}, {self.pos_p_min}}}",
        ]


def _quadratic_str(a: int, b: int, c: int) -> str:
    s = f"{a}q^2"
    s += f" - {-b}q" if b < 0 else f" + {b}q"
    s += f" - {-c}" if c < 0 else f" + {c}"
    return s


def characterizing_region(
    target: KnotRecord,
    census: Census,
    constants: LengthBoundConstants = RIGOROUS_CONSTANTS,
    *,
    tolerance: Fraction = DEFAULT_TOLERANCE,
) -> Region:
    """Derive the characterizing-slope region for ``target`` from the census."""
    if target.volume is None:
        raise PreconditionError("hyperbolic-alternative", f"{target.name} has no volume enclosure")
    if not target.volume.upper < census.volume_threshold:
        raise PreconditionError(
            "hyperbolic-alternative",
            f"volume of {target.name} is not below the census threshold {format_rational(census.volume_threshold)}",
        )
    if not target.is_lspace_knot:
        raise PreconditionError("satellite-lspace", f"{target.name} is not an L-space knot")
    g = target.genus
    if g < 1:
        raise PreconditionError("genus-rigidity", "target genus must be at least 1")
    for context in Context:
        exclusion_report(target, census, context, tolerance=tolerance)

    length_cap = certified_cap(target.volume.upper, census.volume_threshold, tolerance)
    hyp_cap = length_hypothesis_cap(target, census, tolerance)
    q_min = max_q_from_length(length_cap, constants) + 1
    pos_p_min = max_p_from_length(length_cap, g, constants) + 1
    pos_slope_coeff = 4 * g + 4

    # positive rigidity region must sit inside the L-space surgery range p/q >= 2g - 1
    if not pos_slope_coeff >= 2 * g - 1:
        raise PreconditionError("satellite-lspace", "rigidity threshold below 2g - 1")
    if genus_rigidity(Slope(pos_slope_coeff, 1), g) is not Rigidity.POSITIVE:
        raise PreconditionError("genus-rigidity", "positive threshold inconsistent")

    # the length hypothesis must follow from each condition on its own
    for slope, why in ((Slope(1, q_min), "q >= q_min"), (Slope(pos_p_min, 1), "|p| >= pos_p_min")):
        if min_length_from_slope(slope, g, constants) < hyp_cap:
            raise PreconditionError(
                "length-redundancy", f"{why} does not force length >= {_decimal(hyp_cap)}"
            )

    a, b, c = NEG_QUADRATIC
    # a q^2 + (b - 10) q + c > 0 for all q: positive leading term, negative discriminant
    if not (a > 0 and (b - NEG_LINEAR) ** 2 - 4 * a * c < 0):
        raise PreconditionError("genus-rigidity", "negative quadratic does not dominate the linear bound")

    return Region(
        q_min=q_min,
        pos_slope_coeff=pos_slope_coeff,
        pos_p_min=pos_p_min,
        neg_quadratic=(a, b, c),
        target=target.name,
        length_cap=length_cap,
        hypothesis_cap=hyp_cap,
        constants=constants.label,
    )


# -- verdicts -----------------------------------------------------------------

_RELATIONS = {
    ">=": lambda a, b: a >= b,
    "<=": lambda a, b: a <= b,
    "!=": lambda a, b: a != b,
}


@dataclass(frozen=True)
class TraceStep:
    rule: str
    lhs: int
    rhs: int
    relation: str
    condition: str = ""

    def holds(self) -> bool:
        return _RELATIONS[self.relation](self.lhs, self.rhs)

    def to_dict(self) -> dict[str, Any]:
        return {
            "rule": self.rule,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "relation": self.relation,
            "condition": self.condition,
            "holds": self.holds(),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "TraceStep":
        return cls(data["rule"], int(data["lhs"]), int(data["rhs"]), data["relation"], data.get("condition", ""))


@dataclass(frozen=True)
class Verdict:
    slope: Slope
    condition: Optional[str]
    trace: tuple[TraceStep, ...]

    @property
    def characterizing(self) -> bool:
        return self.condition is not None

    @property
    def status(self) -> str:
        return f"Characterizing ({self.condition})" if self.characterizing else "Unknown"

    def replay(self) -> bool:
        """Re-check the verdict from its trace alone."""
        by_cond: dict[str, list[TraceStep]] = {}
        for step in self.trace:
            by_cond.setdefault(step.condition, []).append(step)
        if self.characterizing:
            steps = by_cond.get(self.condition, [])
            return bool(steps) and all(s.holds() for s in steps)
        if "" in by_cond:
            return any(not s.holds() for s in by_cond[""])
        return all(
            cond in by_cond and any(not s.holds() for s in by_cond[cond]) for cond in ("i", "ii", "iii")
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "slope": str(self.slope),
            "status": "characterizing" if self.characterizing else "unknown",
            "condition": self.condition,
            "trace": [s.to_dict() for s in self.trace],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Verdict":
        return cls(
            Slope.parse(data["slope"]),
            data.get("condition"),
            tuple(TraceStep.from_dict(s) for s in data["trace"]),
        )


def check_slope(region: Region, slope: Slope) -> Verdict:
    if slope.is_meridian:
        step = TraceStep("finite slope", slope.q, 0, "!=")
        return Verdict(slope, None, (step,))
    if slope.p == 0:
        step = TraceStep("nonzero slope", slope.p, 0, "!=")
        return Verdict(slope, None, (step,))

    p, q = slope.p, slope.q
    a, b, c = region.neg_quadratic
    conditions = {
        "i": [TraceStep("q >= q_min", q, region.q_min, ">=", "i")],
        "ii": [
            TraceStep(f"p >= {region.pos_slope_coeff}q", p, region.pos_slope_coeff * q, ">=", "ii"),
            TraceStep("p >= pos_p_min", p, region.pos_p_min, ">=", "ii"),
        ],
        "iii": [
            TraceStep("q >= 2", q, 2, ">=", "iii"),
            TraceStep(f"p <= -({_quadratic_str(a, b, c)})", p, -(a * q * q + b * q + c), "<=", "iii"),
            TraceStep("p <= -pos_p_min", p, -region.pos_p_min, "<=", "iii"),
        ],
    }
    trace: list[TraceStep] = []
    for name, steps in conditions.items():
        trace.extend(steps)
        if all(s.holds() for s in steps):
            return Verdict(slope, name, tuple(trace))
    return Verdict(slope, None, tuple(trace))


def _decimal(value: Fraction, digits: int = 6) -> str:
    scaled = ceil(value * 10**digits)
    text = f"{scaled // 10**digits}.{scaled % 10**digits:0{digits}d}".rstrip("0").rstrip(".")
    return text
