"""Invariant records for the hyperbolic knots of volume at most 3.07.

The built-in census lists 4_1, 5_2, m5_2, 12n242 and m12n242. Records can
also be read from (and written to) a JSON document so other targets can be
fed through the pipeline.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

from .exactnum import IntervalError, RationalInterval, format_decimal, parse_rational
from .laurent import LaurentPoly, NotAlexanderError, check_alexander

__all__ = [
    "Census",
    "CensusError",
    "KnotRecord",
    "builtin_census",
    "dump_census",
    "load_census",
    "mirror_name",
]


class CensusError(ValueError):
    """A census document or record failed validation; ``path`` locates the field."""

    def __init__(self, path: str, message: str, field: str = ""):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.message = message
        self.field = field


@dataclass(frozen=True)
class KnotRecord:
    name: str
    genus: int
    alexander: LaurentPoly
    volume: Optional[RationalInterval]
    is_hyperbolic: bool
    is_lspace_knot: bool
    nu_plus: int
    nu_plus_mirror: int
    provenance_note: str = ""

    def __post_init__(self) -> None:
        problems = _record_problems(self)
        if problems:
            where, message = problems[0]
            raise CensusError(f"{self.name}.{where}", message, field=where)

    @property
    def delta2(self) -> Fraction:
        """Second derivative of the Alexander polynomial at ``t = 1``."""
        return self.alexander.second_derivative_at_one()


def _record_problems(rec: KnotRecord) -> list[tuple[str, str]]:
    out: list[tuple[str, str]] = []
    if not rec.name:
        out.append(("name", "empty knot name"))
    if rec.genus < 0:
        out.append(("genus", "genus must be nonnegative"))
    try:
        check_alexander(rec.alexander)
    except NotAlexanderError as exc:
        out.append(("alexander", str(exc)))
    if rec.volume is not None and rec.volume.lower <= 0:
        out.append(("volume", "volume lower bound must be positive"))
    if rec.nu_plus < 0 or rec.nu_plus_mirror < 0:
        out.append(("nu_plus", "nu+ values are nonnegative"))
    if rec.is_lspace_knot and rec.genus > 0 and rec.nu_plus != rec.genus:
        out.append(("nu_plus", "an L-space knot of positive genus has nu+ equal to its genus"))
    return out


def mirror_name(name: str) -> str:
    """``"12n242" -> "m12n242"`` and back."""
    return name[1:] if name.startswith("m") else f"m{name}"


@dataclass(frozen=True)
class Census:
    records: tuple[KnotRecord, ...]
    volume_threshold: Fraction = field(default=Fraction(307, 100))

    def __post_init__(self) -> None:
        object.__setattr__(self, "records", tuple(self.records))
        object.__setattr__(self, "volume_threshold", parse_rational(self.volume_threshold))
        if not self.records:
            raise CensusError("knots", "census has no records")
        seen: set[str] = set()
        for i, rec in enumerate(self.records):
            if rec.name in seen:
                raise CensusError(f"knots[{i}].name", f"duplicate knot name {rec.name!r}")
            seen.add(rec.name)
        if self.volume_threshold <= 0:
            raise CensusError("volume_threshold", "threshold must be positive")

    @property
    def names(self) -> list[str]:
        return [r.name for r in self.records]

    def lookup(self, name: str) -> KnotRecord:
        for rec in self.records:
            if rec.name == name:
                return rec
        raise KeyError(f"knot {name!r} is not in the census")

    def __contains__(self, name: object) -> bool:
        return any(r.name == name for r in self.records)

    def replace(self, record: KnotRecord) -> "Census":
        """Return a copy with the record of the same name swapped for ``record``."""
        self.lookup(record.name)
        recs = tuple(record if r.name == record.name else r for r in self.records)
        return Census(recs, self.volume_threshold)


_DELTA_4_1 = LaurentPoly.from_coefficients({-1: -1, 0: 3, 1: -1})
_DELTA_5_2 = LaurentPoly.from_coefficients({-1: 2, 0: -3, 1: 2})
_DELTA_12N242 = LaurentPoly.from_coefficients(
    {-5: 1, -4: -1, -2: 1, -1: -1, 0: 1, 1: -1, 2: 1, 4: -1, 5: 1}
)

_VOL_4_1 = RationalInterval(Fraction("2.0298"), Fraction("2.0299"))
_VOL_12N242 = RationalInterval(Fraction("2.82"), Fraction("2.83"))

_NOTE_4_1 = (
    "Volume enclosure [2.0298, 2.0299] is the figure-eight census volume "
    "(2.02988...). A printed value of 2.0988 circulates alongside the 14.17 "
    "length constant, but 14.17 only exceeds the volume-length bound for the "
    "smaller figure; verify-constants reports both."
)
_NOTE_5_2 = (
    "Volume intentionally absent: excluded by the Casson-Walker test, never by "
    "volume. nu+ values follow the positive-twist chirality and are not used."
)
_NOTE_12N242 = (
    "(-2,3,7)-pretzel knot. Genus 5; L-space knot (two lens space surgeries); "
    "nu+ = genus, mirror nu+ = 0. Volume enclosure [2.82, 2.83]."
)


def builtin_census() -> Census:
    records = (
        KnotRecord(
            name="4_1",
            genus=1,
            alexander=_DELTA_4_1,
            volume=_VOL_4_1,
            is_hyperbolic=True,
            is_lspace_knot=False,
            nu_plus=0,
            nu_plus_mirror=0,
            provenance_note=_NOTE_4_1,
        ),
        KnotRecord("5_2", 1, _DELTA_5_2, None, True, False, 1, 0, _NOTE_5_2),
        KnotRecord("m5_2", 1, _DELTA_5_2, None, True, False, 0, 1, _NOTE_5_2),
        KnotRecord("12n242", 5, _DELTA_12N242, _VOL_12N242, True, True, 5, 0, _NOTE_12N242),
        KnotRecord(
            "m12n242", 5, _DELTA_12N242, _VOL_12N242, True, False, 0, 5,
            "Mirror of 12n242: same Alexander polynomial and volume, nu+ = 0.",
        ),
    )
    return Census(records, Fraction(307, 100))


# -- JSON ---------------------------------------------------------------------


def census_to_dict(census: Census) -> dict[str, Any]:
    return {
        "volume_threshold": format_decimal(census.volume_threshold),
        "knots": [_record_to_dict(r) for r in census.records],
    }


def _record_to_dict(rec: KnotRecord) -> dict[str, Any]:
    volume = None
    if rec.volume is not None:
        volume = {
            "lower": format_decimal(rec.volume.lower),
            "upper": format_decimal(rec.volume.upper),
        }
    return {
        "name": rec.name,
        "genus": rec.genus,
        "alexander": rec.alexander.to_pairs(),
        "volume": volume,
        "hyperbolic": rec.is_hyperbolic,
        "lspace_knot": rec.is_lspace_knot,
        "nu_plus": rec.nu_plus,
        "nu_plus_mirror": rec.nu_plus_mirror,
        "provenance_note": rec.provenance_note,
    }


def dump_census(census: Census, indent: int | None = 2) -> str:
    return json.dumps(census_to_dict(census), indent=indent)


def load_census(document: str | dict[str, Any]) -> Census:
    """Parse and validate a census document (JSON text or an already-decoded dict)."""
    if isinstance(document, str):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise CensusError("$", f"malformed JSON: {exc}") from None
    if not isinstance(document, dict):
        raise CensusError("$", "top level must be an object")
    threshold = _rational_field(document, "volume_threshold", "volume_threshold")
    knots = document.get("knots")
    if not isinstance(knots, list):
        raise CensusError("knots", "expected a list of knot records")
    if not knots:
        raise CensusError("knots", "census has no records")
    records = tuple(_record_from_dict(k, f"knots[{i}]") for i, k in enumerate(knots))
    return Census(records, threshold)


def _rational_field(obj: dict[str, Any], key: str, path: str) -> Fraction:
    if key not in obj:
        raise CensusError(path, "missing field")
    value = obj[key]
    if isinstance(value, float):
        raise CensusError(path, "write rationals as strings, not JSON floats")
    try:
        return parse_rational(value)
    except (TypeError, ValueError) as exc:
        raise CensusError(path, str(exc)) from None


def _int_field(obj: dict[str, Any], key: str, path: str) -> int:
    value = obj.get(key)
    if not isinstance(value, int) or isinstance(value, bool):
        raise CensusError(f"{path}.{key}", "expected an integer")
    return value


def _bool_field(obj: dict[str, Any], key: str, path: str) -> bool:
    value = obj.get(key)
    if not isinstance(value, bool):
        raise CensusError(f"{path}.{key}", "expected true or false")
    return value


def _record_from_dict(obj: Any, path: str) -> KnotRecord:
    if not isinstance(obj, dict):
        raise CensusError(path, "expected an object")
    name = obj.get("name")
    if not isinstance(name, str) or not name:
        raise CensusError(f"{path}.name", "expected a nonempty string")

    pairs = obj.get("alexander")
    if not isinstance(pairs, list) or not all(
        isinstance(p, list) and len(p) == 2 and all(isinstance(x, int) and not isinstance(x, bool) for x in p)
        for p in pairs
    ):
        raise CensusError(f"{path}.alexander", "expected [[doubled_exponent, coefficient], ...]")
    alexander = LaurentPoly.from_pairs(pairs)
    try:
        check_alexander(alexander)
    except NotAlexanderError as exc:
        raise CensusError(f"{path}.alexander", str(exc)) from None

    raw_volume = obj.get("volume")
    volume = None
    if raw_volume is not None:
        if not isinstance(raw_volume, dict):
            raise CensusError(f"{path}.volume", "expected {lower, upper} or null")
        lower = _rational_field(raw_volume, "lower", f"{path}.volume.lower")
        upper = _rational_field(raw_volume, "upper", f"{path}.volume.upper")
        try:
            volume = RationalInterval(lower, upper)
        except IntervalError as exc:
            raise CensusError(f"{path}.volume", str(exc)) from None

    note = obj.get("provenance_note", "")
    if not isinstance(note, str):
        raise CensusError(f"{path}.provenance_note", "expected a string")

    genus = _int_field(obj, "genus", path)
    hyperbolic = _bool_field(obj, "hyperbolic", path)
    lspace = _bool_field(obj, "lspace_knot", path)
    nu_plus = _int_field(obj, "nu_plus", path)
    nu_plus_mirror = _int_field(obj, "nu_plus_mirror", path)
    try:
        return KnotRecord(
            name=name,
            genus=genus,
            alexander=alexander,
            volume=volume,
            is_hyperbolic=hyperbolic,
            is_lspace_knot=lspace,
            nu_plus=nu_plus,
            nu_plus_mirror=nu_plus_mirror,
            provenance_note=note,
        )
    except CensusError as exc:
        # re-anchor the record-level path at the document position
        raise CensusError(f"{path}.{exc.field}", exc.message, field=exc.field) from None
