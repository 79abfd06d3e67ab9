"""Integer Laurent polynomials in ``t`` with half-integer exponents.

Exponents are stored doubled, so ``t^(1/2)`` has key ``1`` and ``t^-2`` has
key ``-4``. Only the values at ``t = 1`` (and the first two derivatives there)
are ever needed, and all of them are exact rationals.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Iterator, Mapping

__all__ = [
    "LaurentPoly",
    "NotAKnotError",
    "NotAlexanderError",
    "check_alexander",
    "q_poly",
    "torus_alexander",
    "torus_second_derivative",
]


class NotAlexanderError(ValueError):
    pass


class NotAKnotError(ValueError):
    pass


class LaurentPoly:
    """Immutable map from doubled exponent to nonzero integer coefficient."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, int] = {}
        for exp2, coeff in items:
            if not isinstance(exp2, int) or not isinstance(coeff, int):
                raise TypeError("doubled exponents and coefficients must be ints")
            acc[exp2] = acc.get(exp2, 0) + coeff
        self._terms = {e: c for e, c in sorted(acc.items()) if c != 0}
        self._hash = None

    @classmethod
    def constant(cls, c: int) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def from_coefficients(cls, coeffs: Mapping[int, int]) -> "LaurentPoly":
        """Build from integer (undoubled) exponents, e.g. ``{-1: 2, 0: -3, 1: 2}``."""
        return cls({2 * e: c for e, c in coeffs.items()})

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[int, int]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"LaurentPoly({self._terms!r})"

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __add__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        other = _coerce(other)
        return LaurentPoly(list(self._terms.items()) + list(other._terms.items()))

    __radd__ = __add__

    def __sub__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other: int) -> "LaurentPoly":
        return _coerce(other) - self

    def __mul__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        other = _coerce(other)
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative powers are not Laurent polynomials in general")
        result = LaurentPoly.constant(1)
        for _ in range(n):
            result = result * self
        return result

    def substitute_power(self, s: int) -> "LaurentPoly":
        """Return ``P(t^s)``."""
        if s < 1:
            raise ValueError("substitution power must be positive")
        return LaurentPoly({s * e: c for e, c in self._terms.items()})

    def mirror(self) -> "LaurentPoly":
        """Return ``P(t^-1)``."""
        return LaurentPoly({-e: c for e, c in self._terms.items()})

    def is_palindromic(self) -> bool:
        return all(self._terms.get(-e) == c for e, c in self._terms.items())

    def has_integer_exponents(self) -> bool:
        return all(e % 2 == 0 for e in self._terms)

    def value_at_one(self) -> int:
        return sum(self._terms.values())

    def derivative_at_one(self) -> Fraction:
        return sum((c * Fraction(e, 2) for e, c in self._terms.items()), Fraction(0))

    def second_derivative_at_one(self) -> Fraction:
        # d^2/dt^2 t^e = e(e-1) t^(e-2); with e = k/2 this is k(k-2)/4.
        return sum((Fraction(c * e * (e - 2), 4) for e, c in self._terms.items()), Fraction(0))

    def exact_div(self, divisor: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient ``self / divisor``; raises if the remainder is nonzero."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return LaurentPoly()
        rem = {e: Fraction(c) for e, c in self._terms.items()}
        d_items = sorted(divisor._terms.items())
        d_low, d_lead_exp = d_items[0][0], d_items[-1][0]
        d_lead = d_items[-1][1]
        quotient: dict[int, int] = {}
        while rem:
            top = max(rem)
            # an exact multiple of the divisor spans at least as wide as it
            if top - min(rem) < d_lead_exp - d_low:
                raise ArithmeticError("inexact Laurent division: nonzero remainder")
            shift = top - d_lead_exp
            factor = rem[top] / d_lead
            if factor.denominator != 1:
                raise ArithmeticError("inexact Laurent division: non-integral quotient")
            quotient[shift] = int(factor)
            for e, c in d_items:
                key = e + shift
                value = rem.get(key, 0) - factor * c
                if value:
                    rem[key] = value
                else:
                    rem.pop(key, None)
        return LaurentPoly(quotient)

    def to_pairs(self) -> list[list[int]]:
        """JSON form: ``[[doubled_exponent, coefficient], ...]``."""
        return [[e, c] for e, c in self._terms.items()]

    @classmethod
    def from_pairs(cls, pairs: Iterable[Iterable[int]]) -> "LaurentPoly":
        out = []
        for pair in pairs:
            e, c = pair
            out.append((e, c))
        return cls(out)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts: list[str] = []
        for e, c in self._terms.items():
            mono = _monomial(e)
            if mono == "1":
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{mono}"
            sign = "-" if c < 0 else "+"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts)


def _monomial(e2: int) -> str:
    if e2 == 0:
        return "1"
    if e2 == 2:
        return "t"
    if e2 % 2 == 0:
        return f"t^{e2 // 2}"
    return f"t^({e2}/2)"


def _coerce(value: "LaurentPoly | int") -> LaurentPoly:
    if isinstance(value, LaurentPoly):
        return value
    if isinstance(value, int):
        return LaurentPoly.constant(value)
    raise TypeError(f"cannot combine LaurentPoly with {type(value).__name__}")


def check_alexander(poly: LaurentPoly) -> LaurentPoly:
    """Raise :class:`NotAlexanderError` unless ``poly`` is a symmetrized knot polynomial."""
    if not poly.has_integer_exponents():
        raise NotAlexanderError(f"half-integer exponent in {poly}")
    if not poly.is_palindromic():
        raise NotAlexanderError(f"not symmetric under t -> 1/t: {poly}")
    if poly.value_at_one() != 1:
        raise NotAlexanderError(f"value at t=1 is {poly.value_at_one()}, expected 1: {poly}")
    return poly


def q_poly(k: int) -> LaurentPoly:
    """``t^((1-k)/2) * (1 + t + ... + t^(k-1))``, symmetric about 0."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    return LaurentPoly({2 * i + 1 - k: 1 for i in range(k)})


def torus_alexander(r: int, s: int) -> LaurentPoly:
    """Symmetrized Alexander polynomial of the ``(r, s)`` torus knot.

    Computed as ``Q_rs / (Q_r Q_s)`` by exact division. ``|r| = 1`` or
    ``|s| = 1`` gives the unknot.
    """
    r, s = abs(r), abs(s)
    if r == 0 or s == 0 or gcd(r, s) != 1:
        raise NotAKnotError(f"T({r},{s}) is not a knot: gcd must be 1")
    if r == 1 or s == 1:
        return LaurentPoly.constant(1)
    return q_poly(r * s).exact_div(q_poly(r) * q_poly(s))


def torus_second_derivative(r: int, s: int) -> Fraction:
    return Fraction((r * r - 1) * (s * s - 1), 12)
