"""End-to-end acceptance criteria, one test per criterion.

A ``criterion N PASS/FAIL`` line per test is printed in the terminal summary
(see ``conftest.py``); run with ``pytest tests/test_acceptance.py -v``.
"""

import dataclasses
import random
from fractions import Fraction
from math import gcd

import pytest
import sympy as sp

from charslope.bounds import PAPER_CONSTANTS, RIGOROUS_CONSTANTS, fkp_bound_holds
from charslope.census import builtin_census
from charslope.exactnum import PI_LOWER, PI_UPPER, Slope, rational_normalize
from charslope.laurent import LaurentPoly, q_poly, torus_alexander, torus_second_derivative
from charslope.obstructions import cable_alexander, cable_solutions, d_gap_sum
from charslope.pipeline import (
    Context,
    ExclusionIncomplete,
    Mechanism as M,
    characterizing_region,
    check_slope,
    exclusion_report,
)
from charslope.twist import family_certificate, twist_surgery_slope

from conftest import sympy_derivatives_at_one


@pytest.fixture(scope="module")
def census():
    return builtin_census()


@pytest.fixture(scope="module")
def target(census):
    return census.lookup("12n242")


def test_criterion_01_delta2_values(census):
    assert census.lookup("5_2").alexander.second_derivative_at_one() == 4
    assert census.lookup("12n242").alexander.second_derivative_at_one() == 24
    # independent symbolic check of the same polynomials
    assert sympy_derivatives_at_one(census.lookup("12n242").alexander)[2] == 24


def test_criterion_02_torus_calculus():
    for k in range(1, 51):
        value, first, second = sympy_derivatives_at_one(q_poly(k))
        assert (value, first, second) == (k, 0, sp.Rational(k * (k * k - 1), 12))
    for r in range(3, 26):
        for s in range(2, r):
            if gcd(r, s) != 1:
                continue
            poly = torus_alexander(r, s)
            assert poly.second_derivative_at_one() == torus_second_derivative(r, s)
            assert sympy_derivatives_at_one(poly)[2] == sp.Rational((r * r - 1) * (s * s - 1), 12)


def _random_alexander(rng):
    degree = rng.randint(0, 4)
    coeffs = {i: rng.randint(-5, 5) for i in range(1, degree + 1)}
    middle = 1 - 2 * sum(coeffs.values())
    return LaurentPoly.from_coefficients({0: middle, **coeffs, **{-i: c for i, c in coeffs.items()}})


def test_criterion_03_cable_identity():
    rng = random.Random(20240611)
    done = 0
    while done < 100:
        companion = _random_alexander(rng)
        r, s = rng.randint(1, 12), rng.randint(2, 9)
        if gcd(r, s) != 1:
            continue
        cable = cable_alexander(companion, r, s)
        expected = s * s * companion.second_derivative_at_one() + Fraction((r * r - 1) * (s * s - 1), 12)
        assert cable.second_derivative_at_one() == expected
        assert sympy_derivatives_at_one(cable)[2] == expected
        done += 1


def _brute_cable(target, companion, s_max, r_max=200):
    return sorted(
        (r, s)
        for s in range(2, s_max + 1)
        for r in range(1, r_max + 1)
        if gcd(r, s) == 1 and 12 * target == (r * r - 1) * (s * s - 1) + 12 * s * s * companion
    )


def test_criterion_04_diophantine_exclusions():
    for companion in (4, 24):
        search = cable_solutions(Fraction(24), Fraction(companion), 100)
        assert search.solutions == [] and search.complete
        # (r^2-1)(s^2-1) <= 12*24 bounds r well below 200
        assert _brute_cable(24, companion, 100) == []


def test_criterion_05_rigorous_inequalities():
    assert PI_LOWER < PI_UPPER and PI_UPPER - PI_LOWER <= Fraction(1, 10**30)
    assert fkp_bound_holds("2.0299", "2.82", "14.17") is True
    assert fkp_bound_holds("2.83", "3.07", "27.34") is True
    assert fkp_bound_holds("2.0988", "2.82", "14.17") is False


@pytest.mark.parametrize("constants", [RIGOROUS_CONSTANTS, PAPER_CONSTANTS], ids=["120-67", "179-100"])
def test_criterion_06_region_regeneration(census, target, constants):
    region = characterizing_region(target, census, constants)
    assert (region.q_min, region.pos_slope_coeff, region.pos_p_min, region.neg_quadratic) == (
        49,
        24,
        441,
        (4, -2, 12),
    )


def test_criterion_07_verdicts(census, target):
    region = characterizing_region(target, census)
    cases = [
        ((1, 49), "i"),
        ((441, 1), "ii"),
        # 480/20 is 24/1 in lowest terms, which no condition covers
        ((480, 20), "ii"),
        ((-441, 2), "iii"),
        ((7, 2), None),
        ((0, 1), None),
        ((440, 1), None),
    ]
    got = {pq: check_slope(region, rational_normalize(*pq)).condition for pq, _ in cases}
    assert got == {pq: cond for pq, cond in cases}


def test_criterion_08_exclusion_reports(census, target):
    expected = {
        Context.HYPERBOLIC_ALTERNATIVE: {
            "4_1": M.VOLUME_LENGTH,
            "5_2": M.CASSON_WALKER,
            "m5_2": M.CASSON_WALKER,
            "m12n242": M.NU_PLUS_MIRROR,
            "12n242": M.IS_TARGET_ITSELF,
        },
        Context.CABLE_COMPANION_QGE2: {
            "4_1": M.VOLUME_LENGTH,
            "5_2": M.CABLE_CASSON_WALKER,
            "m5_2": M.CABLE_CASSON_WALKER,
            "12n242": M.CABLE_CASSON_WALKER,
            "m12n242": M.CABLE_CASSON_WALKER,
        },
        Context.LSPACE_COMPANION: {
            "4_1": M.NOT_LSPACE_KNOT,
            "5_2": M.NOT_LSPACE_KNOT,
            "m5_2": M.NOT_LSPACE_KNOT,
            "m12n242": M.NOT_LSPACE_KNOT,
            "12n242": M.IS_TARGET_ITSELF,
        },
    }
    for context, mechanisms in expected.items():
        assert exclusion_report(target, census, context).mechanisms() == mechanisms
    same = target.alexander
    for name in ("5_2", "m5_2"):
        perturbed = census.replace(dataclasses.replace(census.lookup(name), alexander=same))
        with pytest.raises(ExclusionIncomplete):
            exclusion_report(target, perturbed, Context.HYPERBOLIC_ALTERNATIVE)
        with pytest.raises(ExclusionIncomplete):
            characterizing_region(target, perturbed)


def _brute_dsum(v, p, q):
    def at(i):
        return v[i] if i < len(v) else 0

    total = 0
    for i in range(p):
        up = (p - i) // q + (1 if (p - i) % q else 0)
        total += max(at(i // q), at(up))
    return total


def test_criterion_09_ni_wu_property():
    rng = random.Random(7)
    for _ in range(500):
        v = sorted((rng.randint(0, 12) for _ in range(rng.randint(0, 8))), reverse=True)
        p, q = rng.randint(1, 60), rng.randint(1, 15)
        got = d_gap_sum(v, p, q)
        assert got == _brute_dsum(v, p, q)
        assert got >= (v[0] if v else 0)


def test_criterion_10_twist_construction():
    for q in range(1, 101):
        assert twist_surgery_slope(0, q) == Fraction(1, q)
        cert = family_certificate(q)
        assert cert.slope == Fraction(1, q)
        assert cert.knot_genus == 2 and cert.companion_genus_cap == 1
        assert cert.knot_genus > cert.companion_genus_cap
        assert Slope.from_fraction(cert.slope) == Slope(1, q)
