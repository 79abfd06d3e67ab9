from fractions import Fraction
from math import gcd, isqrt

import pytest
from hypothesis import given
from hypothesis import strategies as st

from charslope.exactnum import Slope
from charslope.laurent import LaurentPoly, torus_second_derivative
from charslope.obstructions import (
    CableSolution,
    Rigidity,
    VSequence,
    cable_alexander,
    cable_solutions,
    cw_correction_term,
    cw_excludes,
    d_gap_sum,
    genus_rigidity,
    nu_plus_excludes_mirror,
    satellite_slope_transform,
    schubert_genus,
)

from test_laurent import alexander_polys


def brute_cable(target, companion, s_max):
    """Direct double loop over r and s testing the cable equation."""
    target, companion = Fraction(target), Fraction(companion)
    r_max = isqrt(int(1 + 4 * abs(target) + 16 * abs(companion)) + 1) + 1
    # clear denominators: 12*D*target = D(r^2-1)(s^2-1) + 12*D*s^2*companion
    d = target.denominator * companion.denominator
    lhs = 12 * d * target
    out = []
    for s in range(2, s_max + 1):
        for r in range(1, r_max + 1):
            if gcd(r, s) == 1 and lhs == d * (r * r - 1) * (s * s - 1) + 12 * d * s * s * companion:
                out.append((r, s))
    return out


def brute_dsum(v, p, q):
    vals = list(v)

    def V(i):
        return vals[i] if i < len(vals) else 0

    total = 0
    for i in range(p):
        lo = i // q
        hi = (p - i + q - 1) // q
        total += max(V(lo), V(hi))
    return total


@st.composite
def v_sequences(draw):
    vals = sorted(draw(st.lists(st.integers(0, 8), max_size=8)), reverse=True)
    return VSequence(tuple(vals))


def test_cw_correction_term():
    assert cw_correction_term(Slope(18, 1), Fraction(24)) == Fraction(2, 3)
    assert cw_correction_term(Slope(5, 3), Fraction(0)) == 0
    assert cw_correction_term(Slope(-7, 2), Fraction(4)) == Fraction(-4, 7)
    with pytest.raises(ValueError):
        cw_correction_term(Slope(0, 1), Fraction(4))


def test_cw_excludes():
    assert cw_excludes(24, 4)
    assert not cw_excludes(24, 24)
    assert cw_excludes(24, -2)


def test_cable_solutions_examples():
    for companion in (4, 24):
        search = cable_solutions(24, companion, 100)
        assert search.solutions == [] and search.complete
    search = cable_solutions(2, 0, 5)
    assert {(c.r, c.s) for c in search.solutions} == {(3, 2), (2, 3)}
    assert not search.complete


def test_cable_solutions_r_equal_one():
    # 24 = 0 + 6 * 2^2: the core itself counts as a candidate
    search = cable_solutions(24, 6, 10)
    assert CableSolution(1, 2) in search.solutions


small_rationals = st.builds(Fraction, st.integers(-60, 60), st.integers(1, 6))


@given(small_rationals, small_rationals, st.integers(2, 12))
def test_cable_solutions_match_brute_force(target, companion, s_max):
    got = {(c.r, c.s) for c in cable_solutions(target, companion, s_max).solutions}
    assert got == set(brute_cable(target, companion, s_max))


@given(st.integers(-60, 60), st.integers(1, 60))
def test_cable_completeness_flag_is_sound(target, companion):
    s_max = 2
    while s_max * s_max <= Fraction(target, companion):
        s_max += 1
    search = cable_solutions(target, companion, s_max)
    assert search.complete
    assert {(c.r, c.s) for c in search.solutions} == set(brute_cable(target, companion, s_max + 20))


@given(alexander_polys(max_degree=3), st.integers(-9, 9), st.integers(2, 6))
def test_cable_alexander_composition(companion, r, s):
    if r == 0 or gcd(r, s) != 1:
        return
    poly = cable_alexander(companion, r, s)
    expected = torus_second_derivative(r, s) + s * s * companion.second_derivative_at_one()
    assert poly.second_derivative_at_one() == expected
    assert poly.is_palindromic() and poly.value_at_one() == 1


def test_cable_alexander_rejects_non_coprime():
    with pytest.raises(ValueError):
        cable_alexander(LaurentPoly.constant(1), 4, 2)


def test_d_gap_sum_examples():
    assert d_gap_sum(VSequence(()), 7, 3) == 0
    assert d_gap_sum(VSequence((1,)), 3, 1) == 1
    assert d_gap_sum(VSequence((2, 1)), 2, 3) == 4
    with pytest.raises(ValueError):
        d_gap_sum(VSequence((1,)), 0, 1)


def test_vsequence_validation():
    assert VSequence((3, 2, 2, 0)).nu_plus == 3
    assert VSequence((1,)).nu_plus == 1
    with pytest.raises(ValueError):
        VSequence((1, 2))
    with pytest.raises(ValueError):
        VSequence((-1,))


@given(v_sequences(), st.integers(1, 60), st.integers(1, 12))
def test_d_gap_sum_oracle_and_bound(v, p, q):
    total = d_gap_sum(v, p, q)
    assert total == brute_dsum(v.values, p, q)
    assert total >= v[0]


@given(v_sequences(), st.integers(0, 3), st.integers(1, 40), st.integers(1, 8))
def test_d_gap_sum_monotone(v, bump, p, q):
    bigger = VSequence(tuple(x + bump for x in v.values))
    assert d_gap_sum(bigger, p, q) >= d_gap_sum(v, p, q)


def test_nu_plus_excludes_mirror():
    assert nu_plus_excludes_mirror(5, 0)
    assert not nu_plus_excludes_mirror(0, 0)
    assert not nu_plus_excludes_mirror(3, 1)


def test_satellite_slope_transform():
    assert satellite_slope_transform(Slope(1, 5), 2) == Slope(1, 20)
    assert satellite_slope_transform(Slope(18, 1), 3) == Slope(2, 1)
    assert satellite_slope_transform(Slope(-441, 2), 7) == Slope(-9, 2)
    with pytest.raises(ValueError):
        satellite_slope_transform(Slope(1, 1), 1)


def test_schubert_genus():
    assert schubert_genus(0, 2, 5) == 10
    assert schubert_genus(1, 0, 7) == 1
    assert schubert_genus(3, 2, 0) == 3


@given(st.integers(0, 20), st.integers(2, 10), st.integers(1, 20))
def test_schubert_companion_genus_smaller(gp, w, gj):
    assert schubert_genus(gp, w, gj) > gj


def test_genus_rigidity_examples():
    assert genus_rigidity(Slope(24, 1), 5) is Rigidity.POSITIVE
    assert genus_rigidity(Slope(-14, 1), 5) is Rigidity.NONE  # -28/2 reduces to q = 1
    assert genus_rigidity(Slope(-29, 2), 5) is Rigidity.NEGATIVE
    assert genus_rigidity(Slope(7, 2), 5) is Rigidity.NONE


@given(st.integers(-10**4, 10**4), st.integers(1, 100), st.integers(0, 10**4), st.integers(1, 100), st.integers(1, 8))
def test_positive_rigidity_upward_closed(p, q, dp, q2, g):
    s = Slope.from_fraction(Fraction(p, q))
    if genus_rigidity(s, g) is not Rigidity.POSITIVE:
        return
    higher = Slope.from_fraction(Fraction(p, q) + Fraction(dp, q2))
    assert genus_rigidity(higher, g) is Rigidity.POSITIVE


@given(st.integers(1, 30), st.integers(2, 12), small_rationals)
def test_cable_solutions_find_planted_solution(r, s, companion):
    if gcd(r, s) != 1:
        return
    target = Fraction((r * r - 1) * (s * s - 1), 12) + s * s * companion
    found = {(c.r, c.s) for c in cable_solutions(target, companion, 12).solutions}
    assert (r, s) in found
    assert found == set(brute_cable(target, companion, 12))
