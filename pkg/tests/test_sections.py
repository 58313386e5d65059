import logging
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from spectral_pairs.ratpoly import Poly
from spectral_pairs.sections import INFINITY, Section, flip_chart, is_generic, zero_profile

x = Poly.x()

sections = st.integers(0, 7).flatmap(
    lambda k: st.lists(st.integers(-4, 4), max_size=k + 1).map(lambda cs: Section(k, Poly(cs)))
)
nonzero_sections = sections.filter(lambda s: not s.is_zero())


def test_flip_examples():
    z = Poly.x()
    assert flip_chart(Section(2, x)) == z
    assert flip_chart(Section(3, Poly.const(1))) == z**3
    assert flip_chart(Section(4, x**4)) == Poly.const(1)


def test_degree_bound_enforced():
    with pytest.raises(ValueError):
        Section(2, x**3)
    with pytest.raises(ValueError):
        Section(-1, Poly())


@given(sections)
def test_flip_is_involution(s):
    assert flip_chart(s.flipped()) == s.rep


@given(sections, st.fractions(min_value=-5, max_value=5, max_denominator=4).filter(bool))
def test_flip_matches_substitution(s, z0):
    # z^k s(1/z) evaluated directly
    assert flip_chart(s)(z0) == z0**s.k * s.rep(1 / z0)


def _total(profile):
    return sum(z.multiplicity * z.count for z in profile)


def test_profile_split():
    profile = zero_profile(Section(4, x * (x - 1) * (x - 2) * (x - 3)))
    assert [(z.place, z.multiplicity) for z in profile] == [(0, 1), (1, 1), (2, 1), (3, 1)]


def test_profile_with_infinity():
    profile = zero_profile(Section(4, x**3 - x))
    assert len(profile) == 4 and _total(profile) == 4
    assert profile[-1].place == INFINITY and profile[-1].multiplicity == 1


def test_profile_double():
    profile = zero_profile(Section(4, x**2))
    assert [(z.place, z.multiplicity) for z in profile] == [(0, 2), (INFINITY, 2)]


def test_profile_irrational_block():
    profile = zero_profile(Section(5, (x**2 - 2) ** 2 * (x - Fraction(1, 2))))
    assert profile[0].place == Fraction(1, 2)
    block = profile[1]
    assert block.place == x**2 - 2 and block.multiplicity == 2 and block.count == 2
    assert _total(profile) == 5


def test_profile_rejects_zero():
    with pytest.raises(ValueError):
        zero_profile(Section.zero(3))


@given(nonzero_sections)
def test_profile_total_is_twist(s):
    assert _total(zero_profile(s)) == s.k


@given(nonzero_sections)
def test_zero_at_origin_swaps_with_infinity(s):
    at_zero = {z.place: z.multiplicity for z in zero_profile(s)}
    flipped = {z.place: z.multiplicity for z in zero_profile(s.flipped())}
    assert at_zero.get(Fraction(0), 0) == flipped.get(INFINITY, 0)
    assert at_zero.get(INFINITY, 0) == flipped.get(Fraction(0), 0)


@given(sections)
def test_flip_preserves_genericity(s):
    assert is_generic(s) == is_generic(s.flipped())


def test_generic_examples():
    assert is_generic(Section(4, x**3 - x))
    assert not is_generic(Section(4, x**2 - 1))
    assert not is_generic(Section(4, x**2 * (x - 1) * (x + 1)))


def test_zero_section_not_generic(caplog):
    with caplog.at_level(logging.WARNING):
        assert not is_generic(Section.zero(2))
    assert "vanishes identically" in caplog.text


@given(nonzero_sections)
def test_generic_iff_all_zeros_simple(s):
    assert is_generic(s) == all(z.multiplicity == 1 for z in zero_profile(s))
