from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from twistzeta.partial import ProblemSpec
from twistzeta.singular import Tier, candidate_hyperplanes, is_regular_point

QUAD_D2 = ProblemSpec.from_strings(2, ["1", "1 + X2 + X1^2*X2^2"], ["1/2"])


def test_d1_linear():
    rep = candidate_hyperplanes((0, 1), (-3, 2))
    assert rep.values() == [1, 0, -1, -2, -3]
    assert rep.values(Tier.GENUINE) == [1]
    assert rep.values(Tier.CANCELLED) == [0, -1, -2, -3]


def test_d1_quadratic():
    rep = candidate_hyperplanes((0, 2), (-3, 2))
    assert rep.values(Tier.CANDIDATE) == [Fraction(1, 2), Fraction(-1, 2), Fraction(-3, 2), Fraction(-5, 2)]
    assert rep.values(Tier.GENUINE) == []


def test_d2_from_spec():
    rep = candidate_hyperplanes(QUAD_D2, (-3, 2))
    assert rep.values(Tier.CANDIDATE) == [Fraction(1, 2) - j for j in range(4)]
    assert all(e.source == "S2" for e in rep.entries)


def test_json_shape():
    rep = candidate_hyperplanes((0, 1, 2), (0, 1))
    js = rep.to_json()
    assert js[0] == {"sT": "1/2", "source": "S2", "tier": "Candidate", "witness": {"family": "S2", "l": [0], "t": 0}}
    assert js[1]["sT"] == "0" and js[1]["tier"] == "CancelledByGammaZero"


def test_empty_window():
    assert candidate_hyperplanes((0, 1), (2, 1)).entries == []
    assert candidate_hyperplanes((0, 1), (Fraction(1, 3), Fraction(2, 3))).entries == []


def test_d0_pole():
    rep = candidate_hyperplanes((2,), (-3, 3))
    assert rep.values() == [Fraction(1, 2)]


def test_positive_a0_families():
    rep = candidate_hyperplanes((1, 2), (-2, 3))
    sources = {e.sT: e.source for e in rep.entries}
    assert "S1" in sources[Fraction(1)] and "S3" in sources[Fraction(1)]
    assert sources[Fraction(-2)] == "S2"


def test_is_regular_examples():
    assert not is_regular_point((0, 1), 1)
    assert not is_regular_point((0, 1, 2), Fraction(1, 2))
    assert is_regular_point((0, 1, 2), Fraction(1, 3))
    assert is_regular_point(QUAD_D2, [0, 0])
    assert is_regular_point((0, 1), [-3, -4])


def test_bad_exponents():
    with pytest.raises(ValueError):
        candidate_hyperplanes((1, 0), (0, 1))
    with pytest.raises(ValueError):
        candidate_hyperplanes((0,), (0, 1))


EXPONENTS = st.lists(st.integers(min_value=0, max_value=6), min_size=1, max_size=4, unique=True).map(
    lambda xs: tuple(sorted(xs))
).filter(lambda a: a[-1] >= 1)
BOUND = st.fractions(min_value=-6, max_value=3, max_denominator=4)


@given(EXPONENTS, BOUND, BOUND)
def test_entries_sorted_and_nonpositive_never_genuine(a, x, y):
    lo, hi = min(x, y), max(x, y)
    rep = candidate_hyperplanes(a, (lo, hi), max_index=8)
    vals = rep.values()
    assert vals == sorted(vals, reverse=True)
    assert all(lo <= v <= hi for v in vals)
    for e in rep.entries:
        assert e.witnesses
        if e.sT.denominator == 1 and e.sT <= 0:
            assert e.tier is not Tier.GENUINE


@given(EXPONENTS.filter(lambda a: a[0] == 0))
def test_a0_zero_has_no_s1_s3(a):
    rep = candidate_hyperplanes(a, (-5, 2), max_index=8)
    for e in rep.entries:
        assert "S1" not in e.source and "S3" not in e.source


@given(EXPONENTS, BOUND, BOUND, st.integers(min_value=0, max_value=6), st.integers(min_value=0, max_value=3))
def test_monotone_in_window_and_index(a, x, y, m, extra):
    lo, hi = min(x, y), max(x, y)
    small = set(candidate_hyperplanes(a, (lo, hi), max_index=m).values())
    big = set(candidate_hyperplanes(a, (lo - 1, hi + 1), max_index=m + extra).values())
    assert small <= big


@given(BOUND, BOUND)
def test_quadratic_d2_candidate_set(x, y):
    lo, hi = min(x, y), max(x, y)
    rep = candidate_hyperplanes((0, 1, 2), (lo, hi), max_index=20)
    expected = [Fraction(1, 2) - j for j in range(20) if lo <= Fraction(1, 2) - j <= hi]
    assert rep.values(Tier.CANDIDATE) == expected


@given(EXPONENTS, st.integers(min_value=0, max_value=10))
def test_nonpositive_integers_regular(a, m):
    assert is_regular_point(a, -m)
