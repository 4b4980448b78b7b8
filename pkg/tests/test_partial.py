from __future__ import annotations

import itertools
import random
from fractions import Fraction

import mpmath
import pytest
from gen import rand_spec
from hypothesis import given
from hypothesis import strategies as st

from twistzeta.dc import dc_value_nonpos
from twistzeta.errors import PartsMismatch, UnsupportedArgument, ValidationError, WrongShape
from twistzeta.exact import multinomial
from twistzeta.expr import ValueExpr
from twistzeta.lerch import zeta_neg
from twistzeta.oracle import n1_binomial_continuation
from twistzeta.partial import (
    ProblemSpec,
    delta_point_d1,
    enumerate_second_sum,
    validate,
    value_auto,
    value_d1,
    value_d2,
    value_general,
)
from twistzeta.poly import MultiPoly, parse_poly

QUAD_D2 = ProblemSpec.from_strings(2, ["1", "1 + X2 + X1^2*X2^2"], ["1/2"])


def test_spec_derived_exponents():
    assert QUAD_D2.a == (0, 1, 2)
    assert QUAD_D2.d == 2
    assert QUAD_D2.alpha == (1, 2)
    assert [str(q) for q in QUAD_D2.Q] == ["1", "1", "X1^2"]


def test_validate_example():
    report = validate(QUAD_D2)
    assert report.ok
    assert report.abscissa == 1
    assert report.summary() == "valid; abscissa bound Re s_T > 1"


def test_validate_negative_coefficient():
    spec = ProblemSpec.from_strings(2, ["1", "1 - X1 + X2"], ["1/2"])
    report = validate(spec)
    assert not report.ok
    assert any("CertificationFailed" in d for d in report.diagnostics)
    with pytest.raises(ValidationError):
        value_general(spec, [0, 0])


def test_trivial_twist_rejected():
    with pytest.raises(ValueError):
        ProblemSpec.from_strings(2, ["X1 + X2"], ["0"])


def test_validate_shape_problems():
    no_xn = ProblemSpec.from_strings(2, ["1 + X1"], ["1/3"])
    assert any("a_d >= 1" in d for d in validate(no_xn).diagnostics)
    flat = ProblemSpec.from_strings(3, ["X1 + X3"], ["1/2", "1/3"])
    assert any("tend to infinity" in d for d in validate(flat).diagnostics)
    wrong_twists = ProblemSpec(2, 1, (), parse_poly("X1 + X2", 2), ())
    assert not validate(wrong_twists).ok


def test_point_shape():
    with pytest.raises(WrongShape):
        value_general(QUAD_D2, [0])
    with pytest.raises(WrongShape):
        value_general(QUAD_D2, [0, -1])
    with pytest.raises(WrongShape):
        value_d1(QUAD_D2, [0, 0])
    d1 = ProblemSpec.from_strings(2, ["X1", "X1 + X1*X2"], ["1/2"])
    with pytest.raises(WrongShape):
        value_d2(d1, [0, 0])


@pytest.mark.parametrize(
    "N_T, a, expected",
    [(0, (0, 1), [(1, ())]), (0, (0, 2), []), (0, (0, 1, 2), [(0, (1,))])],
)
def test_enumerate_examples(N_T, a, expected):
    assert enumerate_second_sum(N_T, a) == expected


@given(st.lists(st.integers(min_value=0, max_value=6), min_size=2, max_size=4, unique=True), st.integers(0, 6))
def test_enumerate_positivity(raw, N_T):
    a = tuple(sorted(raw))
    if a[-1] < 1:
        return
    for i, ell in enumerate_second_sum(N_T, a):
        assert sum(ell) + i - N_T >= 1
        # each entry solves the Diophantine constraint
        assert sum((a[-1] - a[j]) * x for j, x in zip(range(1, len(a) - 1), ell)) + i * (a[-1] - a[0]) == 1 + a[-1] * N_T


@pytest.mark.parametrize("text", ["X + X^2", "1 + X + X^2"])
def test_n1_golden(text):
    spec = ProblemSpec.from_strings(1, [text])
    assert value_general(spec, [0]) == ValueExpr.const(-1)


@pytest.mark.parametrize("text", ["X + X^2", "1 + X + X^2", "1 + X^2", "X + X^3"])
def test_n1_against_binomial_oracle(text):
    spec = ProblemSpec.from_strings(1, [text])
    for N in range(3):
        exact = value_general(spec, [N]).numeric()
        oracle = n1_binomial_continuation(parse_poly(text, 1), -N)
        assert abs(exact - oracle.value) < 1e-6, (text, N)


def test_quadratic_d2_all_paths():
    expected = ValueExpr.const(Fraction(1, 4)) + ValueExpr.pi_power(2, Fraction(1, 24))
    assert value_general(QUAD_D2, [0, 0]) == expected
    assert value_d2(QUAD_D2, [0, 0]) == expected
    assert value_d2(QUAD_D2, [0, 0], variant="simplified") == expected


def test_simplified_variant_agrees():
    for N in itertools.product(range(4), repeat=2):
        g = value_general(QUAD_D2, N)
        assert value_d2(QUAD_D2, N) == g
        assert value_d2(QUAD_D2, N, variant="simplified") == g


def test_simplified_variant_shape():
    spec = ProblemSpec.from_strings(2, ["1", "1 + X2 + X1*X2^3"], ["1/2"])
    with pytest.raises(WrongShape):
        value_d2(spec, [0, 0], variant="simplified")


def test_d1_golden():
    spec = ProblemSpec.from_strings(2, ["X1", "X1 + X1*X2"], ["1/2"])
    assert value_d1(spec, [0, 0]) == Fraction(3, 4)
    assert value_general(spec, [0, 0]) == Fraction(3, 4)


def test_d1_delta_point():
    spec = ProblemSpec.from_strings(2, ["X1", "X1 + X1*X2"], ["1/2"])
    assert delta_point_d1(spec, [0, 2]).args == (0, -3, 1)
    spec2 = ProblemSpec.from_strings(2, ["X1", "X1 + X1*X2^2"], ["1/2"])
    with pytest.raises(UnsupportedArgument):
        delta_point_d1(spec2, [0, 0])


def test_no_simplify_keeps_lerch_atoms():
    raw = value_general(QUAD_D2, [0, 0], simplify=False)
    assert raw.lerch_atoms
    assert abs(raw.numeric() - value_general(QUAD_D2, [0, 0]).numeric()) < 1e-12


def test_trace_is_deterministic():
    t1, t2 = [], []
    value_general(QUAD_D2, [1, 2], trace=t1)
    value_general(QUAD_D2, [1, 2], trace=t2)
    assert t1 == t2
    assert {row["sum"] for row in t1} == {"first", "second"}
    assert [row["term"] for row in t1] == list(range(len(t1)))


def test_value_auto_checks():
    value, checks = value_auto(QUAD_D2, [1, 1])
    assert checks == {"d2": True, "d2-simplified": True}
    assert value == value_general(QUAD_D2, [1, 1])


def test_d0_branch():
    spec = ProblemSpec.from_strings(3, ["X1 + X2", "X3^2 + X1*X2*X3^2"], ["1/3", "1/4"])
    assert spec.d == 0
    for N in itertools.product(range(3), repeat=2):
        z = zeta_neg(2 * N[1])
        expected = z * dc_value_nonpos(spec.dc_polys, list(N), spec.twists)
        assert value_general(spec, N) == ValueExpr.const(expected)
        if N[1] >= 1:
            assert value_general(spec, N).is_zero()


@given(st.integers(min_value=0, max_value=10_000))
def test_d0_branch_random(seed):
    rng = random.Random(seed)
    a0 = rng.randint(1, 3)
    spec = rand_spec(rng, (a0,))
    for N in itertools.product(range(3), repeat=spec.T):
        expected = zeta_neg(a0 * N[-1]) * dc_value_nonpos(spec.dc_polys, list(N), spec.twists)
        got = value_general(spec, N)
        assert got == ValueExpr.const(expected)
        if a0 * N[-1] >= 2 and a0 * N[-1] % 2 == 0:
            assert got.is_zero()


def test_first_sum_extension_by_gamma_limit():
    # N_T! / (Gamma(N_T - |k| + 1) prod k_j!) vanishes once |k| > N_T, so the
    # multinomial's restricted range loses nothing
    for N_T in range(6):
        for k in itertools.product(range(N_T + 3), repeat=2):
            if sum(k) <= N_T:
                continue
            with pytest.raises(PartsMismatch):
                multinomial(N_T, list(k) + [N_T - sum(k)])
            ratio = mpmath.factorial(N_T) * mpmath.rgamma(N_T - sum(k) + 1)
            assert ratio == 0


@given(st.integers(min_value=0, max_value=10_000))
def test_cross_path_d1_random(seed):
    rng = random.Random(seed)
    spec = rand_spec(rng, (0, rng.choice([1, 2])))
    for N in itertools.product(range(3), repeat=spec.T):
        assert value_d1(spec, N) == value_general(spec, N)


@given(st.integers(min_value=0, max_value=10_000))
def test_cross_path_d2_random(seed):
    rng = random.Random(seed)
    spec = rand_spec(rng, rng.choice([(0, 1, 2), (0, 1, 3), (0, 2, 3), (0, 1, 4)]))
    for N in itertools.product(range(3), repeat=spec.T):
        assert value_d2(spec, N) == value_general(spec, N)


@given(st.integers(min_value=0, max_value=10_000))
def test_field_membership_random(seed):
    rng = random.Random(seed)
    d = rng.randint(1, 3)
    a0 = rng.randint(0, 2)
    exps = tuple(sorted(rng.sample(range(a0 + 1, a0 + 5), d)))
    spec = rand_spec(rng, (a0,) + exps, max_n=2, max_T=2, const_last=True)
    for N in itertools.product(range(3), repeat=spec.T):
        v = value_general(spec, N)
        assert v.is_constant()


def test_untwisted_n1_matches_mpmath_for_monomial():
    # P = c X^a: zeta_1(s; cX^a) = c^{-s} zeta(a s)
    spec = ProblemSpec.from_strings(1, ["3*X^2"])
    for N in range(5):
        ref = 3.0**N * float(mpmath.zeta(-2 * N))
        assert abs(value_general(spec, [N]).numeric() - ref) < 1e-12


def test_constant_polynomials_n1():
    spec = ProblemSpec(1, 2, (MultiPoly.constant(2, 0),), parse_poly("X", 1), ())
    assert value_general(spec, [3, 1]) == ValueExpr.const(8 * zeta_neg(1))


def test_twist_order_mixing():
    spec = ProblemSpec.from_strings(3, ["X1 + X2", "X1 + X2*X3"], ["1/3", "1/4"])
    v = value_general(spec, [1, 1])
    assert v == value_d1(spec, [1, 1])
    assert not v.is_zero()
    assert not v.constant.is_rational()
