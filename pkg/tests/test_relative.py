import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from relosc.coeffs import Coefficients, OffsetSeq, make_coefficients, matrix_of, random_coefficients
from relosc.properties import membership_case, monotone_family, with_eigenvalue
from relosc.recurrence import solve_minus, solve_plus
from relosc.relative import (
    MainVariant,
    Orientation,
    PreconditionUnverified,
    certify_order,
    comparison_I_check,
    comparison_II_check,
    concatenation_check,
    corollary_two_nodes_check,
    count_in_interval,
    extension_invariance_check,
    nodes_vs_wronskian_check,
    nodes_vs_wronskian_slack,
    relative_count,
    scaling_invariance_check,
    triangle_check,
    verify_main,
)
from relosc.spectral import count_below, eig_all
from relosc.wronskian import Convention

PM, MP = Orientation.PLUS_MINUS, Orientation.MINUS_PLUS
fracs = st.fractions(-8, 8, max_denominator=16)


def rand(seed, N):
    return random_coefficients(seed, N, (-8, "-1/16"), (-8, 8), random_extension=True)


def test_worked_relative_count(free4):
    assert relative_count(free4, free4, -1, 1, MainVariant.V1, PM) == 1
    reports = verify_main(free4, free4, -1, 1)
    assert len(reports) == 8 and all(r.agree for r in reports)
    assert {r.label for r in reports} >= {"V1 (+,-) #(0,N]", "V2 (-,+) #(0,N)"}


def test_same_lambda_outside_spectrum(free4):
    for v in MainVariant:
        for o in Orientation:
            assert relative_count(free4, free4, Fraction(1, 2), Fraction(1, 2), v, o) == 0


def test_same_lambda_on_eigenvalue(free4):
    assert relative_count(free4, free4, 0, 0, MainVariant.V1, PM) == -1
    assert relative_count(free4, free4, 0, 0, MainVariant.V4, MP) == 1
    assert all(r.agree for r in verify_main(free4, free4, 0, 0))


def test_crafted_two_by_two(two_by_two):
    other = make_coefficients([-1], [Fraction(1, 2), 2])
    for lam1 in (-1, 4, Fraction(7, 3)):
        assert all(r.agree for r in verify_main(two_by_two, other, 4, lam1))
        assert all(r.agree for r in verify_main(two_by_two, two_by_two, 4, lam1))


def test_variant_bindings():
    assert MainVariant.V1.convention(PM) is Convention.LEFT_OPEN
    assert MainVariant.V2.convention(MP) is Convention.OPEN
    assert MainVariant.V3.convention(MP) is Convention.CLOSED
    assert (MainVariant.V4.include0, MainVariant.V4.include1) == (False, True)


def test_count_in_interval(free4):
    assert count_in_interval(free4, -1, 1) == 1
    assert count_in_interval(free4, -10, -3) == 0
    assert count_in_interval(free4, -2, 2, True, True) == 3
    assert count_in_interval(free4, 0, 2, True, False) == 2
    assert count_in_interval(free4, 0, 2, False, False) == 1
    with pytest.raises(ValueError):
        count_in_interval(free4, 1, 1)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 16), fracs, fracs)
def test_main_identity_random(seed, N, lam0, lam1):
    assert all(r.agree for r in verify_main(rand(seed, N), rand(seed + 7, N), lam0, lam1))


def test_membership_cases():
    rng = random.Random(3)
    for i in range(40):
        c0, c1, lam0, lam1 = membership_case(rng, i)
        assert all(r.agree for r in verify_main(c0, c1, lam0, lam1))


def test_with_eigenvalue_really_is():
    rng = random.Random(9)
    for N in (2, 3, 6, 11):
        c = with_eigenvalue(rng, N, Fraction(5, 7))
        J = matrix_of(c)
        assert count_below(J, Fraction(5, 7), True) - count_below(J, Fraction(5, 7)) == 1


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 14), fracs, fracs)
def test_orientation_pairs(seed, N, lam0, lam1):
    c0, c1 = rand(seed, N), rand(seed + 3, N)
    counts = {(r.variant, r.orientation): r.wronskian_count for r in verify_main(c0, c1, lam0, lam1)}
    for v in MainVariant:
        assert counts[v, PM] == counts[v, MP]


def test_triangle_examples(free4):
    c2 = make_coefficients([-1, -2], [1, 0, Fraction(1, 2)])
    assert triangle_check(free4, free4, c2, Fraction(1, 3))
    assert triangle_check(free4, free4, c2, Fraction(1, 3), Convention.LEFT_OPEN)
    with pytest.raises(ValueError):
        triangle_check(free4, free4, c2, 0, Convention.OPEN)


def test_triangle_with_zero_endpoints(free4):
    # lam = 0 is an eigenvalue of the free matrix: W(u0,u1) vanishes at both ends
    c2 = make_coefficients([-1, -2], [1, 0, Fraction(1, 2)])
    assert triangle_check(free4, free4, c2, 0, bcs=("plus", "minus", "minus"))


def test_nodes_vs_wronskian(free4):
    u = solve_minus(free4, 1)
    assert nodes_vs_wronskian_slack(free4, free4, u, u, 0, 4) == 0
    u0, u1 = solve_plus(free4, -1), solve_minus(free4, 1)
    for conv in (Convention.CLOSED, Convention.LEFT_OPEN, Convention.RIGHT_OPEN):
        assert nodes_vs_wronskian_check(free4, free4, u0, u1, 0, 4, conv)


def test_comparison_I(free4):
    c2 = rand(5, 4)
    assert comparison_I_check(free4, c2, c2, Fraction(1, 3))
    lower = c2.shifted(1)
    assert certify_order(c2, lower) == "diagonal-dominance"
    for conv in Convention:
        for o in Orientation:
            assert comparison_I_check(free4, c2, lower, Fraction(-1, 2), conv, o)
    with pytest.raises(PreconditionUnverified):
        comparison_I_check(free4, lower, c2, 0)


def test_psd_certificate():
    # different a's, J1 - J2 = [[1, -1], [-1, 1]] is PSD
    c1 = make_coefficients([-3], [4, 4])
    c2 = make_coefficients([-2], [3, 3])
    assert certify_order(c1, c2) == "psd-difference"
    assert comparison_I_check(make_coefficients([-1], [0, 0]), c1, c2, Fraction(7, 2))


def test_comparison_II_vacuous_flag(free4):
    out = comparison_II_check(free4, free4, free4, Fraction(1, 2))
    assert out.holds and out.vacuous


def test_comparison_II_engineered():
    # b drop at the first and last interior sites, antecedent found by search
    rng = random.Random(0)
    found = 0
    for seed in range(40):
        fam = monotone_family(rng, rand(seed, 6), concentrated=True)
        for k in range(-24, 25):
            out = comparison_II_check(*fam, Fraction(k, 2))
            if not out.vacuous:
                assert out.holds
                found += 1
                break
    assert found > 10


def test_corollary_literal_reading_is_vacuous():
    rng = random.Random(1)
    for seed in range(20):
        fam = monotone_family(rng, rand(seed, 6), concentrated=True)
        for k in range(-12, 13):
            out = corollary_two_nodes_check(*fam, Fraction(k, 2))
            assert out.vacuous
            alt = corollary_two_nodes_check(*fam, Fraction(k, 2), last=4)
            assert alt.holds


def test_concatenation(free4):
    assert concatenation_check(free4, free4, free4, free4, Fraction(1, 3))
    others = [rand(s, 4) for s in (1, 2)]
    assert concatenation_check(free4, free4, *others, -1)
    assert concatenation_check(rand(3, 9), rand(4, 9), rand(5, 9), rand(6, 9), Fraction(-5, 4))


def test_extension_invariance(free4):
    assert extension_invariance_check(free4, free4, -1, 1)
    for a0 in (-1, Fraction(-1, 3), -7):
        other = free4.with_extension(a0=a0)
        assert verify_main(other, other, -1, 1)[0].wronskian_count == 1
    only_bN = free4.with_extension(bN=11)
    assert [r.wronskian_count for r in verify_main(only_bN, free4, -1, 1)] == [1] * 8


def test_scaling_invariance(free4):
    assert scaling_invariance_check(free4, free4, -1, 1)
    assert scaling_invariance_check(rand(1, 7), rand(2, 7), Fraction(1, 3), -2)


def test_mismatched_sizes(free4):
    with pytest.raises(ValueError):
        verify_main(free4, rand(1, 5), 0, 0)
