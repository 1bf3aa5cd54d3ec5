from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from relosc.coeffs import make_coefficients, matrix_of, random_coefficients
from relosc.recurrence import (
    count_nodes,
    is_node,
    residuals,
    solve_custom,
    solve_minus,
    solve_plus,
    step_backward,
    step_forward,
)
from relosc.spectral import is_eigenvalue


def test_step_forward_examples(free4):
    assert step_forward(free4, 1, 1, 0, 1) == -1
    # u(n+1) = -u(n-1) - z u(n); matches the backward path s_+(-1) = (1, 0, -1, ...)
    assert step_forward(free4, -1, 1, 1, 0) == -1
    with pytest.raises(ValueError):
        step_forward(free4, 0, 1, 0, 0)


def test_step_backward_inverts_forward(free4):
    nxt = step_forward(free4, Fraction(1, 3), 2, 2, -5)
    assert step_backward(free4, Fraction(1, 3), 2, -5, nxt) == 2


def test_solve_minus_worked(free4):
    u = solve_minus(free4, 1)
    assert u.values == (0, 1, -1, 0, 1, -1)
    assert u.bc_tag == "minus"


def test_solve_plus_worked(free4):
    u = solve_plus(free4, -1)
    assert u.values == (1, 0, -1, -1, 0, 1)
    assert u[4] == 0 and u[5] == 1


def test_one_by_one_eigenvalue():
    c = make_coefficients([-1, -1, -1], [Fraction(7, 3), 0])
    assert solve_minus(c, Fraction(7, 3))[2] == 0
    assert solve_plus(c, Fraction(7, 3))[0] == 0


def test_plus_vanishes_at_zero_on_eigenvalue(two_by_two):
    for lam in (-1, 4):
        assert is_eigenvalue(matrix_of(two_by_two), lam)
        assert solve_plus(two_by_two, lam)[0] == 0
        assert solve_minus(two_by_two, lam)[3] == 0


def test_nodes_worked(free4):
    u = solve_minus(free4, 1)
    assert is_node(free4, u, 1)
    assert not is_node(free4, u, 2)
    assert is_node(free4, u, 3)
    assert count_nodes(u, 0, 4) == 2
    assert count_nodes(u, 1, 4) == 2


def test_positive_solution_has_no_nodes(free4):
    # below the spectrum s_- stays positive
    u = solve_minus(free4, -3)
    assert all(x > 0 for x in u.values[1:])
    assert count_nodes(u, 0, 5) == 0


def test_scaled(free4):
    u = solve_minus(free4, 1).scaled(-3)
    assert u.values == (0, -3, 3, 0, -3, 3)
    assert count_nodes(u, 0, 4) == 2
    with pytest.raises(ValueError):
        u.scaled(0)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 15), st.fractions(-8, 8, max_denominator=16))
def test_solution_invariants(seed, N, z):
    c = random_coefficients(seed, N, (-8, "-1/16"), (-8, 8), random_extension=True)
    for u in (solve_minus(c, z), solve_plus(c, z), solve_custom(c, z, 2, Fraction(-1, 3))):
        assert all(r == 0 for r in residuals(c, u))
        for n in range(N + 1):
            assert not (u[n] == 0 and u[n + 1] == 0)
        for n in range(1, N + 1):
            if u[n] == 0:
                assert u[n - 1] * u[n + 1] < 0


def test_float_mode_residuals():
    c = random_coefficients(4, 30, mode="float")
    u = solve_minus(c, 0.37)
    assert max(residuals(c, u)) < 1e-13
