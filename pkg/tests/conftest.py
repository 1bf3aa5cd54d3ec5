from fractions import Fraction

import pytest

from relosc.coeffs import make_coefficients


@pytest.fixture
def free4():
    """N=4, a = -1, b = 0: the 3x3 matrix tridiag(0; -1)."""
    return make_coefficients([-1] * 5, [0] * 4)


@pytest.fixture
def two_by_two():
    """b = (3, 0), a(1) = -2; spectrum {-1, 4}."""
    return make_coefficients([-2], [3, 0])


def F(x):
    return Fraction(x)
