from fractions import Fraction

import pytest

from relosc.coeffs import (
    CoefficientFormatError,
    InvalidCoefficients,
    InvalidRange,
    LengthMismatch,
    NonNegativeA,
    TooSmall,
    coefficients_from_dict,
    coefficients_from_json,
    coefficients_to_json,
    make_coefficients,
    matrix_of,
    random_coefficients,
    validate,
)
from relosc.scalar import FLOAT


def test_smallest_legal_instance():
    c = make_coefficients([-1, -1, -1], [0, 0])
    assert validate(c) == []
    assert c.N == 2 and c.dim == 1


def test_zero_a_rejected():
    with pytest.raises(InvalidCoefficients) as info:
        make_coefficients([-1, 0, -1, -1], [1, 2, 3])
    assert info.value.issues == [NonNegativeA(1)]


def test_free_instance_valid(free4):
    assert validate(free4) == []


def test_length_and_size_issues():
    with pytest.raises(InvalidCoefficients) as info:
        coefficients_from_dict({"N": 3, "a": ["-1", "-1", "-1"], "b": ["0", "0", "0"]})
    assert any(isinstance(i, LengthMismatch) for i in info.value.issues)
    with pytest.raises(InvalidCoefficients) as info:
        random_coefficients(0, 1)
    assert info.value.issues == [TooSmall(1)]


def test_offset_indexing(free4):
    assert free4.a[0] == -1 and free4.a[4] == -1
    assert free4.b[1] == 0 and free4.b[4] == 0
    with pytest.raises(IndexError):
        free4.b[0]
    with pytest.raises(IndexError):
        free4.a[5]


def test_matrix_views(free4):
    assert matrix_of(make_coefficients([-1, -1, -1], [4, 0])).dense() == [[4]]
    assert matrix_of(free4).dense() == [[0, -1, 0], [-1, 0, -1], [0, -1, 0]]
    J = matrix_of(make_coefficients([-2], [5, 7]))
    assert J.dense() == [[5, -2], [-2, 7]]


def test_matrix_ignores_extension(free4):
    other = free4.with_extension(a0="-1/3", aNm1=-7, aN=-2, bN=5)
    assert matrix_of(other) == matrix_of(free4)
    assert other.extension == {"a0": Fraction(-1, 3), "aNm1": -7, "aN": -2, "bN": 5}


def test_random_reproducible():
    c = random_coefficients(1, 5, (-3, -1), (-2, 2))
    assert validate(c) == []
    assert c == random_coefficients(1, 5, (-3, -1), (-2, 2))
    assert all(-3 <= x <= -1 for x in c.a)
    assert all(-2 <= x <= 2 for x in list(c.b)[:-1])
    assert c != random_coefficients(2, 5, (-3, -1), (-2, 2))


def test_random_bad_range():
    with pytest.raises(InvalidRange):
        random_coefficients(0, 5, (-1, 1))
    with pytest.raises(InvalidRange):
        random_coefficients(0, 5, ("-1/40", "-1/50"), max_den=16)


def test_json_round_trip_lossless():
    c = random_coefficients(3, 6, random_extension=True)
    assert coefficients_from_json(coefficients_to_json(c)) == c


def test_json_errors_and_mode_override():
    with pytest.raises(CoefficientFormatError):
        coefficients_from_json("{nope")
    with pytest.raises(CoefficientFormatError):
        coefficients_from_dict({"N": 2, "a": ["-1"]})
    with pytest.raises(CoefficientFormatError):
        coefficients_from_dict({"N": 2, "a": ["x", "-1", "-1"], "b": ["0", "0"]})
    c = coefficients_from_dict({"N": 2, "a": ["-1/3", "-1", "-1"], "b": ["1/2", "0"]}, mode=FLOAT)
    assert c.mode == FLOAT and c.a[0] == pytest.approx(-1 / 3)


def test_shifted_lowers_b(free4):
    s = free4.shifted(2)
    assert list(s.b) == [-2, -2, -2, -2]
    assert s.a == free4.a
