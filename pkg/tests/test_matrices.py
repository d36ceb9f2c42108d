import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sp4cert.errors import BothZero, NotUnimodular, ParseError, SingularMatrix
from sp4cert.generators import generator
from sp4cert.groups import GroupLabel
from sp4cert.matrices import (
    Mat2,
    Mat4,
    ext_gcd,
    mat2_from_lists,
    mat2_to_lists,
    mat4_from_lists,
    mat4_to_lists,
    scalar_from_str,
    scalar_to_str,
)
from sp4cert.sampling import SampleSpec, sample

I4 = Mat4.identity()


def rand_int_mat(rng, bound=9):
    return Mat4.from_rows(
        [[rng.randint(-bound, bound) for _ in range(4)] for _ in range(4)]
    )


def test_identity_product():
    assert I4 * I4 == I4


def test_product_matches_commutator_block():
    # M4^-1 M0 M4 M0^-1 at p=3 must be the identity outside the
    # upper-right block ((0,3),(3,9))
    p = 3
    m0, m4 = generator("M0", p), generator("M4", p)
    x = m4.inv() * m0 * m4 * m0.inv()
    expected = Mat4.from_rows(
        [[1, 0, 0, 3], [0, 1, 3, 9], [0, 0, 1, 0], [0, 0, 0, 1]]
    )
    assert x == expected


def test_associativity_seeded():
    rng = random.Random(101)
    for _ in range(50):
        a, b, c = (rand_int_mat(rng) for _ in range(3))
        assert (a * b) * c == a * (b * c)


def test_inverse_identity():
    assert I4.inv() == I4


def test_inverse_of_translation():
    # M0 = 1 + E(1,3) is unipotent; its inverse must satisfy M0*inv = 1
    m0 = generator("M0", 3)
    inv = m0.inv()
    assert m0 * inv == I4
    assert inv == Mat4.from_rows(
        [[1, 0, -1, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    )


def test_duplicated_row_matrix_is_singular():
    # the degenerate shear variant whose rows 1 and 4 coincide
    bad = Mat4.from_rows(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 1, 1, 0], [1, 0, 0, 0]]
    )
    assert bad.det() == 0
    with pytest.raises(SingularMatrix):
        bad.inv()


def test_inverse_exact_on_group_samples():
    for i in range(20):
        m = sample(SampleSpec(GroupLabel.GAMMA_1P, 5, 900 + i, i))
        assert m * m.inv() == I4
        assert m.inv() * m == I4
    # determinant -1 case
    flip = Mat4.diagonal(1, 1, 1, -1)
    assert flip.det() == -1
    assert flip * flip.inv() == I4


def test_det_multiplicative_seeded():
    rng = random.Random(77)
    for _ in range(30):
        a, b = rand_int_mat(rng, 5), rand_int_mat(rng, 5)
        assert (a * b).det() == a.det() * b.det()


def test_rational_entries_stay_reduced():
    m = Mat4.from_rows(
        [
            [Fraction(2, 4), 1, 0, 0],
            [0, 1, 0, 0],
            [0, 0, 1, 0],
            [0, 0, Fraction(-6, 9), 1],
        ]
    )
    prod = m * m
    for row in prod.rows:
        for x in row:
            assert x.denominator > 0
            import math

            assert math.gcd(abs(x.numerator), x.denominator) == 1


def test_ext_gcd_examples():
    g, x, y = ext_gcd(-2, 9)
    assert g == 1 and -2 * x + 9 * y == 1
    assert ext_gcd(1, 0) == (1, 1, 0)
    g, x, y = ext_gcd(6, 4)
    assert g == 2 and 6 * x + 4 * y == 2


def test_ext_gcd_both_zero():
    with pytest.raises(BothZero):
        ext_gcd(0, 0)


def test_ext_gcd_thousand_random_pairs():
    rng = random.Random(5)
    for _ in range(1000):
        a = rng.randint(-10**9, 10**9)
        b = rng.randint(-10**9, 10**9)
        if a == 0 and b == 0:
            b = 1
        g, x, y = ext_gcd(a, b)
        assert g > 0 and a % g == 0 and b % g == 0
        assert a * x + b * y == g


@given(st.integers(-10**30, 10**30), st.integers(-10**30, 10**30))
def test_ext_gcd_contract_hypothesis(a, b):
    if a == 0 and b == 0:
        return
    g, x, y = ext_gcd(a, b)
    assert g > 0
    assert a * x + b * y == g


def test_mat2_arithmetic():
    t = Mat2.of(1, 1, 0, 1)
    u = Mat2.of(1, 0, 1, 1)
    assert t * u == Mat2.of(2, 1, 1, 1)
    assert (t * u).det() == 1
    assert t ** -3 == Mat2.of(1, -3, 0, 1)
    assert t.inv() * t == Mat2.identity()


def test_mat2_inverse_errors():
    with pytest.raises(SingularMatrix):
        Mat2.of(1, 1, 1, 1).inv()
    with pytest.raises(NotUnimodular):
        Mat2.of(2, 0, 0, 1).inv()


def test_scalar_strings_round_trip():
    for text in ("0", "7", "-7", "1/2", "-3/7", "123456789012345678901234567890"):
        assert scalar_to_str(scalar_from_str(text)) == text


@pytest.mark.parametrize(
    "bad", ["", "a", "+3", "01", "1/0", "2/4", "1/-3", "--2", "1.5", " 1"]
)
def test_scalar_strings_rejected(bad):
    with pytest.raises(ParseError):
        scalar_from_str(bad)


def test_mat4_interchange_round_trip():
    m = generator("Lambda", 7) * Mat4.diagonal(1, Fraction(1, 7), 1, 1)
    lists = mat4_to_lists(m)
    assert mat4_from_lists(lists) == m
    # bit-exact: re-serialising gives identical strings
    assert mat4_to_lists(mat4_from_lists(lists)) == lists


def test_mat2_interchange_round_trip():
    m = Mat2.of(12, -5, 7, -3)
    lists = mat2_to_lists(m)
    assert mat2_from_lists(lists) == m


def test_mat2_interchange_rejects_fractions():
    with pytest.raises(ParseError):
        mat2_from_lists([["1/2", "0"], ["0", "1"]])


def test_mat4_interchange_rejects_bad_shape():
    with pytest.raises(ParseError):
        mat4_from_lists([["1", "0", "0"], ["0", "1", "0"]])
