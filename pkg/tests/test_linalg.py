"""Exact dense linear algebra over the cyclotomic coefficient ring."""

from fractions import Fraction

from hypothesis import given, settings, strategies as st

from skv.cyclotomic import Cyclo
from skv.linalg import (char_poly, mat_det, mat_identity, mat_mul, mat_scale,
                        mat_sub, mat_trace)


def _mat(rows):
    return [[Cyclo.rational(Fraction(x)) for x in row] for row in rows]


def test_det_small_oracles():
    assert mat_det(_mat([[5]])) == Cyclo.rational(5)
    assert mat_det(_mat([[1, 2], [3, 4]])) == Cyclo.rational(-2)
    assert mat_det(_mat([[0, 1], [1, 0]])) == Cyclo.rational(-1)
    assert mat_det(_mat([[1, 2, 3], [4, 5, 6], [7, 8, 9]])) == Cyclo.zero()


def test_det_with_zero_pivot_needs_swap():
    m = _mat([[0, 2], [3, 0]])
    assert mat_det(m) == Cyclo.rational(-6)


def test_det_over_roots_of_unity():
    i = Cyclo.zeta(4)
    m = [[i, Cyclo.one()], [Cyclo.one(), i]]
    assert mat_det(m) == Cyclo.rational(-2)


def test_char_poly_diagonal():
    m = _mat([[2, 0], [0, 3]])
    # x^2 - 5x + 6, constant term first
    assert char_poly(m) == [Cyclo.rational(6), Cyclo.rational(-5), Cyclo.one()]


def test_char_poly_constant_term_is_det_sign():
    m = _mat([[1, 4], [2, 3]])
    c = char_poly(m)
    assert c[0] == mat_det(m)  # (-1)^2 det
    assert c[1] == -mat_trace(m)


rational_entries = st.fractions(min_value=-3, max_value=3, max_denominator=3)


@settings(max_examples=40, deadline=None)
@given(st.lists(rational_entries, min_size=9, max_size=9),
       st.lists(rational_entries, min_size=9, max_size=9))
def test_det_is_multiplicative(xs, ys):
    a = [[Cyclo.rational(xs[3 * i + j]) for j in range(3)] for i in range(3)]
    b = [[Cyclo.rational(ys[3 * i + j]) for j in range(3)] for i in range(3)]
    assert mat_det(mat_mul(a, b)) == mat_det(a) * mat_det(b)


@settings(max_examples=30, deadline=None)
@given(st.lists(rational_entries, min_size=4, max_size=4))
def test_cayley_hamilton(xs):
    a = [[Cyclo.rational(xs[2 * i + j]) for j in range(2)] for i in range(2)]
    c = char_poly(a)
    acc = [[Cyclo.zero() for _ in range(2)] for _ in range(2)]
    power = mat_identity(2)
    for coeff in c:
        acc = [[acc[i][j] + power[i][j] * coeff for j in range(2)]
               for i in range(2)]
        power = mat_mul(power, a)
    assert all(entry.is_zero() for row in acc for entry in row)


@settings(max_examples=30, deadline=None)
@given(st.lists(rational_entries, min_size=4, max_size=4))
def test_char_poly_evaluates_to_zero_det(xs):
    a = [[Cyclo.rational(xs[2 * i + j]) for j in range(2)] for i in range(2)]
    # det(xI - A) at x = 2 equals char_poly evaluated at 2
    shifted = mat_sub(mat_scale(mat_identity(2), Fraction(2)), a)
    value = sum((c * Fraction(2) ** k for k, c in enumerate(char_poly(a))),
                Cyclo.zero())
    assert mat_det(shifted) == value
