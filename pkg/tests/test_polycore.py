from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from neutralstab.errors import DomainError, SingularPencilError
from neutralstab.polycore import (
    I,
    BiPoly,
    CBiPoly,
    CRat,
    CUniPoly,
    PolyMatrix,
    Rat,
    UniPoly,
    det_polymat,
    det_rational,
    pencil_char_poly,
    rat,
    rat_to_str,
    split_real_imag,
    square_free_part,
)

from oracles import perm_det

small_rats = st.fractions(min_value=-5, max_value=5, max_denominator=6)
polys = st.lists(small_rats, min_size=0, max_size=6).map(lambda cs: UniPoly(cs, "z"))


def z(*cs):
    return UniPoly(cs, "z")


# --- rationals ------------------------------------------------------------


def test_decimal_strings_convert_exactly():
    assert rat("0.0005") == Fraction(1, 2000)
    assert rat("-1.25e-3") == Fraction(-1, 800)
    assert rat("1/3") == Fraction(1, 3)
    assert rat(0.1) == rat("0.1")


def test_rat_is_reduced_with_positive_denominator():
    q = rat(Fraction(6, -4))
    assert q.numerator == -3 and q.denominator == 2


@pytest.mark.parametrize("bad", ["abc", "1/0", "nan", ""])
def test_rat_rejects_non_rationals(bad):
    with pytest.raises(DomainError):
        rat(bad)


@pytest.mark.parametrize(
    "value,text", [("0.0005", "0.0005"), ("1/3", "1/3"), ("-2.5", "-2.5"), ("7", "7"), ("-1/800", "-0.00125")]
)
def test_rat_to_str_is_exact(value, text):
    assert rat_to_str(rat(value)) == text
    assert rat(rat_to_str(rat(value))) == rat(value)


def test_crat_field_operations():
    a = CRat("0.5", "-2")
    b = CRat(3, "1/7")
    assert (a * b) / b == a
    assert a - a == 0
    assert I * I == -1
    assert (a + b).conjugate() == a.conjugate() + b.conjugate()


# --- arithmetic -----------------------------------------------------------


def test_difference_of_squares():
    assert z(1, 1) * z(1, -1) == z(1, 0, -1)


def test_multiplication_by_zero():
    assert (z(1, 2, 3) * z()).is_zero
    assert (z(1, 2, 3) * 0).is_zero


def test_square_of_complex_linear():
    p = CUniPoly([CRat("0.9"), CRat(0, "-1.1")], "z")
    assert p * p == CUniPoly([CRat("0.81"), CRat(0, "-1.98"), CRat("-1.21")], "z")


def test_mul_degree_adds():
    p, q = z(1, 2, 3), z(-1, 0, 0, 5)
    assert (p * q).degree == p.degree + q.degree


def test_mismatched_tags_raise():
    with pytest.raises(DomainError):
        z(1, 1) + UniPoly([1, 1], "y")
    with pytest.raises(DomainError):
        z(1, 1) * CUniPoly([1, 1], "z")
    with pytest.raises(DomainError):
        BiPoly([[1]], ("z", "y")) + BiPoly([[1]], ("y", "z"))


def test_exact_division():
    p = z(-1, 0, 1)
    q, r = divmod(p, z(-1, 1))
    assert q == z(1, 1) and r.is_zero
    with pytest.raises(DomainError):
        p.exact_div(z(2, 1))


@settings(max_examples=60, deadline=None)
@given(polys, polys, polys)
def test_distributive_law(p, q, r):
    assert (p + q) * r == p * r + q * r


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_division_identity(p, q):
    if q.is_zero:
        return
    quo, rem = divmod(p, q)
    assert quo * q + rem == p
    assert rem.degree < q.degree


# --- real/imaginary split -------------------------------------------------


def test_split_condition_polynomial():
    d = CUniPoly([CRat("0.81"), CRat(0, "-1.98"), CRat("-1.21")], "z")
    re, im = d.split_real_imag()
    assert re == z("0.81", 0, "-1.21")
    assert im == z(0, "-1.98")


def test_split_real_input():
    p = z(1, 2)
    re, im = split_real_imag(p)
    assert re == p and im.is_zero


def test_split_purely_imaginary():
    p = CUniPoly([I, I], "z")
    re, im = p.split_real_imag()
    assert re.is_zero and im == z(1, 1)


complex_coeffs = st.tuples(small_rats, small_rats).map(lambda t: CRat(t[0], t[1]))


@settings(max_examples=50, deadline=None)
@given(st.lists(st.lists(complex_coeffs, min_size=1, max_size=4), min_size=1, max_size=4))
def test_split_round_trip_bivariate(grid):
    P = CBiPoly(grid)
    re, im = P.split_real_imag()
    assert CBiPoly.from_real_imag(re, im) == P
    assert re.to_complex() + im.to_complex() * I == P


# --- bivariate ------------------------------------------------------------


def test_bipoly_views_and_evaluation():
    P = BiPoly.from_dict({(0, 0): 1, (1, 0): 3, (0, 1): 2, (1, 1): 4})  # 1 + 3z + 2y + 4zy
    assert P.coeffs_in("z") == [UniPoly([1, 2], "y"), UniPoly([3, 4], "y")]
    assert P.coeffs_in("y") == [UniPoly([1, 3], "z"), UniPoly([2, 4], "z")]
    assert P.eval_y(2) == z(5, 11)
    assert P.eval_z(1) == UniPoly([4, 6], "y")
    assert P(rat(1), rat(2)) == 16
    assert (P * P).exact_div(P) == P


def test_bipoly_grid_is_trimmed():
    P = BiPoly([[1, 0, 0], [0, 0, 0]])
    assert P.grid == ((rat(1),),)


# --- determinants ---------------------------------------------------------


def test_diagonal_determinant():
    p, q = z(1, 2), z(0, 3, 1)
    zero = z()
    assert det_polymat([[p, zero], [zero, q]]) == p * q


def test_condition_matrix_determinant():
    m = CUniPoly([1, -I], "z")
    p = CUniPoly([1, I], "z")
    e = m - p * rat("0.1")
    zero = CUniPoly((), "z")
    d = det_polymat(PolyMatrix([[e, zero], [zero, e]]))
    re, im = d.split_real_imag()
    assert re == z("0.81", 0, "-1.21")
    assert im == z(0, "-1.98")


entries = st.lists(st.integers(-3, 3), min_size=1, max_size=3).map(lambda cs: UniPoly(cs, "z"))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(entries, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_det_matches_permutation_expansion(rows):
    assert det_polymat(rows) == perm_det(rows)


@settings(max_examples=15, deadline=None)
@given(st.lists(st.lists(entries, min_size=5, max_size=5), min_size=5, max_size=5))
def test_bareiss_path_matches_permutation_expansion(rows):
    assert det_polymat(rows) == perm_det(rows)


def test_numeric_determinant():
    M = [["0.5", "1"], ["2", "-3"]]
    assert det_rational(M) == rat("-3.5")


# --- pencil ---------------------------------------------------------------


def test_pencil_identity_minus_identity():
    assert pencil_char_poly([[1, 0], [0, 1]], [[-1, 0], [0, -1]]) == UniPoly([1, 2, 1], "λ")


def test_pencil_is_monic_with_eigenvalue_roots():
    P = [["0.8", 0], [0, "0.8"]]
    Q = [[-2, "0.5"], ["0.5", -1]]
    p = pencil_char_poly(P, Q)
    assert p.lc == 1
    assert p.var == "λ"
    lam = sp.Symbol("l")
    ref = sp.Matrix([[-2, sp.Rational(1, 2)], [sp.Rational(1, 2), -1]]) / sp.Rational(4, 5)
    ref_poly = sp.Poly(ref.charpoly(lam).as_expr(), lam)
    assert [sp.Rational(str(c)) for c in reversed(p.coeffs)] == ref_poly.all_coeffs()


def test_pencil_singular():
    with pytest.raises(SingularPencilError):
        pencil_char_poly([[1, 1], [1, 1]], [[1, 0], [0, 1]])


@settings(max_examples=30, deadline=None)
@given(st.lists(st.lists(small_rats, min_size=3, max_size=3), min_size=3, max_size=3))
def test_pencil_matches_cofactor_expansion(Q):
    ident = [[int(i == j) for j in range(3)] for i in range(3)]
    got = pencil_char_poly(ident, Q)
    lam = UniPoly([0, 1], "λ")
    rows = [[lam * ident[i][j] - rat(Q[i][j]) for j in range(3)] for i in range(3)]
    assert got == perm_det(rows)


# --- square-free part -----------------------------------------------------


def test_square_free_double_root():
    assert square_free_part(z(1, -2, 1)) == z(-1, 1)


def test_square_free_already():
    assert square_free_part(z(1, 0, 1)) == z(1, 0, 1)


def test_square_free_mixed():
    p = z(-1, 1) * z(-1, 1) * z(2, 1)
    assert square_free_part(p) == (z(-1, 1) * z(2, 1)).monic()


def test_square_free_zero_raises():
    with pytest.raises(DomainError):
        square_free_part(z())


@settings(max_examples=40, deadline=None)
@given(polys)
def test_coefficients_stay_exact(p):
    q = (p * p + p).derivative()
    assert all(isinstance(c, Rat) for c in q.coeffs)
