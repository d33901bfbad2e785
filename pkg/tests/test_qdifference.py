from fractions import Fraction

import mpmath as mp
import pytest

from stateint.arith import qpoch
from stateint.qdifference import (
    apply_operator,
    check_linear_qdiff,
    check_reflection,
    figure_eight_operator,
    five_two_operator,
    five_two_tilde_operator,
    nahm_puiseux,
    omega_nonlinear_check,
    omega_products,
    omega_series,
    operator_residual,
    rational_f_series,
    reflection_pair,
    telescoping_certificate,
)

RESIDUAL_TOL = mp.mpf(10) ** -30
Q = mp.mpc(1, 1) / 4
Q0S = (Fraction(1, 3), Fraction(2, 5), Fraction(3, 7))
ALL_PAIRS = [(A, B) for B in range(2, 6) for A in range(1, B)]


# -- reflection ----------------------------------------------------------------------


@pytest.mark.parametrize("A, B", ALL_PAIRS)
@pytest.mark.parametrize("q0", Q0S)
def test_reflection_exact(A, B, q0):
    assert check_reflection(A, B, q0, 8)


def test_reflection_12_small_order():
    assert check_reflection(1, 2, Fraction(1, 3), 6)


def test_reflection_23_targets_are_t_of_inverse_q():
    q = Fraction(1, 5)
    lhs, rhs = reflection_pair(2, 3, q, 6)
    # T_n(q) = (-1)^n q^{n(n+1)/2}/(q)_n^3 = t_n(1/q) with t_n(q) = q^{n(n+1)}/(q)_n^3
    for n in range(7):
        T = Fraction((-1) ** n) * q ** (n * (n + 1) // 2) / qpoch(q, q, n) ** 3
        t_inv = (1 / q) ** (n * (n + 1)) / qpoch(1 / q, 1 / q, n) ** 3
        assert rhs[n] == T == t_inv
        assert lhs[n] == rhs[n]


def test_reflection_detects_a_perturbation():
    q0 = Fraction(1, 3)
    lhs, rhs = reflection_pair(2, 3, q0, 6)
    broken = list(rhs)
    broken[4] += Fraction(1, 10**12)
    assert tuple(broken) != lhs


def test_rational_series_validates():
    with pytest.raises(ValueError):
        rational_f_series(1, 2, Fraction(3, 2), 4)


# -- linear q-difference equations ---------------------------------------------------


@pytest.mark.parametrize("A, B", ALL_PAIRS)
def test_linear_equation(A, B):
    assert check_linear_qdiff(A, B, Q, 8) < RESIDUAL_TOL


def test_linear_equation_tol_raises_on_bad_series():
    # a perturbed coefficient list must not be annihilated
    from stateint.qdifference import _direct_coefficients, fab_operator

    coeffs = _direct_coefficients(1, 2, Q, 8)
    coeffs[3] *= 1 + mp.mpf(10) ** -6
    assert max(abs(v) for v in apply_operator(fab_operator(1, 2, Q), coeffs, Q)) > RESIDUAL_TOL


def test_figure_eight_recursion():
    # F(q^-1 x) + F(q x) = (2 - x) F(x) for F = F_{1,2}
    assert operator_residual(figure_eight_operator(Q), 1, 2, Q, 8) < RESIDUAL_TOL


def test_five_two_recursion():
    assert operator_residual(five_two_operator(Q), 2, 3, Q, 8) < RESIDUAL_TOL


def test_five_two_tilde_recursion():
    assert operator_residual(five_two_tilde_operator(Q), 1, 3, Q, 8) < RESIDUAL_TOL


def test_five_two_tilde_printed_variant_fails():
    assert operator_residual(five_two_tilde_operator(Q, printed=True), 1, 3, Q, 8) > mp.mpf(10) ** -3


# -- omega ---------------------------------------------------------------------------


def test_omega_constant_term():
    assert abs(omega_series(2, 3, Q, 6)[0] - 1) < RESIDUAL_TOL


def test_omega_12_at_tenth():
    q = mp.mpf(1) / 10
    om = omega_series(1, 2, q, 6)
    one = omega_products(om, q, 1)
    two = omega_products(om, q, 2)
    # 1 - 2 omega_1 + omega_2 + q x omega_1 = 0
    total = [int(k == 0) - 2 * one[k] + two[k] + (q * one[k - 1] if k else 0) for k in range(7)]
    assert max(abs(v) for v in total) < RESIDUAL_TOL


@pytest.mark.parametrize("A, B", ALL_PAIRS)
def test_omega_equation(A, B):
    assert omega_nonlinear_check(A, B, Q, 8) < RESIDUAL_TOL


def test_omega_shifted_products_fail():
    assert omega_nonlinear_check(1, 2, Q, 8, first_factor=1) > mp.mpf(10) ** -3


# -- creative telescoping -----------------------------------------------------------


@pytest.mark.parametrize("A, B", [(1, 2), (2, 3), (1, 3), (2, 5)])
def test_telescoping_certificate(A, B):
    cert = telescoping_certificate(A, B, Fraction(2, 7), Fraction(3, 11))
    assert cert == {"m_recursion": True, "x_recursion": True, "telescoped": True}


# -- Nahm equation ------------------------------------------------------------------


@pytest.mark.parametrize("A, B", ALL_PAIRS)
def test_nahm_back_substitution(A, B):
    rep = nahm_puiseux(A, B, 10)
    assert rep.residual_is_zero
    assert rep.u_coefficients[0] == 0  # omega(0) = 1 on every branch


def test_nahm_12_coefficients():
    rep = nahm_puiseux(1, 2, 5)
    assert rep.u_coefficients == (0, 1, Fraction(-1, 2), Fraction(1, 8), 0, Fraction(-1, 128))
    assert rep.branch_angles == (Fraction(1, 2), Fraction(3, 2))


@pytest.mark.parametrize("A, B, k", [(1, 2, 0), (1, 2, 1), (2, 3, 2), (1, 4, 3)])
def test_nahm_branch_numerically(A, B, k):
    rep = nahm_puiseux(A, B, 40)
    x = mp.mpf(1) / 1000
    w = rep.omega(k, x)
    assert abs((1 - w) ** B - (-1) ** A * x * w**A) < mp.mpf(10) ** -25


def test_nahm_rejects_bad_pair():
    with pytest.raises(ValueError, match="B > A > 0 violated"):
        nahm_puiseux(2, 1, 4)
