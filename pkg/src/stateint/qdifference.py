"""q-difference structure of F_{A,B}(q, x) = sum_m (-1)^{Am} q^{A m(m+1)/2} x^m / (q;q)_m^B.

* exact reflection F_{A,B}(1/q, x) = F_{B-A,B}(q, x) at rational q;
* the linear equation ((1 - E)^B - (-1)^A q^A x E^A) F = 0 with (E f)(x) = f(qx);
* the induced nonlinear equation for omega(q, x) = F(q, qx)/F(q, x);
* Puiseux solutions of the limiting algebraic (Nahm) equation
  (1 - omega)^B = (-1)^A x omega^A.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

import mpmath as mp

from . import powerseries as ps
from .arith import qpoch
from .qfactor.series import f_ab_coefficients


def _check(A: int, B: int) -> None:
    if not B > A > 0:
        raise ValueError(f"B > A > 0 violated for (A, B) = ({A}, {B})")


@dataclass(frozen=True)
class RationalQSeries:
    coefficients: tuple
    q0: Fraction
    order: int

    def __post_init__(self):
        if not 0 < self.q0 < 1:
            raise ValueError("q0 must be an exact rational in (0, 1)")
        if len(self.coefficients) != self.order + 1:
            raise ValueError("a series of order N needs N + 1 coefficients")


def rational_f_series(A: int, B: int, q0, order: int) -> RationalQSeries:
    q0 = Fraction(q0)
    return RationalQSeries(tuple(f_ab_coefficients(A, B, q0, order)), q0, order)


def reflection_pair(A: int, B: int, q0, order: int) -> tuple[tuple, tuple]:
    """(coefficients of F_{A,B} at 1/q0, coefficients of F_{B-A,B} at q0), exact."""
    _check(A, B)
    q0 = Fraction(q0)
    lhs = tuple(f_ab_coefficients(A, B, 1 / q0, order))
    return lhs, rational_f_series(B - A, B, q0, order).coefficients


def check_reflection(A: int, B: int, q0, order: int) -> bool:
    lhs, rhs = reflection_pair(A, B, q0, order)
    return lhs == rhs


# -- linear q-difference operators ------------------------------------------------

def _direct_coefficients(A: int, B: int, q, order: int) -> list:
    """Coefficients from the closed form, independent of the ratio recursion."""
    return [(-1) ** (A * m) * q ** (A * m * (m + 1) // 2) / qpoch(q, q, m) ** B for m in range(order + 1)]


def apply_operator(terms, coeffs: list, q) -> list:
    """Apply sum c * x^a E^k to a truncated series; ``terms`` holds (c, a, k).

    Coefficient m of x^a E^k f is q^{k(m-a)} f_{m-a}, so every output
    coefficient up to the input order is exact.
    """
    out = []
    for m in range(len(coeffs)):
        acc = 0
        for c, a, k in terms:
            if m - a >= 0:
                acc += c * q ** (k * (m - a)) * coeffs[m - a]
        out.append(acc)
    return out


def fab_operator(A: int, B: int, q) -> list:
    """(1 - E)^B - (-1)^A q^A x E^A as (c, a, k) terms."""
    terms = [((-1) ** j * comb(B, j), 0, j) for j in range(B + 1)]
    terms.append((-((-1) ** A) * q**A, 1, A))
    return terms


def figure_eight_operator(q) -> list:
    """F(q^-1 x) + F(qx) - (2 - x) F(x), forward-shifted by E:
    F(x) + F(q^2 x) - (2 - q x) F(qx)."""
    return [(1, 0, 0), (1, 0, 2), (-2, 0, 1), (q, 1, 1)]


def five_two_operator(q) -> list:
    """F(q^3 x) - (3 - q^2 x) F(q^2 x) + 3 F(qx) - F(x) for F = F_{2,3}."""
    return [(1, 0, 3), (-3, 0, 2), (q**2, 1, 2), (3, 0, 1), (-1, 0, 0)]


def five_two_tilde_operator(q, printed: bool = False) -> list:
    """F~(q^3 x) - 3 F~(q^2 x) + (3 - q x) F~(qx) - F~(x) for F~ = F_{1,3}.

    ``printed=True`` gives the variant with q^2 x in place of q x, which is
    not annihilating (kept to document that it fails).
    """
    c = q**2 if printed else q
    return [(1, 0, 3), (-3, 0, 2), (3, 0, 1), (-c, 1, 1), (-1, 0, 0)]


def operator_residual(terms, A: int, B: int, q, order: int) -> mp.mpf:
    coeffs = _direct_coefficients(A, B, q, order)
    return max(abs(v) for v in apply_operator(terms, coeffs, q))


def check_linear_qdiff(A: int, B: int, q, order: int, tol=None) -> mp.mpf:
    """Max coefficient of ((1 - E)^B - (-1)^A q^A x E^A) F up to x^order."""
    _check(A, B)
    q = mp.mpc(q)
    if abs(q) >= 1:
        raise ValueError("|q| < 1 required")
    res = operator_residual(fab_operator(A, B, q), A, B, q, order)
    if tol is not None and res >= tol:
        raise ArithmeticError(f"q-difference residual {mp.nstr(res, 3)} exceeds {mp.nstr(tol, 3)}")
    return res


# -- omega ------------------------------------------------------------------------

def omega_series(A: int, B: int, q, order: int) -> list:
    """omega(q, x) = F(q, qx)/F(q, x) to x^order."""
    f = f_ab_coefficients(A, B, q, order)
    shifted = [c * q**m for m, c in enumerate(f)]
    return ps.mul(shifted, ps.inv_unit(f, order, one=1, zero=0), order, zero=0)


def omega_products(omega: list, q, n: int, start: int = 0) -> list:
    """prod_{j=start}^{start+n-1} omega(q^j x)."""
    order = len(omega) - 1
    out = [1] + [0] * order
    for j in range(start, start + n):
        out = ps.mul(out, [c * q ** (j * m) for m, c in enumerate(omega)], order, zero=0)
    return out


def omega_nonlinear_check(A: int, B: int, q, order: int, tol=None, first_factor: int = 0) -> mp.mpf:
    """Max coefficient of sum_j (-1)^j C(B,j) omega_j - (-1)^A q^A x omega_A.

    omega_n = prod_{j=0}^{n-1} omega(q^j x), so that F(q^n x) = omega_n F(x).
    ``first_factor=1`` uses prod_{j=1}^{n} instead, which does not satisfy the
    identity; it is exposed only to test that claim.
    """
    _check(A, B)
    q = mp.mpc(q)
    om = omega_series(A, B, q, order)
    total = [0] * (order + 1)
    for j in range(B + 1):
        pj = omega_products(om, q, j, first_factor)
        total = [t + (-1) ** j * comb(B, j) * c for t, c in zip(total, pj)]
    pa = omega_products(om, q, A, first_factor)
    sign = (-1) ** A
    for m in range(1, order + 1):
        total[m] -= sign * q**A * pa[m - 1]
    res = max(abs(v) for v in total)
    if tol is not None and res >= tol:
        raise ArithmeticError(f"omega residual {mp.nstr(res, 3)} exceeds {mp.nstr(tol, 3)}")
    return res


# -- creative telescoping ---------------------------------------------------------

def telescoping_certificate(A: int, B: int, q0, x0, max_m: int = 6) -> dict[str, bool]:
    """Exact checks, at rational q0 and x0, of the term recursions
        (1 - q^{m+1})^B t(m+1, x) = (-1)^A q^{A(m+1)} x t(m, x),
        t(m, q x) = q^m t(m, x),
    and of the eliminated form
        sum_j (-1)^j C(B,j) t(m+1, q^j x) = (-1)^A q^A x t(m, q^A x)
    for 0 <= m <= max_m."""
    _check(A, B)
    q, x = Fraction(q0), Fraction(x0)

    def t(m, xx):
        return Fraction((-1) ** (A * m)) * q ** (A * m * (m + 1) // 2) / qpoch(q, q, m) ** B * xx**m

    ms = range(max_m + 1)
    return {
        "m_recursion": all((1 - q ** (m + 1)) ** B * t(m + 1, x) == (-1) ** A * q ** (A * (m + 1)) * x * t(m, x) for m in ms),
        "x_recursion": all(t(m, q * x) == q**m * t(m, x) for m in ms),
        "telescoped": all(
            sum((-1) ** j * comb(B, j) * t(m + 1, q**j * x) for j in range(B + 1))
            == (-1) ** A * q**A * x * t(m, q**A * x)
            for m in ms
        ),
    }


# -- Nahm equation ----------------------------------------------------------------

def _gbinom(alpha: Fraction, k: int) -> Fraction:
    num = Fraction(1)
    for i in range(k):
        num *= alpha - i
    return num / factorial(k)


@dataclass(frozen=True)
class NahmReport:
    """omega = 1 - u(z), z = zeta_k x^{1/B}, zeta_k = exp(i pi (A + 2k)/B), k = 0..B-1.

    ``u_coefficients[n]`` is the exact rational coefficient of z^n.
    """

    A: int
    B: int
    order: int
    u_coefficients: tuple
    branch_angles: tuple  # (A + 2k)/B, in units of pi
    residual_is_zero: bool

    def branch_root(self, k: int) -> mp.mpc:
        return mp.expjpi(mp.mpf(self.branch_angles[k].numerator) / self.branch_angles[k].denominator)

    def omega(self, k: int, x) -> mp.mpc:
        """Numeric value of branch k at x (principal x^{1/B})."""
        z = self.branch_root(k) * mp.root(mp.mpc(x), self.B)
        return 1 - mp.polyval([mp.mpf(c.numerator) / c.denominator for c in reversed(self.u_coefficients)], z)


def nahm_puiseux(A: int, B: int, order: int) -> NahmReport:
    """Puiseux solutions of (1 - omega)^B = (-1)^A x omega^A with omega(0) = 1.

    With u = 1 - omega and z^B = (-1)^A x the equation is u^B = z^B (1 - u)^A,
    i.e. u = z (1 - u)^{A/B} on each branch of the B-th root.  Lagrange
    inversion gives [z^n] u = (1/n) [u^{n-1}] (1 - u)^{nA/B}
    = (-1)^{n-1} C(nA/B, n-1) / n.  The result is verified by exact
    back-substitution modulo z^{order+1}.
    """
    _check(A, B)
    if order < 1:
        raise ValueError("order must be at least 1")
    u = [Fraction(0)] + [
        Fraction((-1) ** (n - 1)) * _gbinom(Fraction(n * A, B), n - 1) / n for n in range(1, order + 1)
    ]
    one, zero = Fraction(1), Fraction(0)
    lhs = ps.power(u, B, order, one=one, zero=zero)
    one_minus = [one - u[0]] + [-c for c in u[1:]]
    rhs_body = ps.power(one_minus, A, order, one=one, zero=zero)
    rhs = [zero] * B + rhs_body[: order + 1 - B] if order >= B else [zero] * (order + 1)
    residual_zero = all(a == b for a, b in zip(lhs, rhs))
    angles = tuple(Fraction(A + 2 * k, B) for k in range(B))
    return NahmReport(A, B, order, tuple(u), angles, residual_zero)
