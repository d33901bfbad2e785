"""Taylor series of phi_m and phi~_n at x = 0, and the pole expansion of Phi_b.

    phi_m(x)  = (q^{m+1} e^x; q)_inf / (q^{m+1}; q)_inf
    phi~_n(x) = (qt; qt)_inf / (qt e^x; qt)_inf * (qt^-1; qt^-1)_n / (qt^-1 e^x; qt^-1)_n

Two independent routes are provided for the coefficients:

* ``"exp"``: exp(-sum E_l^{(m)} x^l/l!) and exp(sum E~_l^{(n)} x^l/l!);
* ``"product"``: each factor (1 - a e^x)/(1 - a) = 1 - a/(1-a) (e^x - 1) expanded
  and multiplied out, with no E-series involved.
"""
from __future__ import annotations

from math import factorial

import mpmath as mp

from .. import powerseries as ps
from ..arith import ModularPair, eta_ratio, qpoch
from ..faddeev import phi_b, pole_point
from .eseries import default_tol, e_series, e_tilde
from .series import f_ab_coefficients


def _expm1_series(order: int) -> list:
    return [mp.mpf(0)] + [mp.mpf(1) / factorial(j) for j in range(1, order + 1)]


def _factor(c, order: int, em1) -> list:
    """1 - c (e^x - 1)."""
    return [mp.mpc(1)] + [-c * em1[j] for j in range(1, order + 1)]


def _product_factors(coeffs, order: int, invert: bool) -> list:
    em1 = _expm1_series(order)
    out = [mp.mpc(1)] + [mp.mpc(0)] * order
    for c in coeffs:
        f = _factor(c, order, em1)
        if invert:
            f = ps.inv_unit(f, order, one=1, zero=0)
        out = ps.mul(out, f, order, zero=mp.mpc(0))
    return out


def _geometric_coeffs(q, start: int, tol):
    """a/(1-a) for a = q^k, k = start, start+1, ... until |a/(1-a)| < tol."""
    a = q**start
    while True:
        c = a / (1 - a)
        if abs(c) < tol:
            return
        yield c
        a *= q


def phi_m_taylor(m: int, q, order: int, tol=None, method: str = "exp") -> list:
    tol = default_tol() if tol is None else tol
    q = mp.mpc(q)
    if method == "exp":
        expo = [mp.mpc(0)] + [-e_series(l, m, q, tol) / factorial(l) for l in range(1, order + 1)]
        return ps.exp(expo, order, one=mp.mpc(1), zero=mp.mpc(0))
    if method == "product":
        return _product_factors(list(_geometric_coeffs(q, m + 1, tol)), order, invert=False)
    raise ValueError(f"unknown method {method!r}")


def phitilde_n_taylor(n: int, qt, order: int, tol=None, method: str = "exp") -> list:
    tol = default_tol() if tol is None else tol
    qt = mp.mpc(qt)
    if method == "exp":
        expo = [mp.mpc(0)] + [e_tilde(l, n, qt, tol) / factorial(l) for l in range(1, order + 1)]
        return ps.exp(expo, order, one=mp.mpc(1), zero=mp.mpc(0))
    if method == "product":
        # qt^-k/(1 - qt^-k) = -1/(1 - qt^k) for the finite part
        finite = [-1 / (1 - qt**k) for k in range(1, n + 1)]
        infinite = list(_geometric_coeffs(qt, 1, tol))
        return _product_factors(infinite + finite, order, invert=True)
    raise ValueError(f"unknown method {method!r}")


def phi_m_value(x, m: int, q) -> mp.mpc:
    q = mp.mpc(q)
    qm = q ** (m + 1)
    return qpoch(qm * mp.exp(x), q) / qpoch(qm, q)


def phitilde_n_value(x, n: int, qt) -> mp.mpc:
    qt = mp.mpc(qt)
    qi = 1 / qt
    ex = mp.exp(x)
    return qpoch(qt, qt) / qpoch(qt * ex, qt) * qpoch(qi, qi, n) / qpoch(qi * ex, qi, n)


def pole_expansion(x, m: int, n: int, pair: ModularPair) -> mp.mpc:
    """Right side of Phi_b(x + x_{m,n}) = eta-ratio / ((q;q)_m (qt^-1;qt^-1)_n)
    * phi_m(2 pi b x) phi~_n(2 pi x/b) / (1 - e^{2 pi x/b})."""
    with mp.workdps(pair.precision):
        x = mp.mpc(x)
        b = pair.b
        u, v = 2 * mp.pi * b * x, 2 * mp.pi * x / b
        qi = 1 / pair.qt
        pref = eta_ratio(pair) / (qpoch(pair.q, pair.q, m) * qpoch(qi, qi, n))
        return pref * phi_m_value(u, m, pair.q) * phitilde_n_value(v, n, pair.qt) / (1 - mp.exp(v))


def pole_expansion_residual(x, m: int, n: int, pair: ModularPair) -> mp.mpf:
    """Relative residual of the closed form against Phi_b evaluated directly."""
    with mp.workdps(pair.precision):
        lhs = phi_b(mp.mpc(x) + pole_point(pair, m, n), pair)
        rhs = pole_expansion(x, m, n, pair)
        return abs(lhs - rhs) / abs(lhs)


def t_power(A: int, m: int, q) -> mp.mpc:
    """t_m^A(q) = (-1)^{Am} q^{A m(m+1)/2}."""
    return (-1) ** (A * m) * q ** (A * m * (m + 1) // 2)


def decoupling_residual(x, A: int, m: int, n: int, pair: ModularPair) -> mp.mpf:
    """Relative residual of
    e^{-A pi i (x + x_{m,n})^2} = i^A (q/qt)^{A/8} t_m^A(q) t~_n^A(qt)
                                  * e^{-A pi i x^2 + 2 A pi x (b(m+1/2) + b^-1(n+1/2))}
    with t~_n^A(qt) = (-1)^{An} qt^{-A n(n+1)/2}."""
    with mp.workdps(pair.precision):
        x = mp.mpc(x)
        b = pair.b
        lhs = mp.exp(-A * mp.pi * 1j * (x + pole_point(pair, m, n)) ** 2)
        tt = (-1) ** (A * n) * pair.qt_power(-A * n * (n + 1) // 2)
        rhs = (
            mp.mpc(0, 1) ** A
            * pair.ratio_power(-mp.mpf(A) / 8)
            * t_power(A, m, pair.q)
            * tt
            * mp.exp(-A * mp.pi * 1j * x * x + 2 * A * mp.pi * x * (b * (m + mp.mpf(1) / 2) + (n + mp.mpf(1) / 2) / b))
        )
        return abs(lhs - rhs) / abs(lhs)


def tilde_coefficient(A: int, B: int, n: int, qt) -> mp.mpc:
    """t~_n^A(qt) / (qt^-1; qt^-1)_n^B, computed literally with |qt^-1| > 1."""
    qi = 1 / qt
    return (-1) ** (A * n) * qt ** (-(A * n * (n + 1) // 2)) / qpoch(qi, qi, n) ** B


def tilde_coefficient_check(A: int, B: int, n: int, qt) -> mp.mpf:
    """|literal tilde coefficient - F_{B-A,B}(qt) coefficient| relative."""
    lit = tilde_coefficient(A, B, n, qt)
    ref = f_ab_coefficients(B - A, B, mp.mpc(qt), n)[n]
    return abs(lit - ref) / abs(ref)
