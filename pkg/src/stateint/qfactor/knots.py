"""Closed forms for the 4_1 and 5_2 state integrals (I_{1,2} and I_{2,3}).

These deliberately re-implement their q-series from scratch (own Lambert sums
and term ratios) so that they check the general pipeline rather than reuse it.
"""
from __future__ import annotations

from fractions import Fraction

import mpmath as mp

from ..arith import ModularPair, qpoch


def _lambert(q, m: int, tol, power: int = 0):
    """sum_{s>=1} s^power q^{s(m+1)}/(1 - q^s)."""
    total = mp.mpc(0)
    x = q ** (m + 1)
    xs = x
    s = 1
    while True:
        t = s**power * xs / (1 - q**s)
        total += t
        if abs(t) < tol / 1000 and s > power:
            return total
        xs *= x
        s += 1


def _sum_until_small(term, tol):
    total = mp.mpc(0)
    quiet = 0
    m = 0
    while quiet < 2:
        t = term(m)
        total += t
        quiet = quiet + 1 if abs(t) < tol / 1000 else 0
        m += 1
    return total


# -- 4_1 ------------------------------------------------------------------------

def t41(m: int, q):
    """(-1)^m q^{m(m+1)/2}/(q)_m^2; generic over the scalar type."""
    return (-1) ** m * q ** (m * (m + 1) // 2) / qpoch(q, q, m) ** 2


def g41(q, tol):
    return _sum_until_small(lambda m: t41(m, q), tol)


def G41(q, tol):
    return _sum_until_small(lambda m: (1 + 2 * m - 4 * _lambert(q, m, tol)) * t41(m, q), tol)


def knot_41(pair: ModularPair, tol=None) -> mp.mpc:
    """-(i/2) (q/qt)^{1/24} (b G(q) g(qt) - b^-1 G(qt) g(q))."""
    tol = pair.tol if tol is None else tol
    with mp.workdps(pair.precision):
        q, qt, b = pair.q, pair.qt, pair.b
        pref = -0.5j * pair.ratio_power(-mp.mpf(1) / 24)
        return pref * (b * G41(q, tol) * g41(qt, tol) - G41(qt, tol) * g41(q, tol) / b)


def t41_reflection_holds(q0: Fraction, order: int) -> bool:
    """t_n(1/q) == t_n(q) exactly for n <= order."""
    q0 = Fraction(q0)
    return all(t41(n, 1 / q0) == t41(n, q0) for n in range(order + 1))


# -- 5_2 ------------------------------------------------------------------------

def t52(m: int, q):
    """q^{m(m+1)}/(q)_m^3."""
    return q ** (m * (m + 1)) / qpoch(q, q, m) ** 3


def T52(n: int, q):
    """(-1)^n q^{n(n+1)/2}/(q)_n^3."""
    return (-1) ** n * q ** (n * (n + 1) // 2) / qpoch(q, q, n) ** 3


def p_k(k: int, m: int, q, tol):
    if k == 3:
        return 1
    e1 = _lambert(q, m, tol)
    if k == 2:
        return 1 + 2 * m - 3 * e1
    if k == 1:
        e2 = _lambert(q, m, tol, power=1)
        return 1 + 4 * m + 4 * m * m - 6 * e1 - 12 * m * e1 + 9 * e1 * e1 - 3 * e2
    raise ValueError(f"no p_{k}")


def P_k(k: int, n: int, qt, tol):
    if k == 1:
        return 1
    e1 = _lambert(qt, n, tol)
    if k == 2:
        return 1 + 2 * n - 6 * e1
    if k == 3:
        e2 = _lambert(qt, n, tol, power=1)
        e20 = _lambert(qt, 0, tol, power=1)
        return -n - n * n - 6 * e20 + 3 * e1 + 6 * n * e1 - 9 * e1 * e1 + 3 * e2
    raise ValueError(f"no P_{k}")


def g_k(k: int, q, tol):
    return _sum_until_small(lambda m: p_k(k, m, q, tol) * t52(m, q), tol)


def G_k(k: int, qt, tol):
    return _sum_until_small(lambda n: P_k(k, n, qt, tol) * T52(n, qt), tol)


def knot_52(pair: ModularPair, tol=None) -> mp.mpc:
    """e^{9 pi i/4} (q/qt)^{1/8} (-b^2/2 g1 G1 - g3 G1/(2 pi i) + g2 G2/2 + b^-2/2 g3 G3)."""
    tol = pair.tol if tol is None else tol
    with mp.workdps(pair.precision):
        q, qt, b = pair.q, pair.qt, pair.b
        g = {k: g_k(k, q, tol) for k in (1, 2, 3)}
        G = {k: G_k(k, qt, tol) for k in (1, 2, 3)}
        body = (
            -(b**2) / 2 * g[1] * G[1]
            - g[3] * G[1] / (2j * mp.pi)
            + g[2] * G[2] / 2
            + g[3] * G[3] / (2 * b**2)
        )
        return mp.expj(9 * mp.pi / 4) * pair.ratio_power(-mp.mpf(1) / 8) * body
