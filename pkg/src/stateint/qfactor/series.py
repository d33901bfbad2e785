"""F_{A,B}(q, x) and the operators delta, delta_k acting on truncated x-series."""
from __future__ import annotations

from dataclasses import dataclass

import mpmath as mp

from .eseries import e_series


def f_ab_coefficients(A: int, B: int, q, order: int) -> list:
    """t(0..order) with t(m) = (-1)^{Am} q^{A m(m+1)/2} / (q;q)_m^B.

    Generic over the scalar type (mpc, Fraction, ...), built from the ratio
    t(m)/t(m-1) = (-1)^A q^{Am} / (1 - q^m)^B.
    """
    sign = -1 if A % 2 else 1
    out = [q**0]
    qm = q**0
    for m in range(1, order + 1):
        qm = qm * q
        out.append(out[-1] * sign * qm**A / (1 - qm) ** B)
    return out


@dataclass(frozen=True)
class TruncatedXSeries:
    coefficients: tuple
    q: mp.mpc
    order: int

    def __post_init__(self):
        if len(self.coefficients) != self.order + 1:
            raise ValueError("a truncated series of order N needs N + 1 coefficients")
        if abs(self.q) >= 1:
            raise ValueError("|q| < 1 required")

    def __getitem__(self, m: int):
        return self.coefficients[m]

    def map_coefficients(self, fn) -> "TruncatedXSeries":
        return TruncatedXSeries(tuple(fn(m, c) for m, c in enumerate(self.coefficients)), self.q, self.order)

    def scale_x(self, c) -> "TruncatedXSeries":
        """x -> c x."""
        return self.map_coefficients(lambda m, a: a * c**m)

    def __call__(self, x):
        return mp.polyval(list(reversed(self.coefficients)), x)


def f_ab_series(A: int, B: int, q, order: int) -> TruncatedXSeries:
    if not B > A > 0:
        raise ValueError(f"B > A > 0 violated for (A, B) = ({A}, {B})")
    q = mp.mpc(q)
    if abs(q) >= 1:
        raise ValueError("F_{A,B}(q, x) needs |q| < 1")
    return TruncatedXSeries(tuple(f_ab_coefficients(A, B, q, order)), q, order)


def delta_action(s: TruncatedXSeries) -> TruncatedXSeries:
    """delta = x d/dx."""
    return s.map_coefficients(lambda m, c: m * c)


def delta_k_action(k: int, s: TruncatedXSeries, tail_tol) -> TruncatedXSeries:
    """delta_k F = sum_s s^{k-1} q^s/(1-q^s) F(q^s x), i.e. x^m -> E_k^{(m)}(q) x^m."""
    if k < 1:
        raise ValueError("delta_k needs k >= 1")
    return s.map_coefficients(lambda m, c: e_series(k, m, s.q, tail_tol) * c)
