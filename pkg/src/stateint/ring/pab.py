"""The operator polynomial P_{A,B} as an exact formal residue in w.

    P_{A,B} = Res_{w=0} exp((A/2) pihat w^2 + A w (b(d + 1/2) + b^-1(dt + 1/2)))
              * phi(b w)^B * phit(b^-1 w)^B * (b(1 - e^{w/b}))^-B

with phi(w) = exp(-sum d_l w^l/l!) and
phit(w) = exp(-dt w) exp(2 sum_{l even} e_l w^l/l!) exp(-sum dt_l (-w)^l/l!).
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

from .. import powerseries as ps
from .laurent import LaurentSeriesW, TruncationError, series_exp
from .polynomial import (
    ONE,
    ZERO,
    OperatorPolynomial,
    b_power,
    delta,
    delta_l,
    delta_t,
    delta_tl,
    e_gen,
    pihat,
)


def _check_pair(A: int, B: int) -> None:
    if not (isinstance(A, int) and isinstance(B, int)) or not B > A > 0:
        raise ValueError(f"B > A > 0 violated for (A, B) = ({A}, {B})")


def one_minus_exp_inverse(B: int, order: int) -> LaurentSeriesW:
    """(b (1 - e^{w/b}))^-B through w^order.

    With u = w/b, b(1 - e^u) = -w h(u) where h(u) = sum u^k/(k+1)!, so the
    series is (-1)^B w^-B h(w/b)^-B.
    """
    if B < 1:
        raise ValueError("B must be positive")
    if order < -B:
        raise TruncationError(f"order {order} is below the pole order {B}")
    n = order + B
    h = [OperatorPolynomial.constant(Fraction(1, factorial(k + 1))) for k in range(n + 1)]
    hinv = ps.inv_unit(h, n, one=ONE, zero=ZERO)
    body = ps.power(hinv, B, n, one=ONE, zero=ZERO)
    body = ps.rescale(body, b_power(-1))
    sign = -1 if B % 2 else 1
    return LaurentSeriesW(-B, [c * sign for c in body])


def phi_delta_exponent(order: int) -> LaurentSeriesW:
    """-sum_{l=1}^{order} d_l w^l / l!."""
    return LaurentSeriesW(0, [ZERO] + [delta_l(l) * Fraction(-1, factorial(l)) for l in range(1, order + 1)])


def phitilde_delta_exponent(order: int) -> LaurentSeriesW:
    """-dt w + 2 sum_{l even} e_l w^l/l! - sum_l dt_l (-w)^l / l!."""
    coeffs = [ZERO]
    for l in range(1, order + 1):
        c = delta_tl(l) * Fraction(-(-1) ** l, factorial(l))
        if l == 1:
            c = c - delta_t()
        elif l % 2 == 0:
            c = c + e_gen(l) * Fraction(2, factorial(l))
        coeffs.append(c)
    return LaurentSeriesW(0, coeffs)


def phi_delta_series(order: int) -> LaurentSeriesW:
    if order < 1:
        raise ValueError("order must be at least 1")
    return series_exp(phi_delta_exponent(order))


def phitilde_delta_series(order: int) -> LaurentSeriesW:
    if order < 1:
        raise ValueError("order must be at least 1")
    return series_exp(phitilde_delta_exponent(order))


def gaussian_exponent(A: int, order: int) -> LaurentSeriesW:
    """(A/2) pihat w^2 + A w (b d + b/2 + b^-1 dt + b^-1/2)."""
    half = Fraction(1, 2)
    lin = (b_power(1) * (delta() + half) + b_power(-1) * (delta_t() + half)) * A
    coeffs = [ZERO, lin, pihat() * Fraction(A, 2)] + [ZERO] * max(0, order - 2)
    return LaurentSeriesW(0, coeffs[: order + 1])


@lru_cache(maxsize=None)
def compute_PAB(A: int, B: int) -> OperatorPolynomial:
    """P_{A,B}: all regular factors expanded through w^B, so the w^-1 term is exact."""
    _check_pair(A, B)
    order = B
    exponent = (
        gaussian_exponent(A, order)
        + phi_delta_exponent(order).rescale(b_power(1)) * B
        + phitilde_delta_exponent(order).rescale(b_power(-1)) * B
    )
    series = series_exp(exponent) * one_minus_exp_inverse(B, order)
    return series.residue()


def pab_symmetry_check(A: int, B: int) -> bool:
    """Literal equality P_{A,B} == P_{B-A,B}, with no relabelling of generators."""
    _check_pair(A, B)
    return compute_PAB(A, B) == compute_PAB(B - A, B)


def pab_degrees(A: int, B: int) -> tuple[int, set[int]]:
    """(degree in e_2, e_4, ... with deg e_l = l, set of b-exponents)."""
    p = compute_PAB(A, B)
    return p.e_degree(), p.b_exponents()


def degree_bounds_hold(A: int, B: int) -> bool:
    e_deg, b_exps = pab_degrees(A, B)
    return e_deg <= B - 1 and b_exps <= set(range(-B + 1, B, 2))
