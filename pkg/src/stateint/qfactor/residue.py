"""Right-hand side of the factorization: residues R_{m,n} and the double q-series.

Two routes are implemented and kept independent of each other:

* :func:`factorized_value` sums prefactor * R_{m,n} c_m c~_n where R_{m,n} is
  a numeric Laurent residue built from the product-form Taylor series of
  phi_m, phi~_n (no E-series involved);
* :func:`theorem_value` evaluates <P_{A,B}(F F~)> from the exact polynomial
  P_{A,B} through the dictionary d -> m, d_l -> E_l^{(m)}(q), dt -> n,
  dt_l -> E_l^{(n)}(qt), e_l -> E_l^{(0)}(qt), pihat -> 1/(2 pi i).
"""
from __future__ import annotations

import logging
from collections import defaultdict
from functools import lru_cache
from math import factorial

import mpmath as mp

from .. import powerseries as ps
from ..arith import ModularPair, qpoch
from ..ring import OperatorPolynomial, compute_PAB, one_minus_exp_inverse
from ..ring.polynomial import gen_index, gen_kind
from .eseries import ESeriesCache
from .series import f_ab_coefficients
from .taylor import phi_m_taylor, phitilde_n_taylor, tilde_coefficient

log = logging.getLogger(__name__)


class ConvergenceError(ArithmeticError):
    """Terms of a q-series failed to decay; usually a parameter error."""


def _check(A: int, B: int) -> None:
    if not B > A > 0:
        raise ValueError(f"B > A > 0 violated for (A, B) = ({A}, {B})")


def theorem_prefactor(A: int, B: int, pair: ModularPair) -> mp.mpc:
    """(qt/q)^{(B-3A)/24} e^{pi i (B + 2(A+1))/4}."""
    with mp.workdps(pair.precision):
        return pair.ratio_power(mp.mpf(B - 3 * A) / 24) * mp.expj(mp.pi * (B + 2 * (A + 1)) / 4)


@lru_cache(maxsize=64)
def _pole_numeric(B: int, order: int, b: mp.mpc, dps: int) -> list:
    with mp.workdps(dps):
        s = one_minus_exp_inverse(B, order)
        return [c.evaluate({"b": b}) for c in s.coeffs]


class ResidueEngine:
    """Res_{w=0} F_{A,B,m,n}(w) for one (A, B, pair), caching the m- and n-factors.

    F_{A,B,m,n}(w) = U_m(w) V_n(w) K(w) with
        U_m = phi_m(b w)^B e^{A b (m + 1/2) w},
        V_n = phi~_n(w/b)^B e^{A b^-1 (n + 1/2) w},
        K   = e^{A w^2/(4 pi i)} (b(1 - e^{w/b}))^-B.
    ``order`` is the truncation order of the regular factors (B - 1 suffices).
    """

    def __init__(self, A: int, B: int, pair: ModularPair, tol=None, order: int | None = None):
        _check(A, B)
        self.A, self.B, self.pair = A, B, pair
        self.order = B - 1 if order is None else order
        if self.order < B - 1:
            raise ValueError(f"order {self.order} is too small for a pole of order {B}")
        self.tol = pair.tol * mp.mpf(10) ** -10 if tol is None else tol
        self._u: dict = {}
        self._v: dict = {}
        with mp.workdps(pair.precision):
            N = self.order
            pole = _pole_numeric(B, N, pair.b, pair.precision)
            g = [mp.mpc(0)] * (N + 1)
            if N >= 2:
                g[2] = A / (4j * mp.pi)
            gauss = ps.exp(g, N, one=mp.mpc(1), zero=mp.mpc(0))
            # K as a Laurent series with valuation -B
            self._k = ps.mul(pole, gauss, N + B, zero=mp.mpc(0))

    def _exp_linear(self, c) -> list:
        return [c**j / factorial(j) for j in range(self.order + 1)]

    def u(self, m: int) -> list:
        if m not in self._u:
            with mp.workdps(self.pair.precision):
                b, N = self.pair.b, self.order
                phi = phi_m_taylor(m, self.pair.q, N, self.tol, method="product")
                phi = ps.power(ps.rescale(phi, b), self.B, N, one=mp.mpc(1), zero=mp.mpc(0))
                self._u[m] = ps.mul(phi, self._exp_linear(self.A * b * (m + mp.mpf(1) / 2)), N, zero=mp.mpc(0))
        return self._u[m]

    def v(self, n: int) -> list:
        if n not in self._v:
            with mp.workdps(self.pair.precision):
                b, N = self.pair.b, self.order
                phit = phitilde_n_taylor(n, self.pair.qt, N, self.tol, method="product")
                phit = ps.power(ps.rescale(phit, 1 / b), self.B, N, one=mp.mpc(1), zero=mp.mpc(0))
                self._v[n] = ps.mul(phit, self._exp_linear(self.A * (n + mp.mpf(1) / 2) / b), N, zero=mp.mpc(0))
        return self._v[n]

    def residue(self, m: int, n: int) -> mp.mpc:
        with mp.workdps(self.pair.precision):
            uv = ps.mul(self.u(m), self.v(n), self.B - 1, zero=mp.mpc(0))
            # coefficient of w^-1: sum_j uv_j K_{-1-j}, K_k stored at index k + B
            return mp.fsum(uv[j] * self._k[self.B - 1 - j] for j in range(self.B))


def residue_rmn(A: int, B: int, m: int, n: int, pair: ModularPair, tol=None, order: int | None = None) -> mp.mpc:
    return ResidueEngine(A, B, pair, tol, order).residue(m, n)


class _Coefficients:
    """c_m = t_m^A(q)/(q;q)_m^B and c~_n = t~_n^A(qt)/(qt^-1;qt^-1)_n^B, grown on demand."""

    def __init__(self, A: int, B: int, pair: ModularPair):
        self.A, self.B, self.pair = A, B, pair
        self.c: list = []
        self.ct: list = []

    def get(self, m: int):
        with mp.workdps(self.pair.precision):
            while len(self.c) <= m:
                k = len(self.c)
                self.c.append((-1) ** (self.A * k) * self.pair.q_power(self.A * k * (k + 1) // 2) / qpoch(self.pair.q, self.pair.q, k) ** self.B)
            return self.c[m]

    def get_t(self, n: int):
        with mp.workdps(self.pair.precision):
            while len(self.ct) <= n:
                self.ct.append(tilde_coefficient(self.A, self.B, len(self.ct), self.pair.qt))
            return self.ct[n]


def factorized_sum(A: int, B: int, pair: ModularPair, tol=None, max_diagonal: int = 400):
    """(value, tail_estimate, diagonals) of prefactor * sum_{m,n} R_{m,n} c_m c~_n.

    Summed along diagonals m + n = d.  Both c_m and c~_n decay like a Gaussian
    in their index, so once two consecutive diagonals contribute less than
    tol/100 the remainder is bounded by a multiple of the last diagonal.
    """
    _check(A, B)
    tol = pair.tol if tol is None else tol
    with mp.workdps(pair.precision):
        engine = ResidueEngine(A, B, pair)
        coeffs = _Coefficients(A, B, pair)
        total = mp.mpc(0)
        small = 0
        for d in range(max_diagonal + 1):
            terms = [engine.residue(m, d - m) * coeffs.get(m) * coeffs.get_t(d - m) for m in range(d + 1)]
            total += mp.fsum(terms)
            biggest = max(abs(t) for t in terms)
            small = small + 1 if biggest < tol / 100 else 0
            if small >= 2:
                pref = theorem_prefactor(A, B, pair)
                tail = abs(pref) * 2 * (d + 2) * biggest
                log.debug("factorized (%d,%d): %d diagonals, tail %s", A, B, d + 1, mp.nstr(tail, 3))
                return pref * total, tail, d + 1
        raise ConvergenceError(f"double sum for (A, B) = ({A}, {B}) did not decay within {max_diagonal} diagonals")


def factorized_value(A: int, B: int, pair: ModularPair, tol=None) -> mp.mpc:
    return factorized_sum(A, B, pair, tol)[0]


# -- dictionary route -----------------------------------------------------------

def _split(mono: tuple):
    """Split a monomial into (untilded, tilded, scalar) parts."""
    un, ti, sc = [], [], []
    for code, e in mono:
        kind = gen_kind(code)
        if kind in ("delta", "delta_l"):
            un.append((code, e))
        elif kind in ("delta~", "delta~_l"):
            ti.append((code, e))
        else:
            sc.append((code, e))
    return tuple(un), tuple(ti), tuple(sc)


def _mono_value(mono: tuple, index: int, cache: ESeriesCache) -> mp.mpc:
    v = mp.mpc(1)
    for code, e in mono:
        l = gen_index(code)
        v *= (index if l == 0 else cache.e(l, index)) ** e
    return v


def _scalar_value(mono: tuple, pair: ModularPair, qt_cache: ESeriesCache) -> mp.mpc:
    v = mp.mpc(1)
    for code, e in mono:
        kind = gen_kind(code)
        if kind == "b":
            v *= pair.b**e
        elif kind == "pihat":
            v *= (1 / (2j * mp.pi)) ** e
        else:
            v *= qt_cache.e(gen_index(code), 0) ** e
    return v


def _one_sided(monos, coeff_fn, cache: ESeriesCache, tol) -> dict:
    """sum_index mono(index) coeff(index) for every monomial at once."""
    out = {mono: mp.mpc(0) for mono in monos}
    quiet = 0
    k = 0
    while True:
        c = coeff_fn(k)
        biggest = mp.mpf(0)
        for mono in out:
            t = _mono_value(mono, k, cache) * c
            out[mono] += t
            biggest = max(biggest, abs(t))
        quiet = quiet + 1 if biggest < tol / 100 else 0
        if quiet >= 2:
            return out
        k += 1
        if k > 2000:
            raise ConvergenceError("one-sided dictionary sum does not decay")


def bracket(p: OperatorPolynomial, A: int, B: int, pair: ModularPair, tol=None) -> mp.mpc:
    """<p (F_{A,B}(q, x) F~_{A,B}(qt, x~))> at x = x~ = 1 through the dictionary.

    Each monomial factors as scalar * (untilded part) * (tilded part), so the
    double sum collapses into products of one-dimensional sums.
    """
    _check(A, B)
    tol = pair.tol if tol is None else tol
    with mp.workdps(pair.precision):
        q_cache = ESeriesCache(pair.q, tol * mp.mpf(10) ** -10, pair.precision)
        qt_cache = ESeriesCache(pair.qt, tol * mp.mpf(10) ** -10, pair.precision)
        grouped: dict = defaultdict(list)
        for mono, c in p.terms():
            un, ti, sc = _split(mono)
            grouped[(un, ti)].append((c, sc))
        t = _lazy(lambda n: f_ab_coefficients(A, B, pair.q, n))
        tt = _lazy(lambda n: f_ab_coefficients(B - A, B, pair.qt, n))
        left = _one_sided({un for un, _ in grouped}, t, q_cache, tol)
        right = _one_sided({ti for _, ti in grouped}, tt, qt_cache, tol)
        total = mp.mpc(0)
        for (un, ti), scalars in grouped.items():
            s = mp.fsum(mp.mpf(c.numerator) / c.denominator * _scalar_value(sc, pair, qt_cache) for c, sc in scalars)
            total += s * left[un] * right[ti]
        return total


def _lazy(make):
    """Coefficient accessor that extends a cached list in doubling chunks."""
    store: list = []

    def get(k: int):
        nonlocal store
        if k >= len(store):
            store = make(max(2 * k, 8))
        return store[k]

    return get


def theorem_value(A: int, B: int, pair: ModularPair, tol=None) -> mp.mpc:
    """prefactor * <P_{A,B}(F F~)>."""
    with mp.workdps(pair.precision):
        return theorem_prefactor(A, B, pair) * bracket(compute_PAB(A, B), A, B, pair, tol)
