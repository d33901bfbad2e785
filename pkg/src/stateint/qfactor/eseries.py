"""Lambert-type q-series behind the Taylor coefficients of phi_m and phi~_n.

    E_l^{(m)}(q)     = sum_{s>=1} s^{l-1} q^{s(m+1)} / (1 - q^s)
    E_{l,r}^{(m)}(q) = sum_{k>=m+1} q^{kr} / (1 - q^k)^l
    E_{l,r}^{[n]}(q) = sum_{k=1}^{n} q^{kr} / (1 - q^k)^l        (finite, any q)

and the tilded combinations E~ used for phi~_n.  Infinite sums stop once a
geometric bound on the remaining terms drops below ``tol``.
"""
from __future__ import annotations

import logging
import threading
from math import comb

import mpmath as mp

log = logging.getLogger(__name__)


def default_tol() -> mp.mpf:
    return mp.mpf(10) ** (-mp.mp.dps)


def _tail_sum(term, bound, start: int, tol, what: str):
    """sum_{k>=start} term(k); ``bound(k)`` dominates |term(k)| and is eventually log-concave-ish.

    Stops at the first k where bound(k+1)/(1 - rho) < tol with
    rho = bound(k+2)/bound(k+1) < 1.
    """
    total = mp.mpc(0)
    k = start
    while True:
        total += term(k)
        b1 = bound(k + 1)
        if b1 == 0:
            return total
        rho = bound(k + 2) / b1
        if rho < 1:
            tail = b1 / (1 - rho)
            if tail < tol:
                log.debug("%s: %d terms, tail bound %s", what, k - start + 1, mp.nstr(tail, 3))
                return total
        k += 1
        if k - start > 100000:
            raise ArithmeticError(f"{what} does not converge (|q| too close to 1?)")


def e_series(l: int, m: int, q, tol=None) -> mp.mpc:
    if l < 1 or m < 0:
        raise ValueError("E_l^{(m)} needs l >= 1, m >= 0")
    tol = default_tol() if tol is None else tol
    q = mp.mpc(q)
    aq = abs(q)
    if aq >= 1:
        raise ValueError("E-series need |q| < 1")
    if q == 0:
        return mp.mpc(0)
    qm1 = q ** (m + 1)
    return _tail_sum(
        lambda s: s ** (l - 1) * qm1**s / (1 - q**s),
        lambda s: mp.mpf(s) ** (l - 1) * aq ** (s * (m + 1)) / (1 - aq),
        1,
        tol,
        f"E_{l}^({m})",
    )


def e_lr_series(l: int, r: int, m: int, q, tol=None) -> mp.mpc:
    if not l >= r >= 1 or m < 0:
        raise ValueError("E_{l,r}^{(m)} needs l >= r >= 1, m >= 0")
    tol = default_tol() if tol is None else tol
    q = mp.mpc(q)
    aq = abs(q)
    if aq >= 1:
        raise ValueError("E-series need |q| < 1")
    if q == 0:
        return mp.mpc(0)
    return _tail_sum(
        lambda k: q ** (k * r) / (1 - q**k) ** l,
        lambda k: aq ** (k * r) / (1 - aq) ** l,
        m + 1,
        tol,
        f"E_{l},{r}^({m})",
    )


def lambert_coefficient(l: int, r: int, s: int) -> int:
    """a_{l,s} in x^r/(1-x)^l = sum_s a_{l,s} x^s."""
    return comb(s - r + l - 1, l - 1) if s >= r else 0


def e_lr_via_lambert(l: int, r: int, m: int, q, tol=None) -> mp.mpc:
    """E_{l,r}^{(m)} re-summed as sum_{s>=r} a_{l,s} q^{s(m+1)}/(1 - q^s)."""
    tol = default_tol() if tol is None else tol
    q = mp.mpc(q)
    aq = abs(q)
    if q == 0:
        return mp.mpc(0)
    return _tail_sum(
        lambda s: lambert_coefficient(l, r, s) * q ** (s * (m + 1)) / (1 - q**s),
        lambda s: lambert_coefficient(l, r, s) * aq ** (s * (m + 1)) / (1 - aq),
        r,
        tol,
        f"lambert E_{l},{r}^({m})",
    )


def e_bracket_series(l: int, r: int, n: int, q) -> mp.mpc:
    """E_{l,r}^{[n]}(q), a finite sum valid for any q with q^k != 1."""
    return mp.fsum(q ** (k * r) / (1 - q**k) ** l for k in range(1, n + 1))


def e_tilde(l: int, n: int, qt, tol=None) -> mp.mpc:
    """E~_l^{(n)}: -n + E_1^{(n)} (l = 1), E_l^{(n)} (odd l > 1), 2E_l^{(0)} - E_l^{(n)} (even l)."""
    if l == 1:
        return -n + e_series(1, n, qt, tol)
    if l % 2:
        return e_series(l, n, qt, tol)
    return 2 * e_series(l, 0, qt, tol) - e_series(l, n, qt, tol)


def e_lr_tilde(l: int, r: int, n: int, qt, tol=None) -> mp.mpc:
    if l == 1 and r == 1:
        return -n + e_lr_series(1, 1, n, qt, tol)
    if l == 1:
        raise ValueError("E~_{1,r} is only defined for r = 1")
    if l % 2:
        return e_lr_series(l, r, n, qt, tol)
    return 2 * e_lr_series(l, r, 0, qt, tol) - e_lr_series(l, r, n, qt, tol)


class ESeriesCache:
    """Concurrent memo table of E-values for one fixed q.

    Keys are (kind, l, r, m) with kind in {'E', 'Elr', 'E[]', 'Et'}; r is 0
    where unused.  Values are computed outside the lock and inserted with
    setdefault, so racing writers store the same value once.
    """

    _KINDS = {
        "E": lambda c, l, r, m: e_series(l, m, c.q, c.tol),
        "Elr": lambda c, l, r, m: e_lr_series(l, r, m, c.q, c.tol),
        "E[]": lambda c, l, r, m: e_bracket_series(l, r, m, c.q),
        "Et": lambda c, l, r, m: e_tilde(l, m, c.q, c.tol),
    }

    def __init__(self, q, tol=None, precision: int | None = None):
        self.precision = precision or mp.mp.dps
        with mp.workdps(self.precision):
            self.q = mp.mpc(q)
            self.tol = default_tol() if tol is None else mp.mpf(tol)
        self._memo: dict = {}
        self._lock = threading.Lock()

    def get(self, kind: str, l: int, r: int, m: int) -> mp.mpc:
        key = (kind, l, r, m)
        try:
            return self._memo[key]
        except KeyError:
            pass
        if kind not in self._KINDS:
            raise KeyError(f"unknown E-series kind {kind!r}")
        with mp.workdps(self.precision):
            value = self._KINDS[kind](self, l, r, m)
        with self._lock:
            return self._memo.setdefault(key, value)

    def e(self, l: int, m: int) -> mp.mpc:
        return self.get("E", l, 0, m)

    def e_tilde(self, l: int, n: int) -> mp.mpc:
        return self.get("Et", l, 0, n)

    def __len__(self):
        return len(self._memo)
