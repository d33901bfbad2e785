"""Precision-carrying complex arithmetic and the modular pair (b, q, q~).

All high-precision values are :class:`mpmath.mpc`.  A :class:`ModularPair`
fixes the working precision (in decimal digits) for everything computed
from it; operations run under ``mp.workdps(pair.precision)``.

Fractional powers of q and q~ are always formed from the defining exponents
``log_q = 2*pi*i*b**2`` and ``log_qt = -2*pi*i/b**2``, never from a principal
logarithm of the computed q.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

import mpmath as mp

log = logging.getLogger(__name__)

GUARD_DIGITS = 10
DEFAULT_PRECISION = 40

BigComplex = mp.mpc


class ModularPairError(ValueError):
    """Raised for b outside the factorization regime."""


def tolerance(precision: int) -> mp.mpf:
    """Contract tolerance 10**-(precision - GUARD_DIGITS)."""
    return mp.mpf(10) ** (-(precision - GUARD_DIGITS))


@dataclass(frozen=True)
class ModularPair:
    b: mp.mpc
    q: mp.mpc
    qt: mp.mpc
    cb: mp.mpc
    log_q: mp.mpc
    log_qt: mp.mpc
    precision: int

    @property
    def tol(self) -> mp.mpf:
        return tolerance(self.precision)

    def q_power(self, r) -> mp.mpc:
        """q**r with the exponent convention exp(r * 2*pi*i*b**2)."""
        with mp.workdps(self.precision):
            return mp.exp(r * self.log_q)

    def qt_power(self, r) -> mp.mpc:
        """q~**r with the exponent convention exp(-r * 2*pi*i/b**2)."""
        with mp.workdps(self.precision):
            return mp.exp(r * self.log_qt)

    def ratio_power(self, r) -> mp.mpc:
        """(q~/q)**r."""
        with mp.workdps(self.precision):
            return mp.exp(r * (self.log_qt - self.log_q))


def make_modular_pair(b, precision: int = DEFAULT_PRECISION) -> ModularPair:
    """Build (b, q, q~, c_b) at ``precision`` digits.

    Requires Im(b**2) > 0 and Re(b) > 0, so that |q| < 1, |q~| < 1 and the
    pole lattice c_b + i*b*m + i*n/b sits in the upper half-plane.
    """
    if precision <= GUARD_DIGITS:
        raise ValueError(f"precision must exceed {GUARD_DIGITS} guard digits")
    with mp.workdps(precision):
        b = mp.mpc(b)
        if b == 0:
            raise ModularPairError("b = 0 is not allowed")
        b2 = b * b
        if b2.imag <= 0:
            raise ModularPairError(f"Im(b^2) = {mp.nstr(b2.imag, 5)} <= 0: outside the factorization regime")
        if b.real <= 0:
            raise ModularPairError("Re(b) <= 0: use -b, which gives the same (q, q~)")
        log_q = 2j * mp.pi * b2
        log_qt = -2j * mp.pi / b2
        return ModularPair(
            b=b,
            q=mp.exp(log_q),
            qt=mp.exp(log_qt),
            cb=0.5j * (b + 1 / b),
            log_q=log_q,
            log_qt=log_qt,
            precision=precision,
        )


def qpoch(a, q, n=None, *, tol=None):
    """q-Pochhammer symbol (a; q)_n = prod_{k<n} (1 - a q^k).

    ``n=None`` means n = infinity and needs |q| < 1; the product is cut once
    |a q^k| drops below ``tol`` (default 10**-(dps + GUARD_DIGITS)).  Finite
    products work for any ring, including :class:`fractions.Fraction`.
    """
    if n is not None:
        p = 1
        t = a
        for _ in range(n):
            p *= 1 - t
            t *= q
        return p
    if abs(q) >= 1:
        raise ValueError("infinite q-Pochhammer symbol needs |q| < 1")
    if tol is None:
        tol = mp.mpf(10) ** (-(mp.mp.dps + GUARD_DIGITS))
    p = mp.mpc(1)
    t = mp.mpc(a)
    aq = abs(q)
    k = 0
    # |a q^k| decreases monotonically, so the first small term ends the product
    while abs(t) >= tol:
        p *= 1 - t
        t *= q
        k += 1
    # remaining factors: |log prod| <= sum |t q^j| (1 + small) <= 2|t|/(1-|q|)
    log.debug("qpoch: %d factors, relative tail bound %s", k, mp.nstr(2 * abs(t) / (1 - aq), 3))
    return p


def eta_ratio(pair: ModularPair) -> mp.mpc:
    """(q; q)_inf / (q~; q~)_inf."""
    with mp.workdps(pair.precision):
        return qpoch(pair.q, pair.q) / qpoch(pair.qt, pair.qt)


def eta_ratio_closed_form(pair: ModularPair) -> mp.mpc:
    """e^{pi i/4} (q~/q)^{1/24} / b, the value predicted by eta(-1/tau) = sqrt(-i tau) eta(tau)."""
    with mp.workdps(pair.precision):
        return mp.exp(1j * mp.pi / 4) * pair.ratio_power(mp.mpf(1) / 24) / pair.b


def check_eta_modular(pair: ModularPair) -> mp.mpf:
    """Absolute residual |eta_ratio - closed form|."""
    with mp.workdps(pair.precision):
        return abs(eta_ratio(pair) - eta_ratio_closed_form(pair))
