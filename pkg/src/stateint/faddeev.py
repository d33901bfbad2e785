"""Faddeev's quantum dilogarithm Phi_b(x) for Im(b^2) > 0.

Phi_b(x) = (e^{2 pi b (x + c_b)}; q)_inf / (e^{2 pi b^-1 (x - c_b)}; q~)_inf,
evaluated directly from the two products.  Poles sit at
x_{m,n} = c_b + i b m + i n / b for m, n >= 0.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import mpmath as mp

from .arith import ModularPair, qpoch


@dataclass(frozen=True, order=True)
class PoleIndex:
    m: int
    n: int

    def point(self, pair: ModularPair) -> mp.mpc:
        return pole_point(pair, self.m, self.n)


class PoleProximityError(ValueError):
    def __init__(self, index: PoleIndex, distance):
        self.index = index
        self.distance = distance
        super().__init__(
            f"x lies within {mp.nstr(distance, 5)} of the pole x_({index.m},{index.n})"
        )


def pole_point(pair: ModularPair, m: int, n: int) -> mp.mpc:
    with mp.workdps(pair.precision):
        return pair.cb + 1j * pair.b * m + 1j * n / pair.b


def default_exclusion(pair: ModularPair) -> mp.mpf:
    return mp.mpf("1e-3") * abs(pair.b)


def _lattice_coords(z, u, v):
    """Real (s, t) with z = s*u + t*v."""
    det = u.real * v.imag - u.imag * v.real
    s = (z.real * v.imag - z.imag * v.real) / det
    t = (u.real * z.imag - u.imag * z.real) / det
    return s, t


def _near(value, width=2):
    c = int(mp.floor(value)) if mp.isfinite(value) else 0
    return range(max(0, c - width), max(0, c + width + 1) + 1)


def nearest_pole(x, pair: ModularPair) -> tuple[PoleIndex, mp.mpf]:
    """Closest lattice pole to x and its distance.

    Candidates come from windows around the real lattice coordinates of x and
    around its projections onto the two boundary rays m = 0 and n = 0.
    """
    with mp.workdps(pair.precision):
        x = mp.mpc(x)
        u = 1j * pair.b
        v = 1j / pair.b
        z = x - pair.cb
        s, t = _lattice_coords(z, u, v)
        s0 = (z.real * u.real + z.imag * u.imag) / abs(u) ** 2
        t0 = (z.real * v.real + z.imag * v.imag) / abs(v) ** 2
        ms = set(range(3)) | set(_near(s)) | set(_near(s0))
        ns = set(range(3)) | set(_near(t)) | set(_near(t0))
        best = None
        for m, n in itertools.product(sorted(ms), sorted(ns)):
            d = abs(z - m * u - n * v)
            if best is None or d < best[1]:
                best = (PoleIndex(m, n), d)
        return best


def _phi_b_raw(x, pair: ModularPair) -> mp.mpc:
    b = pair.b
    num = qpoch(mp.exp(2 * mp.pi * b * (x + pair.cb)), pair.q)
    den = qpoch(mp.exp(2 * mp.pi / b * (x - pair.cb)), pair.qt)
    return num / den


def phi_b(x, pair: ModularPair, exclusion=None) -> mp.mpc:
    """Phi_b(x) at the pair's precision; raises PoleProximityError near a pole."""
    if exclusion is None:
        exclusion = default_exclusion(pair)
    with mp.workdps(pair.precision):
        x = mp.mpc(x)
        if exclusion > 0:
            idx, d = nearest_pole(x, pair)
            if d <= exclusion:
                raise PoleProximityError(idx, d)
        return _phi_b_raw(x, pair)


def phi_b_at_zero(pair: ModularPair) -> mp.mpc:
    """Closed form Phi_b(0) = q^{1/48} q~^{-1/48} = e^{pi i (b^2 + b^-2)/24}.

    Its square q^{1/24} q~^{-1/24} is the constant in the inversion relation.
    """
    with mp.workdps(pair.precision):
        return pair.q_power(mp.mpf(1) / 48) * pair.qt_power(-mp.mpf(1) / 48)


def inversion_residual(x, pair: ModularPair) -> mp.mpf:
    """Relative residual of Phi_b(x) Phi_b(-x) = e^{pi i x^2} Phi_b(0)^2."""
    with mp.workdps(pair.precision):
        x = mp.mpc(x)
        lhs = phi_b(x, pair) * phi_b(-x, pair)
        rhs = mp.exp(1j * mp.pi * x * x) * phi_b(0, pair) ** 2
        return abs(lhs - rhs) / abs(rhs)


def shift_check(x, pair: ModularPair) -> tuple[mp.mpf, mp.mpf]:
    """Relative residuals of the two unit-shift relations at y = x + c_b.

    Phi_b(y + i b)/Phi_b(y) = 1/(1 - q e^{2 pi b x}) and
    Phi_b(y + i/b)/Phi_b(y) = 1/(1 - q~^{-1} e^{2 pi x/b}).
    """
    with mp.workdps(pair.precision):
        x = mp.mpc(x)
        b = pair.b
        y = x + pair.cb
        base = phi_b(y, pair)
        lhs_b = phi_b(y + 1j * b, pair) / base
        lhs_bi = phi_b(y + 1j / b, pair) / base
        rhs_b = 1 / (1 - pair.q * mp.exp(2 * mp.pi * b * x))
        rhs_bi = 1 / (1 - mp.exp(2 * mp.pi * x / b) / pair.qt)
        return abs(lhs_b - rhs_b) / abs(rhs_b), abs(lhs_bi - rhs_bi) / abs(rhs_bi)


def lattice_window(x, pair: ModularPair) -> int:
    """Side of a brute-force (m, n) window guaranteed to contain the nearest pole."""
    with mp.workdps(pair.precision):
        # a pole at distance <= |x - c_b| has m Re(b) + n Re(1/b) <= 2|x - c_b|
        span = 2 * abs(mp.mpc(x) - pair.cb)
        step = min(pair.b.real, (1 / pair.b).real)
        return int(math.ceil(float(span / step))) + 2
