"""The state integral I_{A,B}(b) = int_{R + i eps} Phi_b(x)^B e^{-A pi i x^2} dx.

The contour is split at x0 = i eps into two arms,

    right:  x = x0 + s e^{i theta},     s >= 0
    left:   x = x0 - s e^{-i theta},    s >= 0

Both arms lean upward by the angle theta, which is a Cauchy deformation of
R + i eps as long as no pole of Phi_b is swept over.  For theta > 0 the
integrand decays like exp(-kappa pi (s^2 sin 2theta + 2 eps s cos theta))
(kappa = B - A on the right, A on the left) instead of only exponentially,
so each arm is a short finite interval.  theta = 0 gives the literal
horizontal contour.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import mpmath as mp

from .arith import ModularPair
from .faddeev import _phi_b_raw, phi_b
from .quadrature import QuadratureError, tanh_sinh

log = logging.getLogger(__name__)


class ContourError(ValueError):
    """The requested contour is not a valid deformation of R + i eps."""


def default_epsilon(pair: ModularPair) -> mp.mpf:
    with mp.workdps(pair.precision):
        return pair.cb.imag / 2


def default_tilt(pair: ModularPair) -> mp.mpf:
    """Half the angle between R and the nearest pole ray direction i/b."""
    with mp.workdps(pair.precision):
        return (mp.pi / 2 - mp.arg(pair.b)) / 2


@dataclass(frozen=True)
class IntegralSpec:
    A: int
    B: int
    pair: ModularPair
    epsilon: mp.mpf | None = None
    target_tol: mp.mpf | None = None
    tilt: mp.mpf | None = field(default=None)

    def __post_init__(self):
        if not self.B > self.A > 0:
            raise ValueError(f"B > A > 0 violated for (A, B) = ({self.A}, {self.B})")
        pair = self.pair
        with mp.workdps(pair.precision):
            if self.epsilon is None:
                object.__setattr__(self, "epsilon", default_epsilon(pair))
            if self.target_tol is None:
                object.__setattr__(self, "target_tol", pair.tol)
            if self.tilt is None:
                object.__setattr__(self, "tilt", default_tilt(pair))
            eps, theta = mp.mpf(self.epsilon), mp.mpf(self.tilt)
            object.__setattr__(self, "epsilon", eps)
            object.__setattr__(self, "tilt", theta)
            object.__setattr__(self, "target_tol", mp.mpf(self.target_tol))
            if eps <= 0:
                raise ContourError("epsilon must be positive")
            if self.target_tol <= 0:
                raise ValueError("target_tol must be positive")
            # The poles fill the cone c_b + R>=0 * ib + R>=0 * i/b.  Both arms stay
            # below it iff they are flatter than its edges and start below its apex.
            edge = mp.pi / 2 - mp.arg(pair.b)
            if not 0 <= theta < edge:
                raise ContourError(f"tilt must lie in [0, {mp.nstr(edge, 6)})")
            if pair.cb.imag <= eps + abs(pair.cb.real) * mp.tan(theta):
                raise ContourError(
                    f"epsilon = {mp.nstr(eps, 6)} puts the contour above the pole x_(0,0) = {mp.nstr(pair.cb, 6)}"
                )


class IntegralResult(NamedTuple):
    value: mp.mpc
    error_estimate: mp.mpf


def integrand(x, spec: IntegralSpec) -> mp.mpc:
    """Phi_b(x)^B e^{-A pi i x^2}; raises PoleProximityError near a pole."""
    with mp.workdps(spec.pair.precision):
        x = mp.mpc(x)
        return phi_b(x, spec.pair) ** spec.B * mp.exp(-spec.A * mp.pi * 1j * x * x)


def _raw_integrand(x, spec: IntegralSpec) -> mp.mpc:
    return _phi_b_raw(x, spec.pair) ** spec.B * mp.exp(-spec.A * mp.pi * 1j * x * x)


class _Arm:
    def __init__(self, spec: IntegralSpec, side: int):
        self.spec = spec
        self.x0 = mp.mpc(0, spec.epsilon)
        theta = spec.tilt
        self.direction = mp.expj(theta) if side > 0 else -mp.expj(-theta)
        self.kappa = spec.B - spec.A if side > 0 else spec.A
        self.sin2 = mp.sin(2 * theta)
        self.cos = mp.cos(theta)

    def __call__(self, s):
        return _raw_integrand(self.x0 + s * self.direction, self.spec) * self.direction

    def decay_exponent(self, s):
        return self.kappa * mp.pi * (s * s * self.sin2 + 2 * self.spec.epsilon * s * self.cos)

    def tail_bound(self, L):
        """Bound on |int_L^inf|, treating |f(s)| / gaussian(s) as constant beyond L (factor 2 of slack)."""
        slope = self.kappa * mp.pi * (2 * L * self.sin2 + 2 * self.spec.epsilon * self.cos)
        return 2 * abs(self(L)) / slope

    def length(self, tail_tol):
        """Arm length whose tail bound is below tail_tol."""
        target = -mp.log(tail_tol)
        a = self.kappa * mp.pi * self.sin2
        c = 2 * self.kappa * mp.pi * self.spec.epsilon * self.cos
        L = target / c if a == 0 else (-c + mp.sqrt(c * c + 4 * a * target)) / (2 * a)
        for _ in range(40):
            bound = self.tail_bound(L)
            if bound < tail_tol:
                return L, bound
            L *= mp.mpf("1.25")
        raise QuadratureError("integrand does not decay along the contour; check (A, B) and b")


def evaluate(spec: IntegralSpec, *, max_level: int = 10, mapper: Callable = map) -> IntegralResult:
    """I_{A,B}(b) with |true - value| <= error_estimate <= target_tol (absolute).

    The budget is split evenly between the four pieces: quadrature and tail on
    each of the two arms.
    """
    with mp.workdps(spec.pair.precision):
        quarter = spec.target_tol / 4
        total = mp.mpc(0)
        err = mp.mpf(0)
        for side in (+1, -1):
            arm = _Arm(spec, side)
            L, tail = arm.length(quarter)
            res = tanh_sinh(arm, L, quarter, max_level=max_level, mapper=mapper)
            log.debug(
                "arm %+d: L=%s level=%d nodes=%d quad_err=%s tail=%s",
                side, mp.nstr(L, 5), res.level, res.nodes, mp.nstr(res.error, 3), mp.nstr(tail, 3),
            )
            total += side * res.value
            err += res.error + tail
        if err > spec.target_tol:
            raise QuadratureError(f"error estimate {mp.nstr(err, 3)} exceeds target {mp.nstr(spec.target_tol, 3)}")
        return IntegralResult(total, err)
