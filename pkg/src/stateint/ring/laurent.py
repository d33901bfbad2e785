"""Truncated Laurent series in w with OperatorPolynomial coefficients."""
from __future__ import annotations

from .. import powerseries as ps
from .polynomial import ONE, ZERO, OperatorPolynomial


class TruncationError(ValueError):
    pass


class LaurentSeriesW:
    """sum_{k=valuation}^{truncation_order} c_k w^k + O(w^{truncation_order + 1}).

    ``pole_order`` is max(0, -valuation).  Arithmetic tracks the truncation
    order pessimistically.
    """

    __slots__ = ("valuation", "coeffs")

    def __init__(self, valuation: int, coeffs):
        if not coeffs:
            raise TruncationError("a truncated series needs at least one known coefficient")
        self.valuation = valuation
        self.coeffs = tuple(c if isinstance(c, OperatorPolynomial) else OperatorPolynomial.constant(c) for c in coeffs)

    @classmethod
    def from_power_series(cls, coeffs) -> "LaurentSeriesW":
        return cls(0, coeffs)

    @property
    def truncation_order(self) -> int:
        return self.valuation + len(self.coeffs) - 1

    @property
    def pole_order(self) -> int:
        for k, c in zip(range(self.valuation, 0), self.coeffs):
            if c:
                return -k
        return 0

    def coeff(self, k: int) -> OperatorPolynomial:
        if k > self.truncation_order:
            raise TruncationError(f"w^{k} is beyond the truncation order {self.truncation_order}")
        if k < self.valuation:
            return ZERO
        return self.coeffs[k - self.valuation]

    def residue(self) -> OperatorPolynomial:
        return self.coeff(-1)

    def truncate(self, order: int) -> "LaurentSeriesW":
        if order > self.truncation_order:
            raise TruncationError(f"cannot extend truncation order {self.truncation_order} to {order}")
        return LaurentSeriesW(self.valuation, self.coeffs[: order - self.valuation + 1])

    def __mul__(self, other):
        if not isinstance(other, LaurentSeriesW):
            return LaurentSeriesW(self.valuation, [c * other for c in self.coeffs])
        val = self.valuation + other.valuation
        trunc = min(self.truncation_order + other.valuation, other.truncation_order + self.valuation)
        if trunc < val:
            raise TruncationError("product has no known coefficients")
        n = trunc - val
        out = ps.mul(list(self.coeffs), list(other.coeffs), n, zero=ZERO)
        return LaurentSeriesW(val, out)

    __rmul__ = __mul__

    def __add__(self, other: "LaurentSeriesW"):
        val = min(self.valuation, other.valuation)
        trunc = min(self.truncation_order, other.truncation_order)
        return LaurentSeriesW(val, [self.coeff(k) + other.coeff(k) for k in range(val, trunc + 1)])

    def __neg__(self):
        return LaurentSeriesW(self.valuation, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, LaurentSeriesW):
            return NotImplemented
        if self.truncation_order != other.truncation_order:
            return False
        lo = min(self.valuation, other.valuation)
        return all(self.coeff(k) == other.coeff(k) for k in range(lo, self.truncation_order + 1))

    def __repr__(self):
        terms = ", ".join(f"w^{k}: {c}" for k, c in zip(range(self.valuation, self.truncation_order + 1), self.coeffs) if c)
        return f"LaurentSeriesW({terms} + O(w^{self.truncation_order + 1}))"

    def rescale(self, c: OperatorPolynomial) -> "LaurentSeriesW":
        """Substitute w -> c w for a power series (valuation >= 0)."""
        if self.valuation < 0:
            raise ValueError("rescale is only defined for power series")
        full = [ZERO] * self.valuation + list(self.coeffs)
        return LaurentSeriesW(0, ps.rescale(full, c))


def series_mul(a: LaurentSeriesW, b: LaurentSeriesW) -> LaurentSeriesW:
    return a * b


def series_exp(s: LaurentSeriesW) -> LaurentSeriesW:
    """exp(s) for s with no pole and zero w^0 coefficient; exact to s's truncation order."""
    if s.pole_order:
        raise TruncationError("exp of a series with a pole")
    order = s.truncation_order
    if order < 0:
        raise TruncationError("exp needs the w^0 coefficient")
    full = [s.coeff(k) for k in range(0, order + 1)]
    if full[0]:
        raise ValueError("exp needs a zero w^0 coefficient (exp of a polynomial is not in the ring)")
    return LaurentSeriesW(0, ps.exp(full, order, one=ONE, zero=ZERO))


def series_pow(s: LaurentSeriesW, k: int) -> LaurentSeriesW:
    if k < 0:
        raise ValueError("series_pow takes k >= 0")
    if k == 0:
        return LaurentSeriesW(0, [ONE] + [ZERO] * max(0, s.truncation_order))
    result = s
    for _ in range(k - 1):
        result = result * s
    return result
