"""Eulerian numbers A_{n,m} (OEIS A008292)."""
from __future__ import annotations

from functools import lru_cache
from math import comb


def _check(n: int, m: int) -> None:
    # A_{0,0} = 1 is included: it is the l = 1 case of sum_r A_{l-1,r} E_{l,r+1} = E_l
    if n == 0 and m == 0:
        return
    if n < 1 or not 0 <= m <= n - 1:
        raise ValueError(f"Eulerian number A_({n},{m}) needs n >= 1 and 0 <= m <= n-1")


@lru_cache(maxsize=None)
def _rec(n: int, m: int) -> int:
    if m < 0 or (n > 0 and m > n - 1) or (n == 0 and m != 0):
        return 0
    if n == 0:
        return 1
    return (n - m) * _rec(n - 1, m - 1) + (m + 1) * _rec(n - 1, m)


def eulerian_recursive(n: int, m: int) -> int:
    _check(n, m)
    return _rec(n, m)


def eulerian_sum(n: int, m: int) -> int:
    """sum_{k=0}^m (-1)^k C(n+1, k) (m+1-k)^n."""
    _check(n, m)
    return sum((-1) ** k * comb(n + 1, k) * (m + 1 - k) ** n for k in range(m + 1))


def eulerian(n: int, m: int) -> int:
    """A_{n,m}; raises if the recursion and the explicit sum ever disagree."""
    a, b = eulerian_recursive(n, m), eulerian_sum(n, m)
    if a != b:
        raise ArithmeticError(f"A_({n},{m}): recursion gives {a}, explicit sum gives {b}")
    return a


def eulerian_row(n: int) -> list[int]:
    return [eulerian(n, m) for m in range(max(n, 1))]
