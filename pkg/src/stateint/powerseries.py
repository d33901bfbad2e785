"""Truncated power series as plain lists, generic over the coefficient ring.

Coefficients need ``+``, ``*`` and division by a Python int; the ring's unit
is passed explicitly.  A list ``a`` of length N+1 stands for
a[0] + a[1] x + ... + a[N] x^N + O(x^{N+1}).
"""
from __future__ import annotations


def mul(a, b, order, zero=0):
    out = [zero] * (order + 1)
    for i, ai in enumerate(a[: order + 1]):
        if _is_zero(ai):
            continue
        for j, bj in enumerate(b[: order + 1 - i]):
            out[i + j] = out[i + j] + ai * bj
    return out


def exp(a, order, one=1, zero=0):
    """exp(a) for a with zero constant term, via n f_n = sum_k k a_k f_{n-k}."""
    if not _is_zero(a[0]):
        raise ValueError("exp needs a series with zero constant term")
    a = list(a) + [zero] * (order + 1 - len(a))
    f = [one] + [zero] * order
    for n in range(1, order + 1):
        acc = zero
        for k in range(1, n + 1):
            if not _is_zero(a[k]):
                acc = acc + (a[k] * f[n - k]) * k
        f[n] = acc / n
    return f


def inv_unit(a, order, one=1, zero=0):
    """1/a for a series whose constant term is the unit."""
    if a[0] != one:
        raise ValueError("inv_unit needs constant term 1")
    a = list(a) + [zero] * (order + 1 - len(a))
    f = [one] + [zero] * order
    for n in range(1, order + 1):
        acc = zero
        for k in range(1, n + 1):
            if not _is_zero(a[k]):
                acc = acc + a[k] * f[n - k]
        f[n] = -acc
    return f


def power(a, k, order, one=1, zero=0):
    result = [one] + [zero] * order
    base = list(a[: order + 1]) + [zero] * (order + 1 - len(a))
    while k:
        if k & 1:
            result = mul(result, base, order, zero)
        k >>= 1
        if k:
            base = mul(base, base, order, zero)
    return result


def rescale(a, c):
    """Substitute x -> c x."""
    out = []
    p = None
    for i, ai in enumerate(a):
        p = c if i == 1 else (p * c if i > 1 else None)
        out.append(ai if i == 0 else ai * p)
    return out


def _is_zero(v):
    try:
        return v == 0
    except TypeError:
        return False
