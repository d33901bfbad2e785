"""Exact sparse polynomials in the commuting generators

    d, d1, d2, ...      (delta, delta_l acting on x)
    dt, dt1, dt2, ...   (delta~, delta~_l acting on x~)
    b                   (integer exponent, negative allowed)
    pihat               (1/(2 pi i))
    e2, e4, ...         (e_l(q~) = delta~_l(1))

with :class:`fractions.Fraction` coefficients.  Generators are encoded as
integer codes whose natural order is the canonical generator order, so a
monomial is a sorted tuple of ``(code, exponent)`` pairs.
"""
from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

_D, _DT, _B, _PIHAT, _E = 0, 1000, 2000, 3000, 4000
_NAME = re.compile(r"^(dt|d|e)(\d*)$")


class UnknownGeneratorError(ValueError):
    pass


def gen_code(name: str) -> int:
    if name == "b":
        return _B
    if name == "pihat":
        return _PIHAT
    m = _NAME.match(name)
    if not m:
        raise UnknownGeneratorError(f"unknown generator {name!r}")
    kind, idx = m.group(1), m.group(2)
    if kind == "e":
        if not idx or int(idx) < 2 or int(idx) % 2:
            raise UnknownGeneratorError(f"e_l is only a generator for even l >= 2, got {name!r}")
        return _E + int(idx)
    l = int(idx) if idx else 0
    if idx and l < 1:
        raise UnknownGeneratorError(f"delta index must be positive in {name!r}")
    return (_D if kind == "d" else _DT) + l


def gen_name(code: int) -> str:
    if code == _B:
        return "b"
    if code == _PIHAT:
        return "pihat"
    if code >= _E:
        return f"e{code - _E}"
    if code >= _DT:
        return "dt" if code == _DT else f"dt{code - _DT}"
    return "d" if code == _D else f"d{code}"


def gen_kind(code: int) -> str:
    """One of 'delta', 'delta_l', 'delta~', 'delta~_l', 'b', 'pihat', 'e'."""
    if code == _D:
        return "delta"
    if code < _DT:
        return "delta_l"
    if code == _DT:
        return "delta~"
    if code < _B:
        return "delta~_l"
    return {_B: "b", _PIHAT: "pihat"}.get(code, "e")


def gen_index(code: int) -> int:
    if code < _DT:
        return code
    if code < _B:
        return code - _DT
    if code >= _E:
        return code - _E
    return 0


def _mono_mul(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        ca, cb = a[i][0], b[j][0]
        if ca == cb:
            e = a[i][1] + b[j][1]
            if e:
                out.append((ca, e))
            i += 1
            j += 1
        elif ca < cb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def _coerce(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact coefficient")


class OperatorPolynomial:
    """Immutable element of D_b (x) D~_b with exact rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for mono, c in terms.items():
                c = _coerce(c)
                if c:
                    clean[tuple(mono)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "OperatorPolynomial":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, c) -> "OperatorPolynomial":
        return cls({(): c})

    @classmethod
    def gen(cls, name: str, power: int = 1) -> "OperatorPolynomial":
        code = gen_code(name)
        if power < 0 and code != _B:
            raise ValueError(f"only b may carry a negative exponent, got {name}^{power}")
        return cls({((code, power),) if power else (): 1})

    # -- container-ish -----------------------------------------------------
    def terms(self):
        """(monomial, coefficient) pairs in canonical order."""
        return sorted(self._terms.items(), key=lambda kv: _mono_sort_key(kv[0]))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def coefficient(self, mono: tuple) -> Fraction:
        return self._terms.get(tuple(mono), Fraction(0))

    def generators(self) -> set[str]:
        return {gen_name(c) for mono in self._terms for c, _ in mono}

    # -- arithmetic ----------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, OperatorPolynomial):
            return other
        return OperatorPolynomial.constant(_coerce(other))

    def __add__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return OperatorPolynomial._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return OperatorPolynomial._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, OperatorPolynomial):
            out: dict = {}
            for ma, ca in self._terms.items():
                for mb, cb in other._terms.items():
                    m = _mono_mul(ma, mb)
                    v = out.get(m, 0) + ca * cb
                    if v:
                        out[m] = v
                    else:
                        out.pop(m, None)
            return OperatorPolynomial._raw(out)
        try:
            c = _coerce(other)
        except TypeError:
            return NotImplemented
        if not c:
            return OperatorPolynomial._raw({})
        return OperatorPolynomial._raw({m: v * c for m, v in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = _coerce(other)
        return OperatorPolynomial._raw({m: v / c for m, v in self._terms.items()})

    def __pow__(self, k: int):
        if k < 0:
            if len(self._terms) == 1:
                (mono, c), = self._terms.items()
                if all(code == _B for code, _ in mono):
                    return OperatorPolynomial({tuple((code, e * k) for code, e in mono): c**k})
            raise ValueError("negative powers exist only for monomials in b")
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, OperatorPolynomial):
            return self._terms == other._terms
        try:
            return self._terms == OperatorPolynomial.constant(_coerce(other))._terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- structure -----------------------------------------------------------
    def b_exponents(self) -> set[int]:
        return {dict(m).get(_B, 0) for m in self._terms}

    def weighted_degree(self, weight) -> int:
        """max over monomials of sum weight(code) * exponent (0 for the zero polynomial)."""
        return max((sum(weight(c) * e for c, e in m) for m in self._terms), default=0)

    def e_degree(self) -> int:
        """Degree in e_2, e_4, ... with deg e_l = l."""
        return self.weighted_degree(lambda c: c - _E if c >= _E else 0)

    def substitute(self, values) -> "OperatorPolynomial":
        """Replace generators by exact values (int, Fraction or OperatorPolynomial)."""
        vals = {gen_code(k): v for k, v in values.items()}
        out = ZERO
        for mono, c in self._terms.items():
            term = OperatorPolynomial._raw({(): c})
            keep = []
            for code, e in mono:
                if code in vals:
                    v = vals[code]
                    if isinstance(v, OperatorPolynomial):
                        term = term * v**e
                    else:
                        term = term * Fraction(v) ** e
                else:
                    keep.append((code, e))
            out = out + term * OperatorPolynomial._raw({tuple(keep): Fraction(1)})
        return out

    def evaluate(self, values):
        """Numeric value; ``values`` maps generator names to numbers."""
        vals = {gen_code(k): v for k, v in values.items()}
        total = 0
        for mono, c in self._terms.items():
            t = c.numerator
            for code, e in mono:
                try:
                    t = t * vals[code] ** e
                except KeyError:
                    raise UnknownGeneratorError(f"no value for {gen_name(code)}") from None
            total = total + t / c.denominator
        return total

    # -- text ------------------------------------------------------------------
    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for i, (mono, c) in enumerate(self.terms()):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            factors = [_factor_text(code, e) for code, e in mono]
            if a != 1 or not factors:
                factors.insert(0, str(a))
            body = "*".join(factors)
            if i == 0:
                parts.append(("-" if sign == "-" else "") + body)
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts)

    __str__ = to_text

    def __repr__(self):
        return f"OperatorPolynomial({self.to_text()!r})"

    @classmethod
    def parse(cls, text: str) -> "OperatorPolynomial":
        """Inverse of :meth:`to_text`; also accepts any sum of coef*factor products."""
        s = text.replace(" ", "").replace("^-", "^~")
        if not s:
            raise ValueError("empty polynomial text")
        if s[0] not in "+-":
            s = "+" + s
        out: dict = {}
        for sign, body in re.findall(r"([+-])([^+-]+)", s):
            coef = Fraction(1)
            mono: dict = {}
            for f in body.split("*"):
                if re.fullmatch(r"\d+(/\d+)?", f):
                    coef *= Fraction(f)
                    continue
                name, _, exp = f.partition("^")
                e = int(exp.replace("~", "-")) if exp else 1
                code = gen_code(name)
                mono[code] = mono.get(code, 0) + e
            if sign == "-":
                coef = -coef
            key = tuple(sorted((c, e) for c, e in mono.items() if e))
            out[key] = out.get(key, 0) + coef
        return cls(out)


def _factor_text(code: int, e: int) -> str:
    name = gen_name(code)
    return name if e == 1 else f"{name}^{e}"


def _mono_sort_key(mono: tuple):
    bexp = dict(mono).get(_B, 0)
    rest = tuple((c, e) for c, e in mono if c != _B)
    return (-bexp, sum(e for _, e in rest), rest)


ZERO = OperatorPolynomial()
ONE = OperatorPolynomial.constant(1)


def delta() -> OperatorPolynomial:
    return OperatorPolynomial.gen("d")


def delta_l(l: int) -> OperatorPolynomial:
    return OperatorPolynomial.gen(f"d{l}")


def delta_t() -> OperatorPolynomial:
    return OperatorPolynomial.gen("dt")


def delta_tl(l: int) -> OperatorPolynomial:
    return OperatorPolynomial.gen(f"dt{l}")


def b_power(k: int) -> OperatorPolynomial:
    return OperatorPolynomial.gen("b", k)


def pihat() -> OperatorPolynomial:
    return OperatorPolynomial.gen("pihat")


def e_gen(l: int) -> OperatorPolynomial:
    return OperatorPolynomial.gen(f"e{l}")
