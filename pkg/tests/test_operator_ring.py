from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from stateint.ring import (
    ONE,
    ZERO,
    LaurentSeriesW,
    OperatorPolynomial,
    TruncationError,
    UnknownGeneratorError,
    compute_PAB,
    degree_bounds_hold,
    one_minus_exp_inverse,
    pab_degrees,
    pab_symmetry_check,
    phi_delta_series,
    phitilde_delta_series,
    series_exp,
    series_mul,
    series_pow,
)

from conftest import GOLDEN

P = OperatorPolynomial.parse

# -- polynomial ring --------------------------------------------------------------

_GENS = ["d", "d1", "d2", "dt", "dt1", "b", "pihat", "e2"]


@st.composite
def polys(draw):
    out = ZERO
    for _ in range(draw(st.integers(0, 4))):
        c = Fraction(draw(st.integers(-9, 9)), draw(st.integers(1, 4)))
        term = OperatorPolynomial.constant(c)
        for g in draw(st.lists(st.sampled_from(_GENS), max_size=3)):
            e = draw(st.integers(-2, 2)) if g == "b" else draw(st.integers(1, 2))
            term = term * OperatorPolynomial.gen(g, e)
        out = out + term
    return out


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(x, y, z):
    assert x + y == y + x
    assert x * y == y * x
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + ZERO == x and x * ONE == x
    assert x - x == ZERO


@settings(max_examples=60, deadline=None)
@given(polys())
def test_text_round_trip(x):
    assert P(x.to_text()) == x


def test_b_inverse():
    assert P("b") * P("b^-1") == ONE
    assert (P("b^2") * P("b^-3")).to_text() == "b^-1"


def test_canonical_text_is_order_independent():
    assert P("d1*dt + 1/2*b").to_text() == P("1/2*b + dt*d1").to_text()


def test_unknown_generator():
    with pytest.raises(UnknownGeneratorError):
        P("x7")


def test_evaluate_numeric():
    p = P("2*d*b - 1/2*dt1*b^-1 + e2")
    assert p.evaluate({"d": 3, "b": 2, "dt1": 4, "e2": 5}) == 12 - 1 + 5


# -- Laurent series ----------------------------------------------------------------


def test_exp_of_zero():
    s = series_exp(LaurentSeriesW(0, [ZERO] * 5))
    assert s == LaurentSeriesW(0, [ONE] + [ZERO] * 4)


def test_exp_inverse_pair():
    a = P("d1")
    s = series_mul(series_exp(LaurentSeriesW(0, [ZERO, a, ZERO, ZERO, ZERO])), series_exp(LaurentSeriesW(0, [ZERO, -a, ZERO, ZERO, ZERO])))
    assert s == LaurentSeriesW(0, [ONE] + [ZERO] * 4)


def test_binomial_cube():
    s = series_pow(LaurentSeriesW(0, [ONE, ONE, ZERO, ZERO]), 3)
    assert [c.to_text() for c in s.coeffs] == ["1", "3", "3", "1"]


def test_exp_needs_no_pole():
    with pytest.raises(TruncationError):
        series_exp(LaurentSeriesW(-1, [ONE, ONE]))


def test_pole_series_B2():
    s = one_minus_exp_inverse(2, 1)
    assert s.coeff(-2) == ONE
    assert s.coeff(-1) == -P("b^-1")


def test_pole_series_B3():
    s = one_minus_exp_inverse(3, 1)
    assert s.coeff(-3) == -ONE
    assert s.coeff(-2) == P("3/2*b^-1")
    assert s.coeff(-1) == -P("b^-2")


@pytest.mark.parametrize("B", [1, 2, 3, 4])
def test_pole_series_against_sympy(B):
    w, b = sp.symbols("w b")
    order = 3
    ref = sp.series((b * (1 - sp.exp(w / b))) ** (-B), w, 0, order + 1).removeO()
    s = one_minus_exp_inverse(B, order)
    for k in range(-B, order + 1):
        expected = sp.simplify(ref.coeff(w, k))
        got = s.coeff(k).evaluate({"b": b})
        assert sp.simplify(got - expected) == 0


def test_phi_series_low_order():
    s = phi_delta_series(3)
    assert s.coeff(0) == ONE
    assert s.coeff(1) == -P("d1")
    assert s.coeff(2) == P("1/2*d1^2 - 1/2*d2")


def test_phitilde_series_low_order():
    s = phitilde_delta_series(3)
    assert s.coeff(0) == ONE
    # first order of exp(-dt w) exp(2 sum e_l w^l/l!) exp(-sum dt_l (-w)^l/l!)
    assert s.coeff(1) == P("-dt + dt1")


# -- P_{A,B} ------------------------------------------------------------------------


def _sympy_pab(A: int, B: int) -> OperatorPolynomial:
    """Residue of the defining product computed with sympy, independent of the ring code.

    Each exponential factor is expanded separately as a truncated Taylor
    polynomial in w, and the pole factor comes from sympy's own series.
    """
    w, b, pihat = sp.symbols("w b pihat")
    d, dt = sp.symbols("d dt")
    N = B - 1  # regular factors are needed through w^(B-1)
    dl = {l: sp.Symbol(f"d{l}") for l in range(1, N + 1)}
    dtl = {l: sp.Symbol(f"dt{l}") for l in range(1, N + 1)}
    el = {l: sp.Symbol(f"e{l}") for l in range(2, N + 1, 2)}

    def trunc(expr):
        poly = sp.Poly(sp.expand(expr), w)
        return sum(c * w**k for (k,), c in poly.terms() if k <= N)

    def texp(x):
        total, term = sp.Integer(1), sp.Integer(1)
        for k in range(1, N + 1):
            term = trunc(term * x) / k
            total += term
        return sp.expand(total)

    factors = [
        texp(A * pihat / 2 * w**2 + A * w * (b * (d + sp.Rational(1, 2)) + (dt + sp.Rational(1, 2)) / b)),
        texp(-B * sum(dl[l] * (b * w) ** l / sp.factorial(l) for l in dl)),
        texp(-B * dt * w / b),
        texp(2 * B * sum(el[l] * (w / b) ** l / sp.factorial(l) for l in el)),
        texp(-B * sum(dtl[l] * (-w / b) ** l / sp.factorial(l) for l in dtl)),
    ]
    regular = sp.Integer(1)
    for f in factors:
        regular = trunc(regular * f)
    pole = sp.series((b * (1 - sp.exp(w / b))) ** (-B), w, 0, 0).removeO()
    res = sp.expand(sum(sp.expand(regular).coeff(w, j) * pole.coeff(w, -1 - j) for j in range(B)))
    out = ZERO
    for term in sp.Add.make_args(res):
        coeff, rest = term.as_coeff_Mul()
        mono = OperatorPolynomial.constant(Fraction(int(sp.numer(coeff)), int(sp.denom(coeff))))
        for sym, e in rest.as_powers_dict().items():
            if sym != 1:
                mono = mono * OperatorPolynomial.gen(str(sym), int(e))
        out = out + mono
    return out


@pytest.mark.parametrize("A, B", [(1, 2), (1, 3), (2, 3), (1, 4), (3, 4)])
def test_pab_against_sympy(A, B):
    assert compute_PAB(A, B) == _sympy_pab(A, B)


def test_p12_closed_form():
    assert compute_PAB(1, 2) == P("1/2*b + d*b - 2*d1*b - 1/2*b^-1 - dt*b^-1 + 2*dt1*b^-1")


def test_p23_golden():
    golden = (GOLDEN / "pab_2_3.txt").read_text().strip()
    assert compute_PAB(2, 3).to_text() == golden


def test_p23_displayed_vs_corrected(displayed_p23):
    assert compute_PAB(2, 3) == displayed_p23["corrected"]
    diff = displayed_p23["verbatim"] - compute_PAB(2, 3)
    # the two transcription slips, and nothing else
    assert diff == P("-3/2*d2*b^2 + 3/2*dt2*b^2 - 3*e2 + 3*e2*b^-2")


def test_pab_deterministic():
    compute_PAB.cache_clear()
    first = compute_PAB(1, 2).to_text()
    compute_PAB.cache_clear()
    assert compute_PAB(1, 2).to_text() == first


def test_pab_rejects_bad_pair():
    with pytest.raises(ValueError, match="B > A > 0 violated"):
        compute_PAB(2, 1)


def test_symmetry_trivial_case():
    assert pab_symmetry_check(1, 2)


@pytest.mark.parametrize("A, B", [(1, 3), (1, 4), (2, 5)])
def test_symmetry_fails(A, B):
    assert not pab_symmetry_check(A, B)


def test_degrees_p34():
    e_deg, b_exps = pab_degrees(3, 4)
    assert e_deg <= 3
    assert b_exps <= {-3, -1, 1, 3}


@pytest.mark.parametrize("B", [2, 3, 4, 5])
def test_degree_bounds(B):
    assert all(degree_bounds_hold(A, B) for A in range(1, B))
