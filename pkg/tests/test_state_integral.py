import mpmath as mp
import pytest

from stateint.arith import tolerance
from stateint.faddeev import phi_b
from stateint.qfactor import factorized_value
from stateint.quadrature import QuadratureError, tanh_sinh
from stateint.state_integral import (
    ContourError,
    IntegralSpec,
    default_epsilon,
    evaluate,
    integrand,
)

from conftest import PRECISION, pair_for

CROSS_TOL = mp.mpf(10) ** -25


# -- quadrature -------------------------------------------------------------------


def test_tanh_sinh_polynomial():
    res = tanh_sinh(lambda s: 3 * s * s, 2, mp.mpf(10) ** -35)
    assert abs(res.value - 8) < mp.mpf(10) ** -35


def test_tanh_sinh_endpoint_singularity():
    # int_0^1 log(s) ds = -1, singular at 0
    res = tanh_sinh(lambda s: mp.log(s), 1, mp.mpf(10) ** -30)
    assert abs(res.value + 1) < mp.mpf(10) ** -30
    assert res.error < mp.mpf(10) ** -30


def test_tanh_sinh_complex_gaussian():
    L = 12
    res = tanh_sinh(lambda s: mp.exp(-(1 + 1j) * s * s), L, mp.mpf(10) ** -32)
    ref = mp.sqrt(mp.pi / (1 + 1j)) / 2
    assert abs(res.value - ref) < mp.mpf(10) ** -30


def test_tanh_sinh_reports_failure():
    with pytest.raises(QuadratureError):
        tanh_sinh(lambda s: mp.sin(200 * s), 50, mp.mpf(10) ** -35, max_level=4)


def test_tanh_sinh_parallel_map_is_identical():
    from concurrent.futures import ThreadPoolExecutor

    f = lambda s: mp.exp(-s) * mp.cos(s)  # noqa: E731
    serial = tanh_sinh(f, 30, mp.mpf(10) ** -30)
    with ThreadPoolExecutor(4) as pool:
        parallel = tanh_sinh(f, 30, mp.mpf(10) ** -30, mapper=pool.map)
    assert serial.value == parallel.value


# -- integrand and contour --------------------------------------------------------


def test_integrand_at_base_point():
    pair = pair_for("exp(i*pi/4)")
    spec = IntegralSpec(1, 2, pair)
    x = 1j * spec.epsilon
    expected = phi_b(x, pair) ** 2 * mp.exp(-mp.pi * 1j * x * x)
    assert abs(integrand(x, spec) - expected) < tolerance(PRECISION)


@pytest.mark.parametrize("A, B", [(1, 2), (2, 3)])
def test_integrand_decays(A, B):
    pair = pair_for("exp(i*pi/4)")
    spec = IntegralSpec(A, B, pair)
    for s in (20, -20):
        assert abs(integrand(s + 1j * spec.epsilon, spec)) < mp.mpf(10) ** -8
    assert abs(integrand(20 + 1j * spec.epsilon, spec)) < abs(integrand(5 + 1j * spec.epsilon, spec))


def test_default_epsilon():
    pair = pair_for("exp(i*pi/3)")
    assert IntegralSpec(1, 2, pair).epsilon == default_epsilon(pair) == pair.cb.imag / 2


def test_contour_above_pole_rejected():
    pair = pair_for("exp(i*pi/4)")
    with pytest.raises(ContourError):
        IntegralSpec(1, 2, pair, epsilon=pair.cb.imag * 2)


def test_tilt_out_of_range_rejected():
    pair = pair_for("exp(i*pi/4)")
    with pytest.raises(ContourError):
        IntegralSpec(1, 2, pair, tilt=mp.pi / 2)


def test_bad_pair_rejected():
    with pytest.raises(ValueError, match="B > A > 0 violated"):
        IntegralSpec(2, 1, pair_for("exp(i*pi/4)"))


# -- values -----------------------------------------------------------------------


@pytest.mark.parametrize("A, B", [(1, 2), (2, 3)])
def test_matches_factorized_value(A, B):
    pair = pair_for("exp(i*pi/4)")
    res = evaluate(IntegralSpec(A, B, pair))
    ref = factorized_value(A, B, pair)
    assert abs(res.value - ref) / abs(ref) < CROSS_TOL
    assert res.error_estimate < CROSS_TOL


def test_contour_height_independent():
    pair = pair_for("exp(i*pi/4)")
    eps = pair.cb.imag / 4
    low = evaluate(IntegralSpec(1, 2, pair, epsilon=eps))
    high = evaluate(IntegralSpec(1, 2, pair, epsilon=2 * eps))
    assert abs(low.value - high.value) < pair.tol


def test_horizontal_contour_agrees():
    # tilt 0 is the literal line R + i eps; it converges only exponentially,
    # so the comparison runs at 20 digits
    p = 20
    with mp.workdps(p):
        pair = pair_for("exp(i*pi/4)", p)
        flat = evaluate(IntegralSpec(1, 2, pair, tilt=0, target_tol=mp.mpf(10) ** -12))
        tilted = evaluate(IntegralSpec(1, 2, pair, target_tol=mp.mpf(10) ** -12))
        assert abs(flat.value - tilted.value) < mp.mpf(10) ** -11


def test_against_mpmath_quad():
    p = 20
    with mp.workdps(p):
        pair = pair_for("exp(i*pi/4)", p)
        spec = IntegralSpec(2, 3, pair)
        x0 = 1j * spec.epsilon
        # on the horizontal line |integrand| <= C e^{-2 pi eps |s|}, so |s| > 18 is below 1e-17
        ref = mp.quad(lambda s: integrand(s + x0, spec), mp.linspace(-18, 18, 13))
        ours = evaluate(IntegralSpec(2, 3, pair, target_tol=mp.mpf(10) ** -15))
        assert abs(ours.value - ref) < mp.mpf(10) ** -14
