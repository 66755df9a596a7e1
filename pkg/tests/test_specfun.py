"""Special-function layer: oracle comparisons against mpmath plus the
analytic identities (recurrence, Wronskian, small-argument expansions,
modified-function relation) that pin down every branch of the evaluator.
"""

import math

import mpmath as mp
import pytest

from cpsphere import specfun
from cpsphere.errors import PoleError

mp.mp.dps = 40


def mp_j(l, z):
    z = mp.mpmathify(z)
    return complex(mp.sqrt(mp.pi / (2 * z)) * mp.besselj(l + mp.mpf(1) / 2, z))


def mp_h(l, z):
    z = mp.mpmathify(z)
    jv = mp.besselj(l + mp.mpf(1) / 2, z)
    yv = mp.bessely(l + mp.mpf(1) / 2, z)
    return complex(mp.sqrt(mp.pi / (2 * z)) * (jv + 1j * yv))


def rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


# a spread of orders and arguments covering both recurrence directions
SAMPLES = [
    (0, 1.0), (1, 1j), (2, 0.3), (5, 0.01), (10, 2.5), (20, 0.5),
    (40, 1e-3), (50, 30.0), (80, 120.0), (150, 90.0), (200, 400.0),
    (3, 2 + 3j), (12, 5 + 8j), (25, 40j), (60, 10 + 60j), (100, 1000.0),
]


@pytest.mark.parametrize("l,z", SAMPLES)
def test_sph_bessel_j_against_mpmath(l, z):
    assert rel(specfun.sph_bessel_j(l, z), mp_j(l, z)) < 1e-12


@pytest.mark.parametrize("l,z", SAMPLES)
def test_sph_hankel1_against_mpmath(l, z):
    assert rel(specfun.sph_hankel1(l, z), mp_h(l, z)) < 1e-12


def test_j_trivial_values():
    assert specfun.sph_bessel_j(0, 1.0) == pytest.approx(math.sin(1.0), rel=1e-14)
    # closed form sin z/z^2 - cos z/z at z = i
    val = specfun.sph_bessel_j(1, 1j)
    assert val.real == pytest.approx(0.0, abs=1e-16)
    assert val.imag == pytest.approx(0.3678794411714423, rel=1e-12)
    assert specfun.sph_bessel_j(0, 0.0) == 1.0
    assert specfun.sph_bessel_j(3, 0.0) == 0.0


def test_h_trivial_and_pole():
    # h_0(x) = -i e^{ix}/x
    val = specfun.sph_hankel1(0, 1.0)
    assert val == pytest.approx(complex(math.sin(1.0), -math.cos(1.0)),
                                rel=1e-14)
    with pytest.raises((PoleError, ValueError)):
        specfun.sph_hankel1(0, 0.0)


def test_h_small_argument_dominated_by_pole_term():
    # h_l ~ -i (2l-1)!!/z^{l+1} for z -> 0
    val = specfun.sph_hankel1(1, 0.001)
    assert val.imag == pytest.approx(-1e6, rel=2e-6)


def test_h_large_argument_asymptote():
    # h_l(z) -> (-i)^{l+1} e^{iz}/z, with first correction i l(l+1)/(2z)
    val = specfun.sph_hankel1(2, 50.0)
    lead = (-1j) ** 3 * complex(mp.exp(50j)) / 50.0
    assert rel(val, lead) < 1.2 * 3 / 50.0  # bare leading term, O(1/z)
    # next term is (l-1)l(l+1)(l+2)/(8 z^2) = 1.2e-3
    assert rel(val, lead * (1 + 1j * 3 / 50.0)) < 2e-3


def test_tilde_trivial():
    assert specfun.tilde_j(0, 1.0) == pytest.approx(math.cos(1.0), rel=1e-14)


@pytest.mark.parametrize("f", [specfun.sph_bessel_j, specfun.sph_hankel1])
@pytest.mark.parametrize("l,z", [
    (1, 0.1), (3, 2.0), (7, 0.5), (12, 9.0), (20, 100.0), (35, 25.0),
    (5, 1 + 1j), (9, 0.2 + 3j), (15, 60j), (50, 10 + 40j),
])
def test_three_term_recurrence(f, l, z):
    lhs = f(l - 1, z) + f(l + 1, z)
    rhs = (2 * l + 1) * f(l, z) / z
    assert rel(lhs, rhs) < 1e-10


@pytest.mark.parametrize("l", [1, 2, 5, 10, 30, 75])
@pytest.mark.parametrize("x", [0.05, 0.7, 3.0, 25.0, 300.0])
def test_wronskian(l, x):
    w = (specfun.sph_bessel_j(l, x) * specfun.tilde_h(l, x)
         - specfun.sph_hankel1(l, x) * specfun.tilde_j(l, x))
    assert rel(w, 1j / x) < 1e-10


@pytest.mark.parametrize("l", [1, 2, 4, 8])
@pytest.mark.parametrize("x", [1e-3, 5e-4])
def test_small_argument_expansions(l, x):
    """Leading term plus first correction reproduce j, h, tilde_j, tilde_h."""
    df1 = math.exp(specfun.ln_double_factorial(2 * l + 1))
    df0 = math.exp(specfun.ln_double_factorial(2 * l - 1))
    tol = x**4 * 10

    j_exp = x**l / df1 * (1 - x * x / (2 * (2 * l + 3)))
    assert rel(specfun.sph_bessel_j(l, x), j_exp) < tol

    tj_exp = (l + 1) * x**l / df1 * (1 - (l + 3) * x * x
                                     / (2 * (l + 1) * (2 * l + 3)))
    assert rel(specfun.tilde_j(l, x), tj_exp) < tol

    h = specfun.sph_hankel1(l, x)
    h_exp = -1j * df0 / x ** (l + 1) * (1 + x * x / (2 * (2 * l - 1)))
    assert rel(h.imag, h_exp.imag) < tol

    th = specfun.tilde_h(l, x)
    th_exp = 1j * l * df0 / x ** (l + 1) * (1 + (l - 2) * x * x
                                            / (2 * l * (2 * l - 1)))
    assert rel(th.imag, th_exp.imag) < tol


def modified_i_series(l, t, terms=60):
    """Independent series for the modified function i_l(t):
    i_l(t) = t^l sum_m (t^2/2)^m / (m! (2l+2m+1)!!)."""
    total = 0.0
    for m in range(terms):
        log_term = (m * math.log(t * t / 2.0) - math.lgamma(m + 1)
                    - specfun.ln_double_factorial(2 * l + 2 * m + 1))
        total += math.exp(log_term)
    return t**l * total


@pytest.mark.parametrize("l", [0, 1, 3, 6, 10])
@pytest.mark.parametrize("t", [0.3, 1.0, 4.0, 12.0])
def test_modified_function_identity(l, t):
    """j_l(i t) = i^l i_l(t) for real t > 0."""
    lhs = specfun.sph_bessel_j(l, 1j * t)
    rhs = 1j**l * modified_i_series(l, t)
    assert rel(lhs, rhs) < 1e-10


@pytest.mark.parametrize("l,z", [
    (0, 1.0), (1, 100j), (3, 2 + 3j), (8, 0.4), (15, 12.0), (30, 5 + 5j),
])
def test_log_ratio_A_matches_direct_quotient(l, z):
    direct = specfun.tilde_j(l, z) / specfun.sph_bessel_j(l, z)
    assert rel(specfun.log_ratio_A(l, z), direct) < 1e-10


def test_log_ratio_A_trivial_and_asymptote():
    # l = 0: [z j_0]' / j_0 = cos z * z / sin z
    assert specfun.log_ratio_A(0, 1.0) == pytest.approx(
        math.cos(1.0) / math.sin(1.0), rel=1e-12)
    # large imaginary argument: A ~ -i z
    a = specfun.log_ratio_A(1, 100j)
    assert a.real == pytest.approx(100.0, rel=0.02)


def test_ratio_seq_consistency():
    """rho_l = j_{l+1}/j_l from the dedicated downward recurrence."""
    z = 3 + 4j
    rho = specfun.bessel_j_ratio_seq(10, z)
    for l in range(1, 10):
        direct = specfun.sph_bessel_j(l + 1, z) / specfun.sph_bessel_j(l, z)
        assert rel(rho[l], direct) < 1e-10
