"""Permittivity models: Drude dispersion on both frequency axes, branch
choice of the square root, and the reflectivity-correction factor."""

import cmath
import random

import pytest
from scipy.constants import eV, hbar

from cpsphere import materials
from cpsphere.errors import PerfectConductorError, PoleError
from cpsphere.materials import PermittivityModel

OMEGA_P = 9.0 * eV / hbar      # gold plasma frequency
GAMMA = 35e-3 * eV / hbar      # gold damping

GOLD = PermittivityModel.drude(OMEGA_P, GAMMA)
PC = PermittivityModel.perfect_conductor()
EPS6 = PermittivityModel.dielectric(6.0)


class TestConstruction:
    def test_drude_requires_positive_plasma_frequency(self):
        with pytest.raises(ValueError):
            PermittivityModel.drude(0.0, GAMMA)
        with pytest.raises(ValueError):
            PermittivityModel.drude(OMEGA_P, -1.0)

    def test_dielectric_requires_eps_at_least_one(self):
        with pytest.raises(ValueError):
            PermittivityModel.dielectric(0.5)
        assert PermittivityModel.dielectric(1.0).eps_static == 1.0

    def test_unknown_kind_rejected(self):
        with pytest.raises(ValueError):
            PermittivityModel("metal")


class TestPermittivity:
    def test_gold_at_one_mev(self):
        omega = 1e-3 * eV / hbar
        eps = materials.permittivity(GOLD, omega)
        assert eps.real == pytest.approx(-6.607e4, rel=5e-3)
        assert eps.imag == pytest.approx(2.312e6, rel=5e-3)

    def test_gold_on_imaginary_axis(self):
        xi = 1e-3 * eV / hbar
        eps = materials.permittivity(GOLD, 1j * xi)
        # 1 + omega_P^2/(xi (xi + gamma)) with energies 9 eV, 1 meV, 35 meV
        assert eps.imag == 0.0
        assert eps.real == pytest.approx(1.0 + 81.0 / (1e-3 * 36e-3), rel=1e-9)

    def test_dielectric_is_constant(self):
        for omega in (1e10, 1e15, 1j * 1e12):
            assert materials.permittivity(EPS6, omega) == 6.0

    def test_pc_has_no_finite_value(self):
        with pytest.raises(PerfectConductorError):
            materials.permittivity(PC, 1e12)

    def test_drude_pole_at_zero(self):
        with pytest.raises(PoleError):
            materials.permittivity(GOLD, 0.0)

    def test_schwarz_reflection(self):
        rng = random.Random(7)
        for _ in range(20):
            omega = 10 ** rng.uniform(8, 16) * rng.choice([1.0, -1.0])
            lhs = materials.permittivity(GOLD, -omega)
            rhs = materials.permittivity(GOLD, omega).conjugate()
            assert cmath.isclose(lhs, rhs, rel_tol=1e-12)

    def test_imaginary_axis_real_and_monotone(self):
        values = [materials.permittivity(GOLD, 1j * xi).real
                  for xi in (1e10, 1e11, 1e12, 1e13, 1e14, 1e15)]
        assert all(v > 1.0 for v in values)
        assert values == sorted(values, reverse=True)


class TestSqrtEps:
    def test_real_positive(self):
        assert materials.sqrt_eps(EPS6, 1e12) == pytest.approx(
            cmath.sqrt(6), rel=1e-14)

    def test_branch_on_negative_real_axis(self):
        # lossless Drude: eps < 0 on the real axis maps to +i sqrt(|eps|)
        lossless = PermittivityModel.drude(OMEGA_P, 0.0)
        se = materials.sqrt_eps(lossless, OMEGA_P / 3.0)
        assert se.real == pytest.approx(0.0, abs=1e-12)
        assert se.imag > 0

    def test_gold_value(self):
        omega = 1e-3 * eV / hbar
        se = materials.sqrt_eps(GOLD, omega)
        assert se.real == pytest.approx(1.0605e3, rel=5e-3)
        assert se.imag == pytest.approx(1.0902e3, rel=5e-3)

    def test_im_nonnegative_when_absorbing(self):
        rng = random.Random(11)
        for _ in range(30):
            omega = 10 ** rng.uniform(8, 16)
            eps = materials.permittivity(GOLD, omega)
            assert eps.imag >= 0
            assert materials.sqrt_eps(GOLD, omega).imag >= 0


class TestReflectivityFactor:
    def test_pc_is_zero(self):
        assert materials.re_i_over_sqrt_eps(PC, 1e12) == 0.0

    def test_evenness(self):
        for omega in (1e10, 3e12, 7e14):
            assert materials.re_i_over_sqrt_eps(GOLD, omega) == pytest.approx(
                materials.re_i_over_sqrt_eps(GOLD, -omega), rel=1e-12)

    def test_low_frequency_asymptote(self):
        # |omega| << gamma: Re(i/sqrt(eps)) -> sqrt(|omega| gamma / 2)/omega_P
        omega = GAMMA * 1e-4
        expected = (omega * GAMMA / 2.0) ** 0.5 / OMEGA_P
        assert materials.re_i_over_sqrt_eps(GOLD, omega) == pytest.approx(
            expected, rel=1e-3)

    def test_high_frequency_asymptote(self):
        # gamma << |omega| << omega_P: Re(i/sqrt(eps)) -> |omega|/omega_P
        omega = GAMMA * 50.0
        assert omega < 0.2 * OMEGA_P
        assert materials.re_i_over_sqrt_eps(GOLD, omega) == pytest.approx(
            omega / OMEGA_P, rel=5e-2)

    def test_drude_closed_form(self):
        for omega in (1e11, 1e12, 1e13):
            got = materials.re_i_over_sqrt_eps(GOLD, omega)
            closed = ((omega**2 + GAMMA**2) ** 0.5 + omega) ** 0.5 \
                * (omega / 2.0) ** 0.5 / OMEGA_P
            assert got == pytest.approx(closed, rel=1e-5)


def test_static_eps_classification():
    assert materials.static_eps(PC) is None
    assert materials.static_eps(GOLD) is None
    assert materials.static_eps(EPS6) == 6.0
