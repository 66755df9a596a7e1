"""Trace of the scattering Green's function at the particle position.

gamma_trace evaluates the multipole sum

    gamma = (i x / 4 pi r^3) sum_l (2l+1) { x^2 r_TE h_l(x)^2
            + r_TM [ l(l+1) h_l(x)^2 + ([x h_l(x)]')^2 ] }

with x = r omega / c (real or on the positive imaginary axis).  The sum is
assembled from the scaled Bessel/Hankel sequences of cpsphere.specfun, so
no intermediate ever overflows even for x ~ 1e-4 at l ~ 40, where h_l(x)^2
alone would exceed double range.  The closed-form static value and the
closed-form retardation/reflectivity corrections are provided alongside.
"""

import cmath
from dataclasses import dataclass
from math import ceil, log, pi

from scipy.constants import c as c_light

from . import materials, specfun
from .errors import ConvergenceError, CpSphereError, RegimeError
from .scaling import scaling_f, scaling_g_ret, scaling_g_refl

#: phi above this cannot be certified at tolerance in double precision
PHI_NEAR_CONTACT = 0.995


@dataclass(frozen=True)
class SphereSystem:
    """Geometry: sphere radius and particle distance from its center (m)."""

    radius: float
    distance: float

    def __post_init__(self):
        if not 0.0 < self.radius < self.distance:
            raise ValueError(
                f"require 0 < R < r, got R={self.radius!r}, r={self.distance!r}")

    @property
    def phi(self):
        """Geometry parameter R/r in (0, 1)."""
        return self.radius / self.distance

    def x_of(self, omega):
        """Retardation parameter r*omega/c (complex for imaginary omega)."""
        return self.distance * complex(omega) / c_light


@dataclass(frozen=True)
class GammaValue:
    """Green's-trace value (m^-3) plus convergence diagnostics."""

    value: complex
    l_terms_used: int
    truncation_estimate: float


def _check_near_contact(phi):
    if phi > PHI_NEAR_CONTACT:
        raise RegimeError(
            f"phi = {phi:.4f} > {PHI_NEAR_CONTACT}: near-contact geometry "
            f"cannot be certified at tolerance in double precision")


def l_cap(phi):
    """Multipole truncation cap; terms scale as phi^(2l), tails geometric."""
    return max(40, ceil(12.0 / (1.0 - phi)))


def gamma_trace(sys, omega, model, tol=1e-8):
    """Scattering Green's trace gamma_omega(r) by adaptive multipole summation.

    Parameters
    ----------
    sys : SphereSystem
    omega : complex
        Angular frequency; nonzero real, or on the positive imaginary axis
        (Matsubara evaluation).  The same analytic continuation is used on
        both axes; on the imaginary axis the result is checked to be real
        and the residual imaginary part is discarded.
    model : PermittivityModel
    tol : float
        Relative truncation tolerance in [1e-12, 1e-3]; the sum stops once
        three consecutive terms fall below it.

    Returns
    -------
    GammaValue
    """
    if not 1e-12 <= tol <= 1e-3:
        raise ValueError(f"tol must lie in [1e-12, 1e-3], got {tol!r}")
    omega = complex(omega)
    if omega == 0:
        raise ValueError("omega = 0 excluded; use gamma_static")
    phi = sys.phi
    _check_near_contact(phi)
    imaginary_axis = omega.real == 0.0
    if not imaginary_axis and omega.imag != 0.0:
        raise ValueError(f"omega must be real or positive imaginary, got {omega!r}")

    r = sys.distance
    x = sys.x_of(omega)
    z = phi * x
    lmax = l_cap(phi)

    pc = model.is_perfect_conductor
    eps = se = None
    rho_w = None
    if not pc:
        eps = materials.permittivity(model, omega)
        if eps == 1.0:
            return GammaValue(complex(0.0), 0, 0.0)
        se = materials.sqrt_eps(model, omega)
        rho_w = specfun.bessel_j_ratio_seq(lmax, se * z)

    qx = specfun.scaled_hankel_seq(lmax, x)
    qz = specfun.scaled_hankel_seq(lmax, z)
    pz, tpz, _ = specfun.scaled_bessel_seq(lmax, z)

    x2 = x * x
    total = complex(0.0)
    below = 0
    rel = float("inf")
    l_used = lmax
    for l in range(1, lmax + 1):
        phi_pow = phi ** (2 * l + 1)
        if phi_pow == 0.0:
            l_used = l
            rel = 0.0
            below = 3
            break
        tqx = specfun.scaled_tilde_hankel(qx, l)
        tqz = specfun.scaled_tilde_hankel(qz, l)
        c_tm = c_te = 1.0
        if not pc:
            a = (l + 1) - se * z * rho_w[l]
            jj = pz[l] / ((l + 1) * tpz[l])
            hh = -qz[l] / (l * tqz)
            c_tm = (1.0 - a * jj / eps) / (1.0 - a * hh / eps)
            c_te = (1.0 - 1.0 / (a * jj)) / (1.0 - 1.0 / (a * hh))
        t_tm = ((l + 1) * phi_pow * (tpz[l] / tqz)
                * ((l + 1) * qx[l] ** 2 + l * tqx ** 2) * c_tm)
        t_te = -x2 * phi_pow * (pz[l] / qz[l]) * qx[l] ** 2 * c_te
        term = t_tm + t_te
        total += term
        mag = abs(total)
        rel = abs(term) / mag if mag > 0.0 else float("inf")
        below = below + 1 if rel < tol else 0
        if below >= 3:
            l_used = l
            break
    else:
        raise ConvergenceError(
            f"multipole sum not converged at l cap {lmax} "
            f"(last relative term {rel:.3g})",
            partial=total / (4.0 * pi * r**3), estimate=rel)

    value = total / (4.0 * pi * r**3)
    if imaginary_axis:
        scale = max(abs(value.real), abs(value))
        if scale > 0.0 and abs(value.imag) > tol * scale:
            raise CpSphereError(
                f"reality check failed at omega = {omega!r}: "
                f"Im/Re = {abs(value.imag) / scale:.3g}")
        value = complex(value.real)
    return GammaValue(value, l_used, rel)


def gamma_static(sys, eps_static=None, tol=1e-12):
    """Static (omega -> 0) Green's trace, in m^-3.

    eps_static=None selects the perfect-conductor limit with its closed
    form f(phi)/(4 pi r^3); a finite eps > 1 sums the dielectric series
    sum_l l(l+1)(2l+1)(eps-1) phi^(2l+1)/(l eps + l + 1) adaptively.
    """
    phi = sys.phi
    _check_near_contact(phi)
    pref = 1.0 / (4.0 * pi * sys.distance**3)
    if eps_static is None:
        return pref * scaling_f(phi)
    eps = float(eps_static)
    if eps < 1.0:
        raise ValueError(f"eps_static must be >= 1, got {eps!r}")
    if eps == 1.0:
        return 0.0
    total = 0.0
    cap = max(2000, 4 * l_cap(phi))
    for l in range(1, cap + 1):
        term = (l * (l + 1) * (2 * l + 1) * (eps - 1.0) * phi ** (2 * l + 1)
                / (l * eps + l + 1.0))
        total += term
        if term < tol * total:
            return pref * total
    raise ConvergenceError(
        f"static series not converged at l cap {cap} (phi={phi:.4f})",
        partial=pref * total)


def delta_gamma_ret(sys, x):
    """Closed-form quadratic retardation correction to the PC Green's trace.

    delta = x^2 g_ret(phi) / (8 pi r^3), for real retardation parameter x.
    """
    phi = sys.phi
    _check_near_contact(phi)
    x = float(x)
    return x * x * scaling_g_ret(phi) / (8.0 * pi * sys.distance**3)


def delta_gamma_refl(sys, x, model, omega):
    """Closed-form finite-reflectivity correction to the Green's trace.

    delta = (i x phi^2 / (4 pi r^3 sqrt(eps))) *
            [(3 + 7 phi^2 - 4 phi^4)/(1-phi^2)^2 - log(1-phi^2)]

    Exactly 0 for a perfect conductor; requires the metallic regime
    Im(sqrt(eps)) phi x > 5 otherwise.
    """
    phi = sys.phi
    _check_near_contact(phi)
    x = float(x)
    if model.is_perfect_conductor:
        return complex(0.0)
    se = materials.sqrt_eps(model, omega)
    if se.imag * phi * abs(x) <= 5.0:
        raise RegimeError(
            f"Im(sqrt(eps)) phi x = {se.imag * phi * abs(x):.3g} <= 5: "
            f"outside the metallic regime")
    p2 = phi * phi
    bracket = (3.0 + 7.0 * p2 - 4.0 * p2 * p2) / (1.0 - p2) ** 2 - log(1.0 - p2)
    return 1j * x * p2 * bracket / (4.0 * pi * sys.distance**3 * se)
