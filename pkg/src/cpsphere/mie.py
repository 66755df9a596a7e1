"""Sphere reflection (Mie scattering) coefficients for TE and TM waves.

The exact coefficients are evaluated in the factored form

    r_TM = r_TM_PC * (1 - A J / eps) / (1 - A H / eps)
    r_TE = r_TE_PC * (1 - 1/(A J)) / (1 - 1/(A H))

with A = [w j_l(w)]'/j_l(w) at w = sqrt(eps) z (a ratio that stays finite
where j_l(w) alone overflows for good conductors), J = j_l(z)/[z j_l(z)]'
and H = h_l(z)/[z h_l(z)]'.  The perfect-conductor factors are computed in
log space from the scaled Bessel/Hankel sequences, so small arguments and
large orders never overflow.  Four limiting forms are provided: the
perfect-conductor limit at finite z, the non-retarded limit at finite eps,
the retarded correction to the non-retarded PC TM coefficient, and the
perturbative finite-conductivity coefficients.
"""

import cmath
from math import isfinite

from . import specfun
from .errors import PoleError, RegimeError

TE = "TE"
TM = "TM"

#: upper bound of the "non-retarded" regime, |z| < NONRETARDED_MAX
NONRETARDED_MAX = 0.3
#: lower bound of the "metallic" regime, Im(sqrt(eps)) |z| > METALLIC_MIN
METALLIC_MIN = 5.0
#: largest supported multipole order for the public coefficient operations
LMAX_SUPPORTED = 200


def _check_order(l):
    if l < 1:
        raise ValueError(f"multipole order must be >= 1, got {l}")
    if l > LMAX_SUPPORTED:
        raise ValueError(f"multipole order {l} exceeds supported maximum "
                         f"{LMAX_SUPPORTED}")


def _check_pol(pol):
    if pol not in (TE, TM):
        raise ValueError(f"polarization must be 'TE' or 'TM', got {pol!r}")


def _require_finite(value, what, l, z):
    if not (isfinite(value.real) and isfinite(value.imag)):
        raise PoleError(f"{what} not finite at l={l}, z={z!r}")
    return value


def _nonret_prefactor(l, z, power):
    """z^power / ((2l+1)!! (2l-1)!!) in log space; underflows gracefully to 0."""
    ln = (power * cmath.log(z)
          - specfun.ln_double_factorial(2 * l + 1)
          - specfun.ln_double_factorial(2 * l - 1))
    if ln.real < -745.0:
        return complex(0.0)
    return cmath.exp(ln)


def refl_pc(l, z, pol):
    """Perfect-conductor reflection coefficient at finite argument z.

    r_TE_PC = -j_l(z)/h_l(z), r_TM_PC = -[z j_l]'/[z h_l]'.
    """
    _check_order(l)
    _check_pol(pol)
    z = complex(z)
    if z == 0:
        raise PoleError("reflection coefficient undefined at z = 0")
    p, tp, _ = specfun.scaled_bessel_seq(l, z)
    q = specfun.scaled_hankel_seq(l, z)
    if pol == TE:
        val = -1j * _nonret_prefactor(l, z, 2 * l + 1) * p[l] / q[l]
    else:
        tq = specfun.scaled_tilde_hankel(q, l)
        val = (1j * (l + 1) / l * _nonret_prefactor(l, z, 2 * l + 1)
               * tp[l] / tq)
    return _require_finite(val, "PC reflection coefficient", l, z)


def _exact_factor(l, z, eps, pol):
    """First-order finite-conductivity factor multiplying r_pol_PC."""
    w = cmath.sqrt(eps) * z
    if w.imag == 0.0 and w.real == 0.0:
        raise PoleError("sqrt(eps) z vanished")
    a = specfun.log_ratio_A(l, w)
    p, tp, _ = specfun.scaled_bessel_seq(l, z)
    q = specfun.scaled_hankel_seq(l, z)
    tq = specfun.scaled_tilde_hankel(q, l)
    jj = p[l] / ((l + 1) * tp[l])     # j_l(z)/[z j_l(z)]'
    hh = -q[l] / (l * tq)             # h_l(z)/[z h_l(z)]'
    if pol == TM:
        num = 1.0 - a * jj / eps
        den = 1.0 - a * hh / eps
    else:
        num = 1.0 - 1.0 / (a * jj)
        den = 1.0 - 1.0 / (a * hh)
    if den == 0:
        raise PoleError(f"exact coefficient denominator vanished at l={l}, "
                        f"z={z!r}")
    return num / den


def refl_exact(l, z, eps, pol):
    """Exact Mie reflection coefficient for a sphere of permittivity eps.

    Parameters
    ----------
    l : int
        Multipole order, 1 <= l <= 200.
    z : complex
        Size parameter (sphere radius times wavenumber); may lie on the
        positive imaginary axis.
    eps : complex
        Finite permittivity at the evaluation frequency.  Use refl_pc for
        the perfect conductor.
    pol : str
        "TE" or "TM".
    """
    _check_order(l)
    _check_pol(pol)
    z = complex(z)
    eps = complex(eps)
    if z == 0:
        raise PoleError("reflection coefficient undefined at z = 0")
    if eps == 1.0:
        return complex(0.0)  # vacuum sphere scatters nothing
    val = refl_pc(l, z, pol) * _exact_factor(l, z, eps, pol)
    return _require_finite(val, "exact reflection coefficient", l, z)


def refl_nonret(l, z, eps, pol):
    """Leading non-retarded (z -> 0 first) coefficient at finite eps.

    r_TE ~ i (eps-1) z^(2l+3)/((2l+3)!!(2l+1)!!),
    r_TM ~ i (l+1)(eps-1) z^(2l+1)/((l eps + l + 1)(2l+1)!!(2l-1)!!).
    Enforces |z| < 0.3.
    """
    _check_order(l)
    _check_pol(pol)
    z = complex(z)
    eps = complex(eps)
    if abs(z) >= NONRETARDED_MAX:
        raise RegimeError(f"non-retarded coefficient requires |z| < "
                          f"{NONRETARDED_MAX}, got |z| = {abs(z):.3g}")
    if pol == TE:
        ln = ((2 * l + 3) * cmath.log(z)
              - specfun.ln_double_factorial(2 * l + 3)
              - specfun.ln_double_factorial(2 * l + 1))
        base = cmath.exp(ln) if ln.real > -745.0 else complex(0.0)
        return 1j * (eps - 1.0) * base
    base = _nonret_prefactor(l, z, 2 * l + 1)
    return 1j * (l + 1) * (eps - 1.0) * base / (l * eps + l + 1.0)


def refl_nonret_pc(l, z, pol):
    """Non-retarded perfect-conductor coefficient (either limit order for TM).

    r_TE_PC ~ -i z^(2l+1)/((2l+1)!!(2l-1)!!),
    r_TM_PC ~ +(l+1)/l i z^(2l+1)/((2l+1)!!(2l-1)!!).
    """
    _check_order(l)
    _check_pol(pol)
    z = complex(z)
    base = _nonret_prefactor(l, z, 2 * l + 1)
    if pol == TE:
        return -1j * base
    return 1j * (l + 1) / l * base


def refl_tm_pc_retarded(l, z):
    """Non-retarded PC TM coefficient with its quadratic retardation correction.

    r = r_TM_PC_l0(z) {1 - z^2/2 [(l+3)/((2l+3)(l+1)) + (l-2)/(l(2l-1))]},
    valid for 0 < z < 0.3 (real z).
    """
    _check_order(l)
    z = float(z)
    if not 0.0 < z < NONRETARDED_MAX:
        raise RegimeError(f"retarded TM expansion requires 0 < z < "
                          f"{NONRETARDED_MAX}, got {z:.3g}")
    bracket = 1.0 - 0.5 * z * z * ((l + 3) / ((2 * l + 3) * (l + 1))
                                   + (l - 2) / (l * (2 * l - 1)))
    return refl_nonret_pc(l, z, TM) * bracket


def refl_perturbative(l, z, eps, pol):
    """First-order finite-conductivity coefficients in the metallic regime.

    r_TE = r_TE_PC_l0 [1 - i (2l+1)/(sqrt(eps) z)],
    r_TM = r_TM_PC_l0 [1 + i z (2l+1)/(sqrt(eps) l (l+1))].
    Pass eps=None for the perfect conductor (the factors reduce to 1).
    Requires |z| < 0.3 and Im(sqrt(eps)) |z| > 5.
    """
    _check_order(l)
    _check_pol(pol)
    z = complex(z)
    if not 0 < abs(z) < NONRETARDED_MAX:
        raise RegimeError(f"perturbative coefficient requires 0 < |z| < "
                          f"{NONRETARDED_MAX}, got |z| = {abs(z):.3g}")
    if eps is None:
        return refl_nonret_pc(l, z, pol)
    eps = complex(eps)
    se = cmath.sqrt(eps)
    if se.imag * abs(z) <= METALLIC_MIN:
        raise RegimeError(
            f"Im(sqrt(eps))|z| = {se.imag * abs(z):.3g} <= {METALLIC_MIN}: "
            f"outside the metallic regime (use the dielectric expansion)")
    if pol == TE:
        factor = 1.0 - 1j * (2 * l + 1) / (se * z)
    else:
        factor = 1.0 + 1j * z * (2 * l + 1) / (se * l * (l + 1))
    return refl_nonret_pc(l, z, pol) * factor
