"""Permittivity models on the real and imaginary frequency axes.

Supported models: perfect conductor, Drude metal, and a constant (static)
dielectric.  The perfect conductor is a model *kind*, not a large finite
epsilon: requesting a finite permittivity from it raises
PerfectConductorError so callers branch to the analytic PC-limit formulas.
"""

import cmath
from dataclasses import dataclass

from .errors import PerfectConductorError, PoleError

PERFECT_CONDUCTOR = "pc"
DRUDE = "drude"
DIELECTRIC = "dielectric"


@dataclass(frozen=True)
class PermittivityModel:
    """Material model for the sphere.

    Parameters
    ----------
    kind : str
        One of "pc", "drude", "dielectric".
    plasma_frequency : float
        Drude plasma frequency omega_P in rad/s (Drude only).
    damping : float
        Drude damping gamma in rad/s (Drude only).
    eps_static : float
        Static relative permittivity (dielectric only); eps >= 1.
        eps = 1 is vacuum: allowed, scatters nothing.
    """

    kind: str
    plasma_frequency: float = 0.0
    damping: float = 0.0
    eps_static: float = 0.0

    def __post_init__(self):
        if self.kind not in (PERFECT_CONDUCTOR, DRUDE, DIELECTRIC):
            raise ValueError(f"unknown material kind {self.kind!r}")
        if self.kind == DRUDE:
            if self.plasma_frequency <= 0:
                raise ValueError("Drude model requires plasma_frequency > 0")
            if self.damping < 0:
                raise ValueError("Drude model requires damping >= 0")
        if self.kind == DIELECTRIC and self.eps_static < 1.0:
            raise ValueError("dielectric model requires eps_static >= 1")

    @classmethod
    def perfect_conductor(cls):
        return cls(PERFECT_CONDUCTOR)

    @classmethod
    def drude(cls, plasma_frequency, damping):
        return cls(DRUDE, plasma_frequency=plasma_frequency, damping=damping)

    @classmethod
    def dielectric(cls, eps_static):
        return cls(DIELECTRIC, eps_static=float(eps_static))

    @property
    def is_perfect_conductor(self):
        return self.kind == PERFECT_CONDUCTOR


def _check_axis(omega):
    """Accept frequencies on the real axis or the positive imaginary axis."""
    omega = complex(omega)
    if omega.real != 0.0 and omega.imag != 0.0:
        raise ValueError(
            f"frequency must lie on the real axis or the positive imaginary "
            f"axis, got {omega!r}"
        )
    if omega.imag < 0.0:
        raise ValueError(f"negative imaginary frequency {omega!r}")
    return omega


def permittivity(model, omega):
    """Relative permittivity eps(omega) at a real or imaginary frequency.

    Drude: eps = 1 - omega_P^2/[omega (omega + i gamma)]; on the positive
    imaginary axis omega = i xi this is real and > 1.  The constant
    dielectric ignores omega.  The perfect conductor raises
    PerfectConductorError (no finite value exists).
    """
    omega = _check_axis(omega)
    if model.kind == PERFECT_CONDUCTOR:
        raise PerfectConductorError(
            "perfect conductor has no finite permittivity; "
            "use the PC-limit formulas"
        )
    if model.kind == DIELECTRIC:
        return complex(model.eps_static)
    if omega == 0:
        raise PoleError(
            "Drude permittivity diverges at omega = 0; "
            "use the static-limit operation"
        )
    eps = 1.0 - model.plasma_frequency**2 / (omega * (omega + 1j * model.damping))
    if omega.imag > 0:
        # causality: exactly real on the imaginary axis
        eps = complex(eps.real)
    return eps


def sqrt_eps(model, omega):
    """Principal square root of eps(omega); Im sqrt >= 0 whenever Im eps >= 0."""
    eps = permittivity(model, omega)
    if eps.imag == 0.0 and eps.real < 0.0:
        # land on the upper side of the branch cut (decaying waves)
        eps = complex(eps.real, 0.0)
        return 1j * cmath.sqrt(-eps)
    return cmath.sqrt(eps)


def re_i_over_sqrt_eps(model, omega):
    """Re[i/sqrt(eps(omega))] at a signed real angular frequency.

    This is the reflectivity-correction factor; it is even in omega.
    Exactly 0 for the perfect conductor and for a lossless dielectric.
    For a Drude metal with omega, gamma << omega_P it reduces to
    sqrt((sqrt(omega^2+gamma^2)+|omega|)|omega|/2)/omega_P.
    """
    if model.kind == PERFECT_CONDUCTOR:
        return 0.0
    if omega == 0 or complex(omega).imag != 0:
        raise ValueError("re_i_over_sqrt_eps requires a nonzero real frequency")
    return (1j / sqrt_eps(model, abs(complex(omega).real))).real


def static_eps(model):
    """Static permittivity class used for the zero-frequency scattering term.

    Returns None for the perfect conductor *and* the Drude metal (whose
    permittivity diverges on the imaginary axis as xi -> 0, i.e. the PC
    limit), and the finite eps for a constant dielectric.
    """
    if model.kind == DIELECTRIC:
        return model.eps_static
    return None
