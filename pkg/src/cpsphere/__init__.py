"""Thermal Casimir-Polder potential of a dipole particle outside a sphere.

Numerically exact evaluation (Mie multipole series over the scattering
Green's trace, summed over Matsubara frequencies plus the resonant
photon-exchange term) together with closed-form perturbative
approximations valid in the non-retarded regime, for perfect-conductor,
Drude-metal and constant-dielectric spheres.
"""

from .errors import (
    ConvergenceError,
    CpSphereError,
    PerfectConductorError,
    PoleError,
    RegimeError,
    SpecFunOverflowError,
)
from .greens import (
    GammaValue,
    SphereSystem,
    delta_gamma_refl,
    delta_gamma_ret,
    gamma_static,
    gamma_trace,
)
from .materials import (
    PermittivityModel,
    permittivity,
    re_i_over_sqrt_eps,
    sqrt_eps,
    static_eps,
)
from .mie import (
    TE,
    TM,
    refl_exact,
    refl_nonret,
    refl_nonret_pc,
    refl_pc,
    refl_perturbative,
    refl_tm_pc_retarded,
)
from .potential import (
    PotentialBreakdown,
    ThermalState,
    TransitionSpec,
    aggregate_transitions,
    bose_einstein,
    matsubara_xi,
    superpose_states,
    u_approx_dielectric,
    u_approx_metal,
    u_exact,
    u_invariant,
    u_nonresonant,
    u_resonant,
    u_spectroscopic,
    u_zero_temperature,
)
from .scaling import scaling_f, scaling_g_refl, scaling_g_ret

__version__ = "1.0.0"

__all__ = [
    "ConvergenceError",
    "CpSphereError",
    "GammaValue",
    "PerfectConductorError",
    "PermittivityModel",
    "PoleError",
    "PotentialBreakdown",
    "RegimeError",
    "SpecFunOverflowError",
    "SphereSystem",
    "TE",
    "TM",
    "ThermalState",
    "TransitionSpec",
    "aggregate_transitions",
    "bose_einstein",
    "delta_gamma_refl",
    "delta_gamma_ret",
    "gamma_static",
    "gamma_trace",
    "matsubara_xi",
    "permittivity",
    "re_i_over_sqrt_eps",
    "refl_exact",
    "refl_nonret",
    "refl_nonret_pc",
    "refl_pc",
    "refl_perturbative",
    "refl_tm_pc_retarded",
    "scaling_f",
    "scaling_g_refl",
    "scaling_g_ret",
    "sqrt_eps",
    "static_eps",
    "superpose_states",
    "u_approx_dielectric",
    "u_approx_metal",
    "u_exact",
    "u_invariant",
    "u_nonresonant",
    "u_resonant",
    "u_spectroscopic",
    "u_zero_temperature",
]
