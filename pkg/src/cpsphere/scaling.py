"""Closed-form geometry scaling functions of phi = R/r.

f governs the temperature-invariant term, g_ret the quadratic retardation
correction and g_refl the finite-reflectivity correction.  Asymptotics:

    f      -> 6 phi^3            (phi -> 0),   1/(2 (1-phi)^3)  (phi -> 1)
    g_ret  -> 2 phi^3            (phi -> 0),  -4 log(1-phi)     (phi -> 1)
    g_refl -> 6 phi^2            (phi -> 0),   3/(1-phi)^2      (phi -> 1)
"""

from math import atanh, log


def _check_phi(phi):
    if not 0.0 < phi < 1.0:
        raise ValueError(f"phi must lie in (0, 1), got {phi!r}")
    return float(phi)


def scaling_f(phi):
    """f(phi) = phi^3 (6 - 3 phi^2 + phi^4)/(1 - phi^2)^3."""
    phi = _check_phi(phi)
    p2 = phi * phi
    return phi**3 * (6.0 - 3.0 * p2 + p2 * p2) / (1.0 - p2) ** 3


def scaling_g_ret(phi):
    """g_ret(phi) = 3(1+3 phi^4) artanh(phi) - phi(3-phi^2) + 2 phi^3 log(1-phi^2)."""
    phi = _check_phi(phi)
    p2 = phi * phi
    return (3.0 * (1.0 + 3.0 * p2 * p2) * atanh(phi)
            - phi * (3.0 - p2)
            + 2.0 * phi**3 * log(1.0 - p2))


def scaling_g_refl(phi):
    """g_refl(phi) = 2 phi^2 [(3 + 7 phi^2 - 4 phi^4)/(1-phi^2)^2 - log(1-phi^2)]."""
    phi = _check_phi(phi)
    p2 = phi * phi
    return 2.0 * p2 * ((3.0 + 7.0 * p2 - 4.0 * p2 * p2) / (1.0 - p2) ** 2
                       - log(1.0 - p2))
