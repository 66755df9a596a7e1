"""Spherical Bessel and Hankel functions for real and complex arguments.

All evaluation routes through recurrences run on their stable side:
downward (Miller) recurrence with normalisation for j_l, upward recurrence
for h_l^(1) (the dominant solution in l for any argument), and a downward
ratio recurrence for logarithmic-derivative-type quantities that must stay
finite even where j_l itself would overflow.

Derivatives of the Riccati type, [z f_l(z)]', are always obtained from the
identity [z f_l]' = (l+1) f_l(z) - z f_{l+1}(z); no numerical
differentiation is performed anywhere.

The module also provides sequences of *scaled* functions

    P_l(z)  = j_l(z) (2l+1)!! / z^l
    TP_l(z) = [z j_l(z)]' (2l+1)!! / ((l+1) z^l)
    Q_l(z)  = h_l(z) z^(l+1) / (-i (2l-1)!!)
    TQ_l(z) = [z h_l(z)]' z^(l+1) / (i l (2l-1)!!)

which all tend to 1 as z -> 0.  They let callers assemble products such as
reflection coefficients times propagator factors without ever forming the
individually huge/tiny unscaled values.
"""

import cmath
from math import isfinite, lgamma, log, pi

from .errors import PoleError, SpecFunOverflowError

# |Im z| beyond which exp(|Im z|) leaves double precision
_EXP_LIMIT = 700.0
_RESCALE = 1e250


def ln_double_factorial(n):
    """log((2k+1)!!) for odd n = 2k+1 >= -1, computed via the Gamma function."""
    if n == -1:
        return 0.0
    if n < 0 or n % 2 == 0:
        raise ValueError(f"odd n >= -1 required, got {n}")
    k = (n - 1) // 2
    return (k + 1) * log(2.0) + lgamma(k + 1.5) - 0.5 * log(pi)


def _require_finite(value, l, z):
    if not (isfinite(value.real) and isfinite(value.imag)):
        raise SpecFunOverflowError(l, z)
    return value


def _j_series(l, z):
    """Ascending power series j_l(z) = z^l sum_m (-z^2/2)^m/(m! (2l+2m+1)!!).

    Cancellation-free for |z| <~ 1 at any order (the closed forms for
    l = 0, 1 lose ~|z|^-2 digits to cancellation there).
    """
    ln_pref = l * cmath.log(z) - ln_double_factorial(2 * l + 1)
    if ln_pref.real < -745.0:
        return complex(0.0)
    term = complex(1.0)
    total = complex(1.0)
    for m in range(1, 60):
        term *= -z * z / (2.0 * m * (2 * l + 2 * m + 1))
        total += term
        if abs(term) < 1e-18 * abs(total):
            break
    return cmath.exp(ln_pref) * total


def sph_bessel_j(l, z):
    """Spherical Bessel function of the first kind, j_l(z).

    Parameters
    ----------
    l : int
        Order, l >= 0.
    z : complex
        Argument; may be complex.  z = 0 is allowed (j_0(0) = 1,
        j_l(0) = 0 for l >= 1).

    Returns
    -------
    complex

    Notes
    -----
    Ascending series for |z| <= 1; upward recurrence for large,
    essentially real arguments (|z| > l + 10, where both solutions
    oscillate with comparable magnitude); downward (Miller) recurrence
    with normalisation against j_0 or j_1 everywhere else -- j_l is the
    minimal solution for l >> |z| regardless of the argument's phase.
    Raises SpecFunOverflowError when the value itself is not
    representable (|Im z| too large).
    """
    if l < 0:
        raise ValueError(f"order must be >= 0, got {l}")
    z = complex(z)
    if z == 0:
        return complex(1.0) if l == 0 else complex(0.0)
    if abs(z.imag) > _EXP_LIMIT:
        raise SpecFunOverflowError(l, z)
    if abs(z) <= 1.0:
        return _j_series(l, z)
    j0 = cmath.sin(z) / z
    if l == 0:
        return j0
    j1 = (j0 - cmath.cos(z)) / z
    if l == 1:
        return j1
    if abs(z) > l + 10 and abs(z.imag) <= 1.0:
        # both solutions oscillate with comparable magnitude here
        fm, f = j0, j1
        for k in range(1, l):
            fm, f = f, (2 * k + 1) / z * f - fm
        return _require_finite(f, l, z)

    nstart = l + 20 + int(1.5 * abs(z))
    p_up = complex(0.0)       # p_{k+1}
    p_k = complex(1e-280)     # p_k, arbitrary seed
    target = None
    p1 = None
    for k in range(nstart, 0, -1):
        p_dn = (2 * k + 1) / z * p_k - p_up
        p_up, p_k = p_k, p_dn
        if max(abs(p_k.real), abs(p_k.imag)) > _RESCALE:
            p_k /= _RESCALE
            p_up /= _RESCALE
            if target is not None:
                target /= _RESCALE
            if p1 is not None:
                p1 /= _RESCALE
        if k - 1 == l:
            target = p_k
        if k - 1 == 1:
            p1 = p_k
    p0 = p_k
    # normalise against whichever anchor is farther from a zero of j
    if abs(p0) >= abs(p1):
        scale = j0 / p0
    else:
        scale = j1 / p1
    return _require_finite(target * scale, l, z)


def sph_hankel1(l, z):
    """Spherical Hankel function of the first kind, h_l^(1)(z).

    Upward recurrence from the closed-form l = 0, 1 seeds; h is the
    dominant solution in l, so this is stable for any argument.  Raises
    PoleError at z = 0 and SpecFunOverflowError when the value leaves
    double precision.
    """
    if l < 0:
        raise ValueError(f"order must be >= 0, got {l}")
    z = complex(z)
    if z == 0:
        raise PoleError(f"h_{l}^(1) has a pole at z = 0")
    if -z.imag > _EXP_LIMIT:
        raise SpecFunOverflowError(l, z)
    h0 = -1j * cmath.exp(1j * z) / z
    if l == 0:
        return _require_finite(h0, l, z)
    h1 = h0 * (1.0 / z - 1j)
    if l == 1:
        return _require_finite(h1, l, z)
    hm, h = h0, h1
    for k in range(1, l):
        hm, h = h, (2 * k + 1) / z * h - hm
        if not (isfinite(h.real) and isfinite(h.imag)):
            raise SpecFunOverflowError(k + 1, z)
    return h


def tilde_j(l, z):
    """Riccati-type derivative [z j_l(z)]' = (l+1) j_l(z) - z j_{l+1}(z)."""
    z = complex(z)
    return (l + 1) * sph_bessel_j(l, z) - z * sph_bessel_j(l + 1, z)


def tilde_h(l, z):
    """Riccati-type derivative [z h_l^(1)(z)]' = (l+1) h_l(z) - z h_{l+1}(z)."""
    z = complex(z)
    return (l + 1) * sph_hankel1(l, z) - z * sph_hankel1(l + 1, z)


def bessel_j_ratio_seq(lmax, z):
    """Ratios rho_l = j_{l+1}(z)/j_l(z) for l = 0..lmax.

    Computed with a single downward ratio recurrence; never overflows,
    even where j_l itself would (large |Im z|).
    """
    z = complex(z)
    if z == 0:
        return [complex(0.0)] * (lmax + 1)
    nstart = lmax + 30 + int(1.4 * abs(z))
    rho = z / (2 * nstart + 3)
    out = [complex(0.0)] * (lmax + 1)
    for k in range(nstart, 0, -1):
        denom = (2 * k + 1) / z - rho
        if denom == 0:
            denom = complex(1e-290)
        rho = 1.0 / denom
        if k - 1 <= lmax:
            out[k - 1] = rho
    return out


def bessel_j_ratio(l, z):
    """j_{l+1}(z)/j_l(z); see bessel_j_ratio_seq."""
    return bessel_j_ratio_seq(l, z)[l]


def log_ratio_A(l, z):
    """The logarithmic-derivative-type ratio [z j_l(z)]' / j_l(z).

    Evaluated as (l+1) - z j_{l+1}(z)/j_l(z) with the ratio from a
    downward recurrence, so the result stays finite where j_l(z) alone
    would overflow (large |Im z|).  For large |Im z| it tends to -i z.
    """
    z = complex(z)
    if z == 0:
        raise PoleError("log_ratio_A undefined at z = 0")
    a = (l + 1) - z * bessel_j_ratio(l, z)
    if not (isfinite(a.real) and isfinite(a.imag)):
        raise PoleError(f"j_{l}({z!r}) is numerically zero (pole of the ratio)")
    return a


def scaled_hankel_seq(lmax, z):
    """Scaled Hankel sequence Q_l(z) = h_l(z) z^(l+1)/(-i (2l-1)!!), l = 0..lmax+1.

    Satisfies the overflow-free recurrence
    Q_{l+1} = Q_l - z^2 Q_{l-1} / ((2l+1)(2l-1)), with Q_l -> 1 as z -> 0.
    One extra order is returned so TQ_l can be formed up to lmax.
    """
    z = complex(z)
    if z == 0:
        raise PoleError("scaled Hankel sequence undefined at z = 0")
    if -z.imag > _EXP_LIMIT:
        raise SpecFunOverflowError(0, z)
    e = cmath.exp(1j * z)
    q = [complex(0.0)] * (lmax + 2)
    q[0] = e
    if lmax + 1 >= 1:
        q[1] = e * (1.0 - 1j * z)
    z2 = z * z
    for l in range(1, lmax + 1):
        q[l + 1] = q[l] - z2 * q[l - 1] / ((2 * l + 1) * (2 * l - 1))
    return q


def scaled_tilde_hankel(q, l):
    """TQ_l = [z h_l]' z^(l+1)/(i l (2l-1)!!) from the Q sequence; l >= 1."""
    if l < 1:
        raise ValueError("TQ_l defined for l >= 1 only")
    return ((2 * l + 1) * q[l + 1] - (l + 1) * q[l]) / l


def scaled_bessel_seq(lmax, z):
    """Scaled Bessel sequences (P_l, TP_l, rho_l) for l = 0..lmax.

    P_l(z) = j_l(z) (2l+1)!!/z^l and TP_l(z) = [z j_l]' (2l+1)!!/((l+1) z^l)
    are built from the ratio chain P_l = P_{l-1} (2l+1) rho_{l-1}/z, which
    is stable for all z (rho_l from the downward ratio recurrence).
    """
    z = complex(z)
    if z == 0:
        raise PoleError("scaled Bessel sequence undefined at z = 0")
    if abs(z.imag) > _EXP_LIMIT:
        raise SpecFunOverflowError(0, z)
    rho = bessel_j_ratio_seq(lmax, z)
    p = [complex(0.0)] * (lmax + 1)
    tp = [complex(0.0)] * (lmax + 1)
    p[0] = cmath.sin(z) / z
    tp[0] = p[0] * (1.0 - z * rho[0])
    for l in range(1, lmax + 1):
        p[l] = p[l - 1] * (2 * l + 1) * rho[l - 1] / z
        tp[l] = p[l] * (1.0 - z * rho[l] / (l + 1))
    return p, tp, rho
