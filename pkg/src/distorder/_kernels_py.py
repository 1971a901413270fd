"""Pure numpy implementation of the hot kernels.

Mirrors ``_kernels_c.pyx`` function for function; used when the compiled
core is unavailable or ``DISTORDER_PURE_PYTHON=1`` is set.
"""
import numpy as np

LANCZOS_G = 7.0
LANCZOS_COEF = np.array([
    0.99999999999980993227684700473478,
    676.520368121885098567009190444019,
    -1259.13921672240287047156078755283,
    771.3234287776530788486528258894,
    -176.61502916214059906584551354,
    12.507343278686904814458936853,
    -0.13857109526572011689554707,
    9.984369578019570859563e-6,
    1.50563273514931155834e-7,
])
SQRT_2PI = 2.5066282746310005024157652848110
LOG_SQRT_2PI = 0.91893853320467274178032973640562


def _lanczos_sum(z):
    # A(z) with Gamma(z + 1) = sqrt(2 pi) t^(z + 1/2) e^-t A(z), t = z + g + 1/2
    acc = np.full_like(z, LANCZOS_COEF[0])
    for i in range(1, 9):
        acc = acc + LANCZOS_COEF[i] / (z + i)
    return acc


def _sinpi(x):
    r = x - 2.0 * np.round(0.5 * x)  # r in [-1, 1]
    r = np.where(r > 0.5, 1.0 - r, r)
    r = np.where(r < -0.5, -1.0 - r, r)
    return np.sin(np.pi * r)


def lgamma_pos(u):
    """log Gamma(u) for u >= 0.5."""
    u = np.asarray(u, dtype=float)
    t = u + LANCZOS_G - 0.5
    return (u - 0.5) * np.log(t) - t + LOG_SQRT_2PI + np.log(_lanczos_sum(u - 1.0))


def _rgamma_hi(u):
    t = u + LANCZOS_G - 0.5
    return np.exp(t - (u - 0.5) * np.log(t)) / (SQRT_2PI * _lanczos_sum(u - 1.0))


def rgamma(x):
    """1/Gamma(x), exactly zero at the poles 0, -1, -2, ..."""
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    out = np.zeros_like(x)
    pole = (x <= 0.0) & (x == np.floor(x))
    hi = x >= 0.5
    lo = ~hi & ~pole
    with np.errstate(over="ignore", under="ignore"):
        out[hi] = _rgamma_hi(x[hi])
        xl = x[lo]
        out[lo] = _sinpi(xl) / (np.pi * _rgamma_hi(1.0 - xl))
    return out[0] if scalar else out


def h_integrand(nu, logx, L, shift, classical):
    """exp((nu - shift) log x + nu L) / Gamma(nu - shift + 1) at every node.

    With ``classical`` false the reciprocal factorial is forced to zero where
    its argument is <= 0.
    """
    nu = np.asarray(nu, dtype=float)
    u = nu - shift + 1.0
    e_re = (nu - shift) * logx + nu * L.real
    e_im = nu * L.imag
    out = np.zeros(nu.shape, dtype=complex)
    hi = u >= 0.5
    if classical:
        lo = ~hi
    else:
        lo = ~hi & (u > 0.0)
    with np.errstate(over="ignore", under="ignore"):
        mag = np.exp(e_re[hi] - lgamma_pos(u[hi]))
        out[hi] = mag * (np.cos(e_im[hi]) + 1j * np.sin(e_im[hi]))
        mag = rgamma(u[lo]) * np.exp(e_re[lo])
        out[lo] = mag * (np.cos(e_im[lo]) + 1j * np.sin(e_im[lo]))
    return out


def gl_weights(alpha, n):
    """First n Grunwald-Letnikov weights (-1)^j binom(alpha, j)."""
    j = np.arange(1, n, dtype=float)
    return np.cumprod(np.concatenate(([1.0], (j - 1.0 - alpha) / j)))[:n]


def gl_convolve(values, weights):
    """out[i] = sum_{j<=i} weights[j] * values[i - j]."""
    values = np.asarray(values, dtype=complex)
    n = values.shape[0]
    return np.convolve(values, np.asarray(weights, dtype=float)[:n])[:n]
