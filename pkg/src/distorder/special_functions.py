"""Reciprocal factorial kernels and the invariant function h(x, lambda).

``h(x, lambda) = int_{-1}^{inf} x^nu lambda^nu / nu! dnu`` with the
convention ``1/nu! = 0`` for ``nu <= -1``.  Powers ``lambda^nu`` are taken as
``exp(nu * log(lambda))``: for plain complex input the principal logarithm is
used, while objects exposing a ``log`` attribute (characteristic roots) supply
their own, unwrapped, argument.
"""
import cmath
import math

import numpy as np

from . import _kernels
from .errors import BranchCut, Overflow
from .quadrature import DEFAULT_CONFIG, QuadratureConfig, integrate

__all__ = [
    "QuadratureConfig",
    "DEFAULT_CONFIG",
    "reciprocal_factorial",
    "classical_reciprocal_gamma",
    "log_gamma",
    "log_lambda",
    "lambda_power",
    "tail_cutoff",
    "eval_h",
    "eval_h_err",
]

# |x lambda| beyond this makes the integrand peak (~e^{|x lambda|}) approach double overflow
MAX_SCALE = 600.0
EPS = float(np.finfo(float).eps)


def reciprocal_factorial(v):
    """1/v! = 1/Gamma(v + 1), defined as exactly 0 for v <= -1."""
    v = float(v)
    if not math.isfinite(v):
        raise ValueError(f"v must be finite, got {v!r}")
    if v <= -1.0:
        return 0.0
    return float(_kernels.rgamma(v + 1.0))


def classical_reciprocal_gamma(z):
    """1/Gamma(z) for any finite real z, zero at the poles of Gamma."""
    z = float(z)
    if not math.isfinite(z):
        raise ValueError(f"z must be finite, got {z!r}")
    return float(_kernels.rgamma(z))


def log_gamma(u):
    """log Gamma(u) for u >= 0.5."""
    if u < 0.5:
        raise ValueError("log_gamma is only provided for u >= 0.5")
    return float(_kernels.lgamma_pos(float(u)))


def log_lambda(lam):
    """Logarithm used for lambda^nu.

    Roots carry their own ``log``; anything else gets the principal branch
    and must stay off the non-positive real axis.
    """
    log = getattr(lam, "log", None)
    if log is not None:
        return complex(log)
    lam = complex(lam)
    if not (cmath.isfinite(lam)):
        raise ValueError(f"lambda must be finite, got {lam!r}")
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    if lam.imag == 0.0 and lam.real < 0.0:
        raise BranchCut(f"lambda={lam.real!r} lies on the branch cut of the principal logarithm")
    return cmath.log(lam)


def lambda_power(lam, alpha):
    """lambda^alpha on the same branch as ``log_lambda``."""
    return cmath.exp(alpha * log_lambda(lam))


def tail_cutoff(scale, tail_tol=DEFAULT_CONFIG.tail_tol):
    """Upper terminal T for int^inf scale^nu / Gamma(nu + 1) dnu.

    For nu >= T > e*scale the log-derivative of the integrand is at most
    log(scale / T) <= -1, so the neglected tail is bounded by
    scale^T / Gamma(T + 1) / log(T / scale).  T is at least 30.
    """
    if scale > MAX_SCALE:
        raise Overflow(f"|x*lambda| = {scale:.6g} exceeds the safe range {MAX_SCALE}")
    log_tol = math.log(tail_tol)
    T = max(30, math.ceil(math.e * scale) + 1)
    log_s = math.log(scale) if scale > 0 else -math.inf
    while True:
        bound = T * log_s - log_gamma(T + 1.0) - math.log(math.log(T / scale)) if scale > 0 else -math.inf
        if bound < log_tol:
            return T
        T += 1


def _check_x(x):
    x = float(x)
    if not (math.isfinite(x) and x > 0.0):
        raise ValueError(f"x must be finite and > 0, got {x!r}")
    return x


def _noise(T, logx, L):
    # rounding in exp(nu log x + nu L - lgamma) grows with the size of the exponent
    return 4.0 * EPS * (1.0 + T * (abs(logx) + abs(L.real) + abs(L.imag)) + abs(log_gamma(T + 1.0)))


def _panel_width(L):
    # about one oscillation of lambda^nu per initial panel
    return min(1.0, 2.0 * math.pi / abs(L.imag)) if L.imag else 1.0


def eval_h_err(x, lam, lower=-1.0, config=DEFAULT_CONFIG):
    """h(x, lambda) together with the quadrature error estimate.

    ``lower`` may be moved down to -3; the reciprocal factorial is zero below
    -1 so the value does not change.
    """
    x = _check_x(x)
    lower = float(lower)
    if lower < -3.0:
        raise ValueError(f"lower terminal must be >= -3, got {lower!r}")
    L = log_lambda(lam)
    T = tail_cutoff(x * math.exp(L.real), config.tail_tol)
    logx = math.log(x)
    start = max(lower, -1.0)
    if start >= T:
        return 0j, 0.0

    def f(nu):
        return _kernels.h_integrand(nu, logx, L, 0.0, False)

    return integrate(f, [start, T], config, max_width=_panel_width(L), noise=_noise(T, logx, L))


def eval_h(x, lam, lower=-1.0, config=DEFAULT_CONFIG):
    """h(x, lambda) = int_lower^inf x^nu lambda^nu / nu! dnu (complex)."""
    return eval_h_err(x, lam, lower, config)[0]


def eval_h_many(xs, lam, config=DEFAULT_CONFIG):
    """h at every abscissa of ``xs``."""
    return np.array([eval_h(x, lam, config=config) for x in np.asarray(xs, dtype=float)])
