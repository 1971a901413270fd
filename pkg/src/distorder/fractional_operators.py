"""Fractional derivatives of h and the distributed-order operator.

Two readings of ``D^alpha`` are kept apart:

* ``termwise_deriv`` differentiates h under the integral with the factorial
  convention applied to the shifted kernel, which makes
  ``D^alpha h = lambda^alpha h`` exact;
* the classical Riemann-Liouville derivative (lower terminal 0) differs from
  it by ``correction_term``.  ``gl_deriv`` approximates the classical operator
  from samples and serves as the independent check.
"""
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import IndexOutOfRange
from .quadrature import DEFAULT_CONFIG, integrate
from .special_functions import (
    _check_x,
    _noise,
    _panel_width,
    classical_reciprocal_gamma,
    lambda_power,
    log_lambda,
    tail_cutoff,
)

__all__ = [
    "GridFunction",
    "termwise_deriv",
    "correction_term",
    "classical_deriv",
    "rl_head_term",
    "gl_deriv",
    "gl_deriv_all",
    "distributed_operator",
]

MAX_ORDER = 2.0


def _check_alpha(alpha):
    alpha = float(alpha)
    if not (0.0 <= alpha < MAX_ORDER):
        raise ValueError(f"alpha must lie in [0, {MAX_ORDER}), got {alpha!r}")
    return alpha


@dataclass(frozen=True)
class GridFunction:
    """Complex samples ``values[j] = f(x0 + j*step)``; x0 is the derivative's lower terminal."""

    x0: float
    step: float
    values: np.ndarray

    def __post_init__(self):
        if not (self.x0 >= 0.0 and math.isfinite(self.x0)):
            raise ValueError("x0 must be finite and >= 0")
        if not (self.step > 0.0 and math.isfinite(self.step)):
            raise ValueError("step must be finite and > 0")
        vals = np.array(self.values, dtype=complex)
        if vals.ndim != 1 or vals.size < 8:
            raise ValueError("GridFunction needs a 1-D array of at least 8 samples")
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    @classmethod
    def sample(cls, func, x0, step, n):
        xs = x0 + step * np.arange(n)
        return cls(x0, step, np.array([func(x) for x in xs], dtype=complex))

    @property
    def abscissae(self):
        return self.x0 + self.step * np.arange(self.values.size)


def termwise_deriv(x, lam, alpha, config=DEFAULT_CONFIG):
    """D^alpha h(x, lambda) by quadrature of the differentiated integrand.

    The integrand is x^(nu - alpha) lambda^nu / Gamma(nu - alpha + 1) over
    nu in [-1, inf), with the reciprocal factorial set to zero wherever
    nu - alpha <= -1.  It is never formed as lambda^alpha * h.
    """
    x = _check_x(x)
    alpha = _check_alpha(alpha)
    L = log_lambda(lam)
    T = tail_cutoff(x * math.exp(L.real), config.tail_tol)
    logx = math.log(x)

    def f(nu):
        return _kernels.h_integrand(nu, logx, L, alpha, False)

    pts = [-1.0, T + alpha]
    if alpha > 0.0:
        pts.append(alpha - 1.0)
    return integrate(f, pts, config, max_width=_panel_width(L), noise=_noise(T + alpha, logx, L))[0]


def correction_term(x, lam, alpha, config=DEFAULT_CONFIG):
    """What the factorial convention discards from the classical derivative.

    lambda^alpha * int_{-1-alpha}^{-1} x^mu lambda^mu / Gamma(mu + 1) dmu with
    the classical reciprocal gamma (negative on (-2, -1)).
    """
    x = _check_x(x)
    alpha = _check_alpha(alpha)
    if alpha == 0.0:
        return 0j
    L = log_lambda(lam)
    logx = math.log(x)

    def f(mu):
        return _kernels.h_integrand(mu, logx, L, 0.0, True)

    pts = [-1.0 - alpha, -1.0]
    if alpha > 1.0:
        pts.append(-2.0)
    val, _ = integrate(f, pts, config, max_width=0.25)
    return lambda_power(lam, alpha) * val


def classical_deriv(x, lam, alpha, config=DEFAULT_CONFIG):
    """Termwise Riemann-Liouville derivative of h without the convention."""
    return termwise_deriv(x, lam, alpha, config) + correction_term(x, lam, alpha, config)


def rl_head_term(x, x0, lam, alpha, config=DEFAULT_CONFIG):
    """Contribution of [0, x0] to the Riemann-Liouville derivative of h at x > x0.

    Equals int_0^x0 h(t) (x - t)^(-alpha-1) dt / Gamma(-alpha).  The kernel is
    smooth there, so (x - t)^(-alpha-1) is expanded in powers of t/x and each
    power integrated against t^nu exactly; the remaining nu-integral goes
    through the usual quadrature.  Zero for integer alpha (local operator).
    """
    x = _check_x(x)
    x0 = _check_x(x0)
    alpha = _check_alpha(alpha)
    if not x0 < x:
        raise ValueError("rl_head_term needs x0 < x")
    rg = classical_reciprocal_gamma(-alpha)
    if rg == 0.0:
        return 0j
    r = x0 / x
    coef = [1.0]
    m = 0
    # (alpha + 1)_m / m! * r^m, summed until negligible
    while coef[-1] > 1e-18 * sum(coef) or m < 4:
        m += 1
        coef.append(coef[-1] * (alpha + m) / m * r)
        if m > 20000:
            raise ValueError("x0/x too close to 1 for the head expansion")
    coef = np.array(coef)
    shifts = np.arange(coef.size) + 1.0
    L = log_lambda(lam)
    T = tail_cutoff(x0 * math.exp(L.real), config.tail_tol)
    logx0 = math.log(x0)

    def f(nu):
        base = _kernels.h_integrand(nu, logx0, L, 0.0, False)
        series = (coef[None, :] / (nu[:, None] + shifts[None, :])).sum(axis=1)
        return base * series

    val, _ = integrate(f, [-1.0, T], config, max_width=_panel_width(L), noise=_noise(T, logx0, L))
    return rg * x ** (-alpha - 1.0) * x0 * val


def gl_deriv(f, alpha, at_index):
    """Grunwald-Letnikov approximation of D^alpha f at ``f.x0 + at_index*f.step``.

    step^-alpha * sum_{j=0}^{at_index} w_j f[at_index - j] with
    w_0 = 1, w_j = w_{j-1} (j - 1 - alpha) / j.
    """
    alpha = _check_alpha(alpha)
    n = f.values.size
    if not (1 <= at_index < n):
        raise IndexOutOfRange(f"at_index must lie in [1, {n - 1}], got {at_index}")
    w = _kernels.gl_weights(alpha, at_index + 1)
    vals = f.values[at_index::-1]
    return complex(f.step ** (-alpha) * np.dot(w, vals))


def gl_deriv_all(f, alpha):
    """``gl_deriv`` at every index at once (index 0 included)."""
    alpha = _check_alpha(alpha)
    w = _kernels.gl_weights(alpha, f.values.size)
    return f.step ** (-alpha) * _kernels.gl_convolve(f.values, w)


def distributed_operator(y_deriv, beta, config=DEFAULT_CONFIG):
    """int_0^beta y_deriv(alpha) dalpha for a scalar callable ``y_deriv``."""
    beta = float(beta)
    if not (0.0 < beta <= MAX_ORDER):
        raise ValueError(f"beta must lie in (0, {MAX_ORDER}], got {beta!r}")

    def f(alphas):
        return np.array([y_deriv(float(a)) for a in alphas], dtype=complex)

    return integrate(f, [0.0, beta], config, max_width=beta / 4)[0]
