"""Spectral series y(x) = sum_{k != 0} c_k h(x, lambda_k) and the two
projection solvers (initial-value and two-point problems)."""
import math
from dataclasses import dataclass, field
from numbers import Number

import numpy as np

from .errors import DegenerateMode, GridTooCoarse, NonDegeneracyViolated
from .quadrature import DEFAULT_CONFIG, QuadratureConfig
from .special_functions import eval_h
from .spectrum import DEFAULT_BETA, CharacteristicRoot, OrderInterval, roots

__all__ = [
    "DataFunction",
    "CauchyProblem",
    "BoundaryProblem",
    "SpectralSeries",
    "project_coefficient",
    "solve_cauchy",
    "solve_bvp",
    "evaluate_series",
    "evaluate_series_deriv",
]

DIVISION_FLOOR = 1e-12
UNIFORM_TOL = 1e-12
BUILTIN_KINDS = ("mode", "cosine", "constant")


def _modes(k, alphas, beta):
    return np.exp(2j * np.pi * k * np.asarray(alphas, dtype=float) / beta)


def simpson_weights(n, h):
    if n < 3 or n % 2 == 0:
        raise ValueError("composite Simpson needs an odd number (>= 3) of nodes")
    w = np.full(n, 2.0)
    w[1::2] = 4.0
    w[0] = w[-1] = 1.0
    return w * h / 3.0


@dataclass(frozen=True, eq=False)
class DataFunction:
    """The data phi(alpha) on [0, beta].

    Either a linear combination of builtin terms ``(kind, param, coef)`` with
    kind ``mode`` (exp(2 pi i k alpha / beta)), ``cosine`` (cos(2 pi k alpha / beta))
    or ``constant``, or samples on a uniform grid with an odd node count.
    """

    terms: tuple = ()
    alphas: np.ndarray = None
    values: np.ndarray = None

    @classmethod
    def mode(cls, k, scale=1.0):
        if int(k) != k or k == 0:
            raise ValueError("builtin mode index must be a nonzero integer")
        return cls(terms=(("mode", int(k), complex(scale)),))

    @classmethod
    def cosine(cls, k, scale=1.0):
        if int(k) != k or k < 1:
            raise ValueError("builtin cosine index must be a positive integer")
        return cls(terms=(("cosine", int(k), complex(scale)),))

    @classmethod
    def constant(cls, c):
        return cls(terms=(("constant", 0, complex(c)),))

    @classmethod
    def sampled(cls, alphas, values, beta=None):
        alphas = np.array(alphas, dtype=float)
        values = np.array(values, dtype=complex)
        if alphas.ndim != 1 or alphas.shape != values.shape:
            raise ValueError("alphas and values must be 1-D arrays of equal length")
        if alphas.size < 9:
            raise GridTooCoarse(f"sampled data needs at least 9 nodes, got {alphas.size}")
        if alphas.size % 2 == 0:
            raise ValueError(f"sampled data needs an odd number of nodes, got {alphas.size}")
        d = np.diff(alphas)
        if np.any(d <= 0):
            raise ValueError("alphas must be strictly ascending")
        if abs(alphas[0]) > UNIFORM_TOL:
            raise ValueError("alphas must start at 0")
        if np.max(np.abs(d - d.mean())) > UNIFORM_TOL:
            raise ValueError("alphas must be uniformly spaced")
        if not (np.all(np.isfinite(values.real)) and np.all(np.isfinite(values.imag))):
            raise ValueError("values must be finite")
        if beta is not None and abs(alphas[-1] - beta) > UNIFORM_TOL:
            raise ValueError(f"alphas must end at beta={beta!r}, got {alphas[-1]!r}")
        alphas.flags.writeable = False
        values.flags.writeable = False
        return cls(alphas=alphas, values=values)

    @property
    def is_sampled(self):
        return self.alphas is not None

    @property
    def is_real(self):
        if self.is_sampled:
            return bool(np.all(self.values.imag == 0.0))
        return all(kind != "mode" and coef.imag == 0.0 for kind, _, coef in self.terms)

    def check_interval(self, beta):
        if self.is_sampled and abs(self.alphas[-1] - beta) > UNIFORM_TOL:
            raise ValueError(f"sampled data ends at {self.alphas[-1]!r}, expected beta={beta!r}")

    def nodes(self, beta, default_points=65):
        """Natural evaluation points: the sample nodes, else a uniform grid."""
        if self.is_sampled:
            return self.alphas
        return np.linspace(0.0, beta, default_points)

    def evaluate(self, alphas, beta):
        """phi at ``alphas``; sampled data can only be read at its own nodes."""
        alphas = np.asarray(alphas, dtype=float)
        if self.is_sampled:
            idx = np.searchsorted(self.alphas, alphas)
            idx = np.clip(idx, 0, self.alphas.size - 1)
            if not np.allclose(self.alphas[idx], alphas, rtol=0.0, atol=UNIFORM_TOL):
                raise ValueError("sampled data can only be evaluated at its nodes")
            return self.values[idx]
        out = np.zeros(alphas.shape, dtype=complex)
        for kind, k, coef in self.terms:
            if kind == "mode":
                out += coef * _modes(k, alphas, beta)
            elif kind == "cosine":
                out += coef * np.cos(2.0 * np.pi * k * alphas / beta)
            else:
                out += coef
        return out

    def __add__(self, other):
        if not isinstance(other, DataFunction):
            return NotImplemented
        if self.is_sampled != other.is_sampled:
            raise TypeError("cannot add builtin and sampled data")
        if self.is_sampled:
            if self.alphas.shape != other.alphas.shape or np.any(self.alphas != other.alphas):
                raise ValueError("sampled data must share the grid to be added")
            return DataFunction.sampled(self.alphas, self.values + other.values)
        return DataFunction(terms=self.terms + other.terms)

    def __mul__(self, s):
        if not isinstance(s, Number):
            return NotImplemented
        if self.is_sampled:
            return DataFunction.sampled(self.alphas, self.values * s)
        return DataFunction(terms=tuple((kind, k, coef * s) for kind, k, coef in self.terms))

    __rmul__ = __mul__


def project_coefficient(phi, n, interval=OrderInterval(), config=DEFAULT_CONFIG):
    """int_0^beta phi(alpha) exp(-2 pi i n alpha / beta) dalpha.

    Closed form for builtin terms; composite Simpson on the sample grid
    otherwise.  ``config`` is accepted for interface symmetry.
    """
    beta = interval.beta if isinstance(interval, OrderInterval) else OrderInterval(interval).beta
    if int(n) != n or n == 0:
        raise ValueError("projection index must be a nonzero integer")
    if phi.is_sampled:
        phi.check_interval(beta)
        h = (phi.alphas[-1] - phi.alphas[0]) / (phi.alphas.size - 1)
        w = simpson_weights(phi.alphas.size, h)
        return complex(np.sum(w * phi.values * _modes(-n, phi.alphas, beta)))
    total = 0j
    for kind, k, coef in phi.terms:
        if kind == "mode" and k == n:
            total += coef * beta
        elif kind == "cosine" and abs(n) == k:
            total += coef * beta / 2.0
    return total


@dataclass(frozen=True, eq=False)
class SpectralSeries:
    """Truncated y(x) = sum_{0<|k|<=k_max} c_k h(x, lambda_k).

    h values are memoized per (x, k); the memo only ever holds values the
    quadrature would recompute identically.
    """

    coefficients: dict
    beta: float = DEFAULT_BETA
    config: QuadratureConfig = DEFAULT_CONFIG
    diagnostics: dict = field(default_factory=dict)
    _basis: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        coefs = {}
        for k, c in self.coefficients.items():
            if int(k) != k or k == 0:
                raise ValueError(f"coefficient keys must be nonzero integers, got {k!r}")
            coefs[int(k)] = complex(c)
        object.__setattr__(self, "coefficients", dict(sorted(coefs.items())))
        object.__setattr__(self, "beta", OrderInterval(self.beta).beta)

    @property
    def k_max(self):
        return max((abs(k) for k in self.coefficients), default=0)

    def root(self, k):
        return CharacteristicRoot(k, self.beta)

    def basis_value(self, x, k):
        key = (float(x), k)
        if key not in self._basis:
            self._basis[key] = eval_h(x, self.root(k), config=self.config)
        return self._basis[key]

    def _active(self):
        if not self.coefficients:
            return []
        cmax = max(abs(c) for c in self.coefficients.values())
        return [(k, c) for k, c in self.coefficients.items() if abs(c) >= 1e-16 * cmax and c != 0]

    def __call__(self, x):
        return evaluate_series(self, x)


def evaluate_series(s, x, config=None):
    """y(x) = sum_k c_k h(x, lambda_k)."""
    return sum((c * s.basis_value(x, k) for k, c in s._active()), 0j)


def evaluate_series_deriv(s, x, alpha, config=None):
    """D^alpha y(x) = sum_k c_k lambda_k^alpha h(x, lambda_k)."""
    alpha = float(alpha)
    if not (0.0 <= alpha <= s.beta):
        raise ValueError(f"alpha must lie in [0, {s.beta}], got {alpha!r}")
    return sum(
        (c * np.exp(2j * np.pi * k * alpha / s.beta) * s.basis_value(x, k) for k, c in s._active()),
        0j,
    )


def _check_common(phi, interval, k_max):
    if not isinstance(phi, DataFunction):
        raise TypeError("phi must be a DataFunction")
    if not isinstance(interval, OrderInterval):
        interval = OrderInterval(interval)
    if int(k_max) != k_max or k_max < 1:
        raise ValueError(f"k_max must be a positive integer, got {k_max!r}")
    phi.check_interval(interval.beta)
    return interval


@dataclass(frozen=True)
class CauchyProblem:
    """D^alpha y(a) = phi(alpha) for alpha in [0, beta]."""

    a: float
    phi: DataFunction
    interval: OrderInterval = OrderInterval()
    k_max: int = 16
    config: QuadratureConfig = DEFAULT_CONFIG

    def __post_init__(self):
        if not (math.isfinite(self.a) and self.a > 0.0):
            raise ValueError(f"a must be > 0, got {self.a!r}")
        object.__setattr__(self, "interval", _check_common(self.phi, self.interval, self.k_max))


@dataclass(frozen=True)
class BoundaryProblem:
    """a0 D^alpha y(a) + b0 D^alpha y(b) = phi(alpha) for alpha in [0, beta]."""

    a: float
    b: float
    a0: float
    b0: float
    phi: DataFunction
    interval: OrderInterval = OrderInterval()
    k_max: int = 16
    config: QuadratureConfig = DEFAULT_CONFIG

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b) and 0.0 < self.a < self.b):
            raise ValueError(f"need 0 < a < b, got a={self.a!r}, b={self.b!r}")
        if not (math.isfinite(self.a0) and math.isfinite(self.b0)):
            raise ValueError("a0 and b0 must be finite")
        if self.a0 == 0.0 and self.b0 == 0.0:
            raise ValueError("a0 and b0 cannot both vanish")
        object.__setattr__(self, "interval", _check_common(self.phi, self.interval, self.k_max))


def _diagnostics(phi, beta, k_max, projections, coefs, denominators, rebuild_weights):
    """Shared solver diagnostics.

    ``rebuild_weights[k]`` is what multiplies c_k lambda_k^alpha when the data
    is rebuilt from the series (h(a) or the boundary combination).
    """
    nodes = phi.nodes(beta)
    target = phi.evaluate(nodes, beta)
    rebuilt = np.zeros(nodes.shape, dtype=complex)
    for k, c in coefs.items():
        rebuilt += c * rebuild_weights[k] * _modes(k, nodes, beta)
    scale = float(np.max(np.abs(target))) if target.size else 0.0
    tail = max(abs(project_coefficient(phi, s * (k_max + 1), beta)) for s in (1, -1)) / beta
    zero = all(abs(p) <= 1e-14 * (1.0 + scale) * beta for p in projections.values())
    return {
        "min_denominator": min(abs(d) for d in denominators.values()),
        "neglected_tail": tail,
        "zero_projection": zero,
        "projection_residual": float(np.max(np.abs(rebuilt - target))),
    }


def solve_cauchy(p, degeneracy_floor=DIVISION_FLOOR):
    """c_n = P_n / (beta h(a, lambda_n)), P_n the projection of phi on mode n."""
    beta = p.interval.beta
    projections, coefs, h_a = {}, {}, {}
    for root in roots(beta, p.k_max):
        k = root.k
        h = eval_h(p.a, root, config=p.config)
        if abs(h) <= degeneracy_floor:
            raise DegenerateMode(k, abs(h))
        h_a[k] = h
        projections[k] = project_coefficient(p.phi, k, p.interval)
        coefs[k] = projections[k] / (beta * h)
    diag = _diagnostics(p.phi, beta, p.k_max, projections, coefs, h_a, h_a)
    diag["h_values"] = h_a
    out = SpectralSeries(coefs, beta, p.config, diag)
    out._basis.update({(float(p.a), k): v for k, v in h_a.items()})
    return out


def solve_bvp(p, degeneracy_floor=DIVISION_FLOOR):
    """c_m = P_m / (beta [a0 h(a, lambda_m) + b0 h(b, lambda_m)])."""
    beta = p.interval.beta
    projections, coefs, h_a, h_b, denom = {}, {}, {}, {}, {}
    for root in roots(beta, p.k_max):
        m = root.k
        h_a[m] = eval_h(p.a, root, config=p.config)
        h_b[m] = eval_h(p.b, root, config=p.config)
        d = p.a0 * h_a[m] + p.b0 * h_b[m]
        if abs(d) <= degeneracy_floor:
            raise NonDegeneracyViolated(m, abs(d))
        denom[m] = d
        projections[m] = project_coefficient(p.phi, m, p.interval)
        coefs[m] = projections[m] / (beta * d)
    diag = _diagnostics(p.phi, beta, p.k_max, projections, coefs, denom, denom)
    diag["h_values"] = h_a
    diag["h_values_b"] = h_b
    diag["denominators"] = denom
    out = SpectralSeries(coefs, beta, p.config, diag)
    out._basis.update({(float(p.a), k): v for k, v in h_a.items()})
    out._basis.update({(float(p.b), k): v for k, v in h_b.items()})
    return out
