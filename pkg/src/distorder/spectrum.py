"""Characteristic function F(lambda) = int_0^beta lambda^alpha dalpha, its
roots lambda_k = exp(2 k pi i / beta) and the exponential family
alpha -> lambda_k^alpha used for projection."""
import cmath
import math
from dataclasses import dataclass

from .errors import DegenerateLattice
from .special_functions import log_lambda

__all__ = [
    "DEFAULT_BETA",
    "OrderInterval",
    "CharacteristicRoot",
    "char_fn",
    "roots",
    "mode_fn",
    "mode_inner_product",
]

DEFAULT_BETA = math.sqrt(2.0)
SERIES_THRESHOLD = 1e-4
SERIES_TERMS = 6
ROOT_TOL = 1e-12


@dataclass(frozen=True)
class OrderInterval:
    """The order range [0, beta]."""

    beta: float = DEFAULT_BETA

    def __post_init__(self):
        b = float(self.beta)
        if not (0.0 < b <= 2.0):
            raise ValueError(f"beta must lie in (0, 2], got {self.beta!r}")
        object.__setattr__(self, "beta", b)


def _as_beta(beta):
    if isinstance(beta, OrderInterval):
        return beta.beta
    return OrderInterval(beta).beta


@dataclass(frozen=True)
class CharacteristicRoot:
    """lambda_k = exp(i * 2 k pi / beta), carrying its unwrapped argument.

    The argument is what makes lambda_k^alpha = exp(2 k pi i alpha / beta);
    a principal-branch logarithm of ``value`` would not.
    """

    k: int
    beta: float = DEFAULT_BETA

    def __post_init__(self):
        if int(self.k) != self.k or self.k == 0:
            raise ValueError(f"root index must be a nonzero integer, got {self.k!r}")
        object.__setattr__(self, "k", int(self.k))
        object.__setattr__(self, "beta", _as_beta(self.beta))

    @property
    def theta(self):
        return 2.0 * math.pi * self.k / self.beta

    @property
    def log(self):
        return complex(0.0, self.theta)

    @property
    def value(self):
        return cmath.exp(self.log)

    def __complex__(self):
        return self.value

    def conjugate(self):
        return CharacteristicRoot(-self.k, self.beta)


def char_fn(lam, beta=DEFAULT_BETA):
    """F(lambda) = (lambda^beta - 1) / log(lambda).

    Near lambda = 1 the removable singularity is handled with the series of
    (e^{beta u} - 1)/u.
    """
    beta = _as_beta(beta)
    u = log_lambda(lam)
    if abs(u) < SERIES_THRESHOLD:
        term = complex(beta)
        total = term
        for j in range(2, SERIES_TERMS + 1):
            term *= beta * u / j
            total += term
        return total
    return (cmath.exp(beta * u) - 1.0) / u


def roots(beta=DEFAULT_BETA, k_max=16):
    """Roots for k = -k_max..k_max, k != 0, ascending in k.

    Raises DegenerateLattice when some lambda_k coincides with 1 (rational
    beta with small denominator).
    """
    beta = _as_beta(beta)
    if int(k_max) != k_max or k_max < 1:
        raise ValueError(f"k_max must be a positive integer, got {k_max!r}")
    out = []
    for k in range(-int(k_max), int(k_max) + 1):
        if k == 0:
            continue
        r = CharacteristicRoot(k, beta)
        if abs(r.value - 1.0) < ROOT_TOL:
            raise DegenerateLattice(f"lambda_{k} = exp(2*{k}*pi*i/{beta!r}) coincides with 1")
        res = abs(char_fn(r, beta))
        if res > ROOT_TOL:  # pragma: no cover
            raise DegenerateLattice(f"|F(lambda_{k})| = {res:.3e} exceeds {ROOT_TOL}")
        out.append(r)
    return out


def mode_fn(k, alpha, beta=DEFAULT_BETA):
    """lambda_k^alpha = exp(i 2 k pi alpha / beta)."""
    beta = _as_beta(beta)
    return cmath.exp(2j * math.pi * k * alpha / beta)


def mode_inner_product(k, n, beta=DEFAULT_BETA):
    """int_0^beta lambda_k^alpha conj(lambda_n^alpha) dalpha, in closed form."""
    beta = _as_beta(beta)
    return complex(beta) if k == n else 0j
