"""Adaptive composite Gauss-Legendre quadrature for complex integrands.

Panels are refined breadth-first so that each refinement level costs one
vectorized integrand call, whichever kernel backend is active.
"""
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import NonConvergent


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and panel limits shared by every improper/oscillatory integral."""

    abs_tol: float = 1e-12
    rel_tol: float = 1e-12
    tail_tol: float = 1e-14
    max_panels: int = 4096
    panel_order: int = 16

    def __post_init__(self):
        for name in ("abs_tol", "rel_tol", "tail_tol"):
            v = getattr(self, name)
            if not (0.0 < v < 1.0):
                raise ValueError(f"{name} must lie in (0, 1), got {v!r}")
        if int(self.max_panels) != self.max_panels or self.max_panels < 1:
            raise ValueError(f"max_panels must be a positive integer, got {self.max_panels!r}")
        if int(self.panel_order) != self.panel_order or self.panel_order < 1:
            raise ValueError(f"panel_order must be a positive integer, got {self.panel_order!r}")


DEFAULT_CONFIG = QuadratureConfig()
ROUNDOFF = 50 * np.finfo(float).eps


@lru_cache(maxsize=16)
def gauss_legendre(order):
    """Nodes and weights on [-1, 1]."""
    x, w = np.polynomial.legendre.leggauss(order)
    x.flags.writeable = False
    w.flags.writeable = False
    return x, w


def _panel_sums(func, a, b, x, w):
    half = 0.5 * (b - a)
    nodes = (half[:, None] * (x[None, :] + 1.0) + a[:, None]).ravel()
    vals = np.asarray(func(nodes), dtype=complex).reshape(a.size, x.size)
    return half * (vals @ w), half * (np.abs(vals) @ w)


def integrate(func, breakpoints, config=DEFAULT_CONFIG, max_width=1.0, noise=0.0):
    """Integrate a vectorized complex integrand over ``[breakpoints[0], breakpoints[-1]]``.

    Parameters
    ----------
    func : callable
        Maps a float64 array of nodes to an array of complex values.
    breakpoints : sequence of float
        Ascending points; the integrand may have kinks there.
    max_width : float
        Initial panels are no wider than this.
    noise : float
        Relative rounding noise of one integrand evaluation.  Panel errors
        below ``noise * int |f|`` are accepted since refinement cannot
        resolve them.

    Returns
    -------
    value : complex
    error : float
        Sum of the per-panel |two halves - whole| estimates.
    """
    pts = np.asarray(sorted(set(float(p) for p in breakpoints)))
    if pts.size < 2:
        return 0j, 0.0
    x, w = gauss_legendre(config.panel_order)
    edges = [pts[:1]]
    for lo, hi in zip(pts[:-1], pts[1:]):
        m = max(1, int(np.ceil((hi - lo) / max_width)))
        edges.append(np.linspace(lo, hi, m + 1)[1:])
    edges = np.concatenate(edges)
    a, b = edges[:-1], edges[1:]
    total_width = pts[-1] - pts[0]
    if a.size > config.max_panels:
        raise NonConvergent(f"initial partition needs {a.size} panels > max_panels={config.max_panels}")

    whole, _ = _panel_sums(func, a, b, x, w)
    accepted = 0j
    err_total = 0.0
    n_done = 0
    while a.size:
        mid = 0.5 * (a + b)
        halves, mags = _panel_sums(func, np.concatenate([a, mid]), np.concatenate([mid, b]), x, w)
        left, right = halves[: a.size], halves[a.size:]
        refined = left + right
        err = np.abs(refined - whole)
        tol = max(config.abs_tol, config.rel_tol * abs(accepted + refined.sum()))
        floor = max(ROUNDOFF, noise) * (mags[: a.size] + mags[a.size:])
        ok = err <= np.maximum(tol * (b - a) / total_width, floor)
        # panels too narrow to split further are accepted; the error sum records the damage
        ok |= (b - a) <= 64 * np.finfo(float).eps * max(1.0, float(np.max(np.abs(pts))))
        accepted += refined[ok].sum()
        err_total += float(err[ok].sum())
        n_done += int(ok.sum())
        keep = ~ok
        if n_done + 2 * int(keep.sum()) > config.max_panels:
            raise NonConvergent(
                f"quadrature on [{pts[0]:.6g}, {pts[-1]:.6g}] exceeded max_panels={config.max_panels}"
            )
        a, b = np.concatenate([a[keep], mid[keep]]), np.concatenate([mid[keep], b[keep]])
        whole = np.concatenate([left[keep], right[keep]])
    return complex(accepted), err_total
