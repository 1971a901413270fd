"""Kernel backend selection.

The compiled core is preferred; set ``DISTORDER_PURE_PYTHON=1`` to force the
numpy implementation.
"""
import os

from . import _kernels_py

if os.environ.get("DISTORDER_PURE_PYTHON", "") not in ("", "0"):
    from . import _kernels_py as backend
    BACKEND = "python"
else:
    try:
        from . import _kernels_c as backend
        BACKEND = "compiled"
    except ImportError:
        from . import _kernels_py as backend
        BACKEND = "python"

rgamma = backend.rgamma
lgamma_pos = backend.lgamma_pos
h_integrand = backend.h_integrand
gl_weights = backend.gl_weights
# np.convolve beats the compiled double loop, so both backends use it
gl_convolve = _kernels_py.gl_convolve

__all__ = ["BACKEND", "rgamma", "lgamma_pos", "h_integrand", "gl_weights", "gl_convolve"]
