# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot kernels: reciprocal gamma, the h-family integrand and the
Grunwald-Letnikov convolution. Same interface as ``_kernels_py``."""
import numpy as np
cimport numpy as cnp
from libc.math cimport exp, log, sin, cos, floor, round as cround, M_PI

cnp.import_array()

cdef double G = 7.0
cdef double SQRT_2PI = 2.5066282746310005024157652848110
cdef double LOG_SQRT_2PI = 0.91893853320467274178032973640562
cdef double[9] C = [
    0.99999999999980993227684700473478,
    676.520368121885098567009190444019,
    -1259.13921672240287047156078755283,
    771.3234287776530788486528258894,
    -176.61502916214059906584551354,
    12.507343278686904814458936853,
    -0.13857109526572011689554707,
    9.984369578019570859563e-6,
    1.50563273514931155834e-7,
]

LANCZOS_G = G


cdef inline double _lanczos_sum(double z) nogil:
    cdef double acc = C[0]
    cdef int i
    for i in range(1, 9):
        acc += C[i] / (z + i)
    return acc


cdef inline double _sinpi(double x) nogil:
    cdef double r = x - 2.0 * cround(0.5 * x)
    if r > 0.5:
        r = 1.0 - r
    elif r < -0.5:
        r = -1.0 - r
    return sin(M_PI * r)


cdef inline double _lgamma_pos(double u) nogil:
    cdef double t = u + G - 0.5
    return (u - 0.5) * log(t) - t + LOG_SQRT_2PI + log(_lanczos_sum(u - 1.0))


cdef inline double _rgamma_hi(double u) nogil:
    cdef double t = u + G - 0.5
    return exp(t - (u - 0.5) * log(t)) / (SQRT_2PI * _lanczos_sum(u - 1.0))


cdef inline double _rgamma(double x) nogil:
    if x >= 0.5:
        return _rgamma_hi(x)
    if x == floor(x):
        return 0.0
    return _sinpi(x) / (M_PI * _rgamma_hi(1.0 - x))


def lgamma_pos(u):
    """log Gamma(u) for u >= 0.5."""
    cdef const double[:] a = np.ascontiguousarray(np.atleast_1d(u), dtype=float).ravel()
    cdef Py_ssize_t i, n = a.shape[0]
    out = np.empty(n)
    cdef double[:] o = out
    for i in range(n):
        o[i] = _lgamma_pos(a[i])
    return out.reshape(np.shape(u)) if np.ndim(u) else out[0]


def rgamma(x):
    """1/Gamma(x), exactly zero at the poles 0, -1, -2, ..."""
    if np.ndim(x) == 0:
        return _rgamma(float(x))
    cdef const double[:] a = np.ascontiguousarray(x, dtype=float).ravel()
    cdef Py_ssize_t i, n = a.shape[0]
    out = np.empty(n)
    cdef double[:] o = out
    for i in range(n):
        o[i] = _rgamma(a[i])
    return out.reshape(np.shape(x))


def h_integrand(nu, double logx, L, double shift, bint classical):
    """exp((nu - shift) log x + nu L) / Gamma(nu - shift + 1) at every node."""
    cdef const double[:] v = np.ascontiguousarray(nu, dtype=float).ravel()
    cdef Py_ssize_t i, n = v.shape[0]
    cdef double lre = L.real, lim = L.imag
    cdef double u, ere, eim, mag
    out = np.zeros(n, dtype=complex)
    cdef double complex[:] o = out
    for i in range(n):
        u = v[i] - shift + 1.0
        ere = (v[i] - shift) * logx + v[i] * lre
        eim = v[i] * lim
        if u >= 0.5:
            mag = exp(ere - _lgamma_pos(u))
        elif classical or u > 0.0:
            mag = _rgamma(u) * exp(ere)
        else:
            continue
        o[i] = mag * cos(eim) + 1j * (mag * sin(eim))
    return out.reshape(np.shape(nu))


def gl_weights(double alpha, Py_ssize_t n):
    """First n Grunwald-Letnikov weights (-1)^j binom(alpha, j)."""
    out = np.empty(n)
    cdef double[:] w = out
    cdef Py_ssize_t j
    if n == 0:
        return out
    w[0] = 1.0
    for j in range(1, n):
        w[j] = w[j - 1] * (j - 1.0 - alpha) / j
    return out


def gl_convolve(values, weights):
    """out[i] = sum_{j<=i} weights[j] * values[i - j]."""
    cdef const double complex[:] v = np.ascontiguousarray(values, dtype=complex)
    cdef const double[:] w = np.ascontiguousarray(weights, dtype=float)
    cdef Py_ssize_t i, j, n = v.shape[0]
    cdef double complex acc
    out = np.empty(n, dtype=complex)
    cdef double complex[:] o = out
    with nogil:
        for i in range(n):
            acc = 0
            for j in range(i + 1):
                acc = acc + w[j] * v[i - j]
            o[i] = acc
    return out
