"""Low-level numerical kernels: complex error function and adaptive quadrature.

Both are self-contained so the rest of the package carries no dependency
beyond numpy.  Accuracy of the Faddeeva evaluator is enforced downstream by a
brute-force convolution cross-check rather than assumed here.
"""

import numpy as np

from .errors import DomainError, QuadratureError

__all__ = ["faddeeva", "faddeeva_derivative", "adaptive_gauss_kronrod"]

_SQRT_PI = np.sqrt(np.pi)


def _weideman_coefficients(n_terms):
    # Rational-series coefficients (Weideman's method): sample the real line
    # through a tangent map, recover Taylor coefficients of the mapped
    # function with one FFT.  Done once at import.
    m = 2 * n_terms
    idx = np.arange(-m + 1, m)
    pole = np.sqrt(n_terms / np.sqrt(2.0))
    theta = (np.pi / m) * idx
    t = pole * np.tan(0.5 * theta)
    samples = np.zeros(idx.size + 1)
    samples[1:] = np.exp(-t * t) * (pole * pole + t * t)
    coeffs = np.fft.fft(np.fft.fftshift(samples)).real / (2.0 * m)
    # highest order first, for polyval
    return pole, coeffs[1:n_terms + 1][::-1].copy()


_FADDEEVA_POLE, _FADDEEVA_COEFFS = _weideman_coefficients(48)


def faddeeva(z):
    """Scaled complex error function w(z) = exp(-z^2) erfc(-iz), Im(z) >= 0.

    Vectorized rational approximation; relative accuracy is far below 1e-10
    over the upper half plane including the real axis.
    """
    z = np.asarray(z, dtype=complex)
    if np.any(z.imag < 0):
        raise DomainError("faddeeva requires Im(z) >= 0")
    iz = 1j * z
    denom = _FADDEEVA_POLE - iz
    ratio = (_FADDEEVA_POLE + iz) / denom
    poly = np.polyval(_FADDEEVA_COEFFS, ratio)
    return 2.0 * poly / (denom * denom) + (1.0 / _SQRT_PI) / denom


def faddeeva_derivative(z, w=None):
    """dw/dz = -2 z w(z) + 2i/sqrt(pi); pass w to reuse a computed value."""
    z = np.asarray(z, dtype=complex)
    if w is None:
        w = faddeeva(z)
    return -2.0 * z * w + 2j / _SQRT_PI


# Gauss-Kronrod 7/15 nodes and weights on [-1, 1].
_GK_NODES = np.array([
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0, 0.207784955007898, 0.405845151377397,
    0.586087235467691, 0.741531185599394, 0.864864423359769,
    0.949107912342759, 0.991455371120813,
])
_GK_WEIGHTS_K = np.array([
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728, 0.204432940075298,
    0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529,
])
# embedded 7-point Gauss rule lives on the odd Kronrod nodes
_GK_WEIGHTS_G = np.zeros(15)
_GK_WEIGHTS_G[1::2] = [
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469, 0.381830050505119, 0.279705391489277,
    0.129484966168870,
]


def _gk15(func, a, b):
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    y = func(mid + half * _GK_NODES)
    i_k = half * float(_GK_WEIGHTS_K @ y)
    i_g = half * float(_GK_WEIGHTS_G @ y)
    # |K15 - G7| is a conservative bound on the K15 error
    return i_k, abs(i_k - i_g)


def adaptive_gauss_kronrod(func, a, b, rel_tol=1e-10, abs_tol=1e-30,
                           initial_intervals=1, max_intervals=2048):
    """Integrate a vectorized callable over [a, b] by adaptive bisection.

    Returns (value, error_bound).  Raises QuadratureError instead of
    silently returning a truncated result when the tolerance is unreachable.
    """
    if not b >= a:
        raise DomainError(f"invalid integration range [{a}, {b}]")
    if b == a:
        return 0.0, 0.0
    edges = np.linspace(a, b, initial_intervals + 1)
    intervals = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        val, err = _gk15(func, lo, hi)
        intervals.append((lo, hi, val, err))
    while True:
        total = sum(iv[2] for iv in intervals)
        total_err = sum(iv[3] for iv in intervals)
        if not np.isfinite(total):
            raise QuadratureError("integrand produced non-finite values")
        if total_err <= max(rel_tol * abs(total), abs_tol):
            return total, total_err
        if len(intervals) >= max_intervals:
            raise QuadratureError(
                f"no convergence after {len(intervals)} intervals "
                f"(error bound {total_err:.3e}, target "
                f"{max(rel_tol * abs(total), abs_tol):.3e})")
        worst = max(range(len(intervals)), key=lambda i: intervals[i][3])
        lo, hi, _, _ = intervals[worst]
        mid = 0.5 * (lo + hi)
        intervals[worst] = (lo, mid, *_gk15(func, lo, mid))
        intervals.append((mid, hi, *_gk15(func, mid, hi)))
