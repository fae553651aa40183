"""Complex-plane special functions.

Complementary error function of complex argument, the Faddeeva function
w(z) = exp(-z^2) erfc(-iz), its large-argument series, and the (shifted)
Moshinsky function. Everything works on scalars in dimensionless units
(hbar = 2m = 1).

w(z) is evaluated by region:

    |z| < 1                  Maclaurin series
    1 <= |z| <= 12, Im z>=0  Weideman rational approximation (FFT coefficients)
    |z| > 12, Im z >= 0      Laplace continued fraction (modified Lentz)
    Im z < 0                 w(z) = 2 exp(-z^2) - w(-z)

erfc_c is built on w so that the half plane Re z >= 0 never needs the
reflection; Re z < 0 uses erfc(z) = 2 - erfc(-z).
"""

import cmath
import logging
import math
from functools import lru_cache
from typing import Tuple

import numpy as np
from scipy import fft as sp_fft

from .errors import DomainError, NonConvergenceError

log = logging.getLogger(__name__)

SQRT_PI = math.sqrt(math.pi)
SQRT_I = cmath.exp(0.25j * math.pi)

SERIES_RADIUS = 1.0
CONTINUED_FRACTION_RADIUS = 12.0
WEIDEMAN_TERMS = 36
ASYMPTOTIC_GUARD = 2.0

_CF_MAX_TERMS = 500
_CF_TOL = 1e-15
_LENTZ_TINY = 1e-300


def _require_finite(z: complex, name: str = "z") -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"{name} must be finite, got {z!r}")
    return z


def sqrt_it(t: float) -> complex:
    """Principal branch of sqrt(i t) for t > 0: sqrt(t) exp(i pi/4)."""
    return math.sqrt(t) * SQRT_I


def sqrt_minus_it(t: float) -> complex:
    """Principal branch of sqrt(-i t) for t > 0: sqrt(t) exp(-i pi/4)."""
    return math.sqrt(t) / SQRT_I


def _exp_minus_square(z: complex) -> complex:
    try:
        return cmath.exp(-z * z)
    except OverflowError:
        raise DomainError(f"exp(-z^2) is not representable for z = {z!r}") from None


# --- Region kernels ---

def _w_series(z: complex) -> complex:
    # w(z) = exp(-z^2) (1 + erf(iz)),  erf(iz) = (2i/sqrt(pi)) sum z^(2n+1) / (n! (2n+1))
    z2 = z * z
    power = z
    total = z
    n = 0
    while True:
        n += 1
        power *= z2 / n
        term = power / (2 * n + 1)
        total += term
        if abs(term) <= 1e-17 * abs(total) or n > 60:
            break
    return _exp_minus_square(z) * (1.0 + 2j * total / SQRT_PI)


@lru_cache(maxsize=4)
def _weideman_coefficients(terms: int) -> Tuple[float, np.ndarray]:
    samples = 2 * terms
    index = np.arange(-samples + 1.0, samples)
    scale = math.sqrt(terms / math.sqrt(2.0))
    theta = (math.pi / samples) * index
    nodes = scale * np.tan(0.5 * theta)
    values = np.empty(index.size + 1)
    values[0] = 0.0
    values[1:] = np.exp(-nodes * nodes) * (scale * scale + nodes * nodes)
    coefficients = np.real(sp_fft.fft(sp_fft.fftshift(values))) / (2 * samples)
    coefficients = coefficients[1:terms + 1][::-1].copy()
    log.debug(f"Weideman coefficients ready: {terms} terms, L = {scale:.6f}")
    return scale, coefficients


def _w_rational(z: complex) -> complex:
    scale, coefficients = _weideman_coefficients(WEIDEMAN_TERMS)
    denominator = scale - 1j * z
    mapped = (scale + 1j * z) / denominator
    poly = complex(np.polyval(coefficients, mapped))
    return 2.0 * poly / (denominator * denominator) + (1.0 / SQRT_PI) / denominator


def _w_continued_fraction(z: complex) -> complex:
    # w(z) = (i/sqrt(pi)) / (z - (1/2)/(z - 1/(z - (3/2)/(z - ...)))), Im z >= 0
    f = z if z != 0 else _LENTZ_TINY
    c = f
    d = 0.0
    for n in range(1, _CF_MAX_TERMS + 1):
        a_n = -0.5 * n
        d = z + a_n * d
        if d == 0:
            d = _LENTZ_TINY
        c = z + a_n / c
        if c == 0:
            c = _LENTZ_TINY
        d = 1.0 / d
        delta = c * d
        f *= delta
        if abs(delta - 1.0) < _CF_TOL:
            return 1j / (SQRT_PI * f)
    raise NonConvergenceError(f"continued fraction for w({z!r}) did not converge")


def _w_upper(z: complex) -> complex:
    if abs(z) > CONTINUED_FRACTION_RADIUS:
        return _w_continued_fraction(z)
    return _w_rational(z)


# --- Public API ---

def faddeeva_w(z: complex) -> complex:
    """Faddeeva function w(z) = exp(-z^2) erfc(-iz).

    Relative accuracy is about 1e-13 for |z| <= 12 and better than 1e-10
    out to |z| = 1e4. In the lower half plane the reflection
    w(z) = 2 exp(-z^2) - w(-z) is used; it raises DomainError only when
    exp(-z^2) itself overflows.
    """
    z = _require_finite(z)
    if abs(z) < SERIES_RADIUS:
        return _w_series(z)
    if z.imag >= 0.0:
        return _w_upper(z)
    return 2.0 * _exp_minus_square(z) - _w_upper(-z)


def erfc_c(z: complex) -> complex:
    """Complementary error function of a complex argument."""
    z = _require_finite(z)
    if z.real >= 0.0:
        return _exp_minus_square(z) * faddeeva_w(1j * z)
    return 2.0 - _exp_minus_square(z) * faddeeva_w(-1j * z)


def w_asymptotic(z: complex, m_max: int) -> complex:
    """Truncated large-argument series of w.

    Returns (i / (sqrt(pi) z)) * sum_{m=0}^{m_max} (2m-1)!! / (2 z^2)^m.
    In the upper half plane this approximates w(z); below the real axis it
    approximates w(z) - 2 exp(-z^2) = -w(-z), the part free of the
    exponentially large reflection term.

    Raises:
        DomainError: if |z| <= 2, where the series is useless.
    """
    z = _require_finite(z)
    if abs(z) <= ASYMPTOTIC_GUARD:
        raise DomainError(f"w_asymptotic needs |z| > {ASYMPTOTIC_GUARD}, got |z| = {abs(z):.6g}")
    if int(m_max) != m_max or m_max < 0:
        raise DomainError(f"m_max must be a non-negative integer, got {m_max!r}")

    inverse_two_z2 = 1.0 / (2.0 * z * z)
    term = 1.0 + 0j
    total = term
    for m in range(1, int(m_max) + 1):
        term *= (2 * m - 1) * inverse_two_z2
        total += term
    return 1j / (SQRT_PI * z) * total


def moshinsky(x: float, k: float, t: float, c: float = 0.0) -> complex:
    """Shifted Moshinsky function.

    Free evolution of exp(iky) truncated to y < c:
    (1/2) exp(ikx - ik^2 t) erfc[(x - c - 2kt) / (2 sqrt(it))].
    """
    if not (math.isfinite(t) and t > 0.0):
        raise DomainError(f"t must be > 0, got {t!r}")
    for name, value in (("x", x), ("k", k), ("c", c)):
        if not math.isfinite(value):
            raise DomainError(f"{name} must be finite, got {value!r}")
    argument = (x - c - 2.0 * k * t) / (2.0 * sqrt_it(t))
    phase = cmath.exp(1j * (k * x - k * k * t))
    return 0.5 * phase * erfc_c(argument)
