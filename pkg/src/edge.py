"""Smooth edges: the tanh profile [1 - tanh(y/xi)]/2 against the sharp step.

The tanh spectrum is (1/2) delta(k) + i (xi/4) cosech(pi k xi / 2). Writing
the cosech part as a Gaussian-damped pole plus a remainder,

    (xi/4) cosech(z) = exp(-xi^2 k^2) / (2 pi k) + f(k),   z = pi k xi / 2

the pole part evolves in closed form into (1/2) erfc(x / (2 sqrt(xi^2 + it)))
and f is odd, regular at k = 0 and decays like exp(-z), so

    psi(x, t) = (1/2) erfc(x / (2 sqrt(xi^2 + it))) - 2 int_0^K f(k) sin(kx) exp(-ik^2 t) dk.

Past the cut-off K the remaining tail is added by one integration by parts.
"""

import cmath
import logging
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy import constants

from .complexfn import erfc_c, sqrt_it
from .errors import DomainError
from .oracle import integrate_oscillatory

log = logging.getLogger(__name__)

DECAY_CUTOFF = 16.0
PHASE_CUTOFF = 100.0
EDGE_TOL = 1e-10
SMALL_Z = 0.1

POSITION = "dimensionless-position"
SECONDS = "seconds"


@dataclass(frozen=True)
class RegimeWindow:
    """Range where the sharp-edge series describes a smooth edge."""
    lower: float
    upper: float
    units: str = POSITION

    def __post_init__(self):
        if self.lower < 0:
            raise DomainError(f"window lower bound must be >= 0, got {self.lower!r}")

    @property
    def empty(self) -> bool:
        return self.upper <= self.lower

    def contains(self, value: float) -> bool:
        return not self.empty and self.lower < value < self.upper

    def describe(self) -> str:
        state = " (empty)" if self.empty else ""
        return f"[{self.lower:.6g}, {self.upper:.6g}] {self.units}{state}"


def _require_positive(**values: float) -> None:
    for name, value in values.items():
        if not (math.isfinite(value) and value > 0.0):
            raise DomainError(f"{name} must be > 0, got {value!r}")


def _require_finite(**values: float) -> None:
    for name, value in values.items():
        if not math.isfinite(value):
            raise DomainError(f"{name} must be finite, got {value!r}")


def propagate_step(x: float, t: float) -> complex:
    """Free evolution of the step Theta(-y): (1/2) erfc(x / (2 sqrt(it)))."""
    _require_positive(t=t)
    _require_finite(x=x)
    return 0.5 * erfc_c(x / (2.0 * sqrt_it(t)))


# --- Regularised spectral integrand ---

def _cosech_minus_inverse(z: np.ndarray) -> np.ndarray:
    # z >= 0
    small = z < SMALL_Z
    safe = np.where(small, 1.0, z)
    decay = np.exp(-safe)
    large = -2.0 * decay / np.expm1(-2.0 * safe) - 1.0 / safe
    z2 = z * z
    series = z * (-1.0 / 6.0 + z2 * (7.0 / 360.0 - z2 * 31.0 / 15120.0))
    return np.where(small, series, large)


def _pole_remainder(k: np.ndarray, xi: float) -> np.ndarray:
    """f(k) = (xi/4) cosech(pi k xi/2) - exp(-xi^2 k^2) / (2 pi k) for k >= 0."""
    z = 0.5 * math.pi * xi * k
    safe = np.where(k > 0, k, 1.0)
    damping = np.where(k > 0, -np.expm1(-(xi * safe) ** 2) / (2.0 * math.pi * safe), 0.0)
    return 0.25 * xi * _cosech_minus_inverse(z) + damping


def _pole_remainder_slope(k: float, xi: float) -> float:
    z = 0.5 * math.pi * xi * k
    cosech = -2.0 * math.exp(-z) / math.expm1(-2.0 * z)
    coth = (1.0 + math.exp(-2.0 * z)) / -math.expm1(-2.0 * z)
    gaussian = math.exp(-(xi * k) ** 2)
    return (-0.125 * math.pi * xi * xi * cosech * coth
            + gaussian * (2.0 * (xi * k) ** 2 + 1.0) / (2.0 * math.pi * k * k))


def _tail(x: float, t: float, xi: float, cutoff: float) -> Tuple[complex, float]:
    """-2 int_K^inf f sin(kx) exp(-ik^2 t) dk, leading integration-by-parts term.

    sin(kx) exp(-ik^2 t) splits into exp(i phi) with phi = +-kx - k^2 t.
    """
    value = float(_pole_remainder(np.array([cutoff]), xi)[0])
    slope = _pole_remainder_slope(cutoff, xi)
    total = 0j
    bound = 0.0
    for direction in (1.0, -1.0):
        phase = direction * cutoff * x - cutoff * cutoff * t
        rate = direction * x - 2.0 * cutoff * t
        boundary = cmath.exp(1j * phase) / (1j * rate)
        total += direction * (-value * boundary)
        bound += abs(boundary / rate) * (abs(slope) + abs(value) * 2.0 * t / abs(rate))
    return -2.0 * total / 2j, bound


def propagate_tanh(x: float, t: float, xi: float) -> complex:
    """Free evolution of [1 - tanh(y/xi)] / 2.

    Raises:
        DomainError: t or xi not positive, x not finite.
        NonConvergenceError: if the k-quadrature does not settle.
    """
    _require_positive(t=t, xi=xi)
    _require_finite(x=x)
    smoothed_step = 0.5 * erfc_c(x / (2.0 * cmath.sqrt(xi * xi + 1j * t)))
    if x == 0.0:
        return smoothed_step

    decay_cutoff = DECAY_CUTOFF / xi
    cutoff = min(decay_cutoff, abs(x) / t + PHASE_CUTOFF / math.sqrt(t))
    max_rate = abs(x) + 2.0 * cutoff * t + 0.5 * math.pi * xi

    def integrand(k: np.ndarray) -> np.ndarray:
        return _pole_remainder(k, xi) * np.sin(k * x) * np.exp(-1j * k * k * t)

    body, change = integrate_oscillatory(integrand, 0.0, cutoff, max_rate, tol_abs=EDGE_TOL,
                                         tol_rel=EDGE_TOL, what=f"tanh edge at x={x:g}, t={t:g}")
    tail, bound = (0j, 0.0)
    if cutoff < decay_cutoff:
        tail, bound = _tail(x, t, xi, cutoff)
    log.debug(f"tanh edge x={x:g}: K={cutoff:.3g}, quadrature change {change:.2e}, tail bound {bound:.2e}")
    return smoothed_step - 2.0 * body + tail


def leading_difference(x: float, t: float, xi: float) -> complex:
    """Leading small-xi term of propagate_tanh - propagate_step.

    -(pi/48) xi^2 sqrt(pi/(it)) (ix/2t) exp(ix^2/4t), from expanding
    cosech(z) - 1/z = -z/6 + O(z^3) and integrating ik exp(ikx - ik^2 t).
    """
    _require_positive(t=t, xi=xi)
    _require_finite(x=x)
    if x == 0.0:
        return 0j
    gaussian = math.sqrt(math.pi) / sqrt_it(t)
    return -(math.pi / 48.0) * xi * xi * gaussian * (1j * x / (2.0 * t)) * cmath.exp(1j * x * x / (4.0 * t))


# --- Regime windows ---

def regime_window_position(t: float, xi: float) -> RegimeWindow:
    """Positions sqrt(t) < x < t/xi where a tanh edge looks sharp."""
    _require_positive(t=t, xi=xi)
    window = RegimeWindow(math.sqrt(t), t / xi, POSITION)
    if window.empty:
        log.warning(f"Regime window for t={t:g}, xi={xi:g} is empty: {window.describe()}")
    return window


def time_unit(mass_kg: float, length_m: float) -> float:
    """tau = 2 m L^2 / hbar, the time that corresponds to t = 1 at length scale L."""
    _require_positive(mass_kg=mass_kg, length_m=length_m)
    return 2.0 * mass_kg * length_m ** 2 / constants.hbar


def to_physical_time(t: float, mass_kg: float, length_m: float) -> float:
    return t * time_unit(mass_kg, length_m)


def physical_window(mass_kg: float, distance_m: float, edge_width_m: float) -> RegimeWindow:
    """Times 2 m xi x / hbar << t << 2 m x^2 / hbar, in seconds."""
    _require_positive(mass_kg=mass_kg, distance_m=distance_m, edge_width_m=edge_width_m)
    if edge_width_m >= distance_m:
        raise DomainError(f"edge width {edge_width_m:g} m must be below the distance {distance_m:g} m")
    lower = 2.0 * mass_kg * edge_width_m * distance_m / constants.hbar
    window = RegimeWindow(lower, time_unit(mass_kg, distance_m), SECONDS)
    log.info(f"Physical window for m={mass_kg:g} kg, x={distance_m:g} m, xi={edge_width_m:g} m: "
             f"{window.describe()}")
    return window
