"""Reference propagators for the free Schroedinger equation (t > 0).

Three independent routes to psi(x, t):

    propagate_quadrature   Green-function integral, composite Gauss-Legendre
    propagate_spectral     exact spectrum g(k) evolved on a padded periodic domain
    exact_boundary_form    closed form for exponential-mode packets: per mode,
                           a difference of shifted Moshinsky functions

The kernel is K(u, t) = (4 pi i t)^(-1/2) exp(i u^2 / 4t) on the principal
branch. Dimensionless units hbar = 2m = 1.
"""

import cmath
import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Dict, Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy import fft as sp_fft
from scipy import special

from .complexfn import moshinsky, sqrt_it
from .config_loader import numerics_setting
from .errors import (DomainError, NonConvergenceError, PaddingInsufficientError,
                     PreconditionError, UnsupportedKindError)
from .packets import Packet, spectrum

log = logging.getLogger(__name__)

PRODUCERS = ("quadrature", "spectral", "exact-boundary", "series-0", "series-1", "series-2",
             "edge-regularized")

# Panel width keeps the phase change per panel at or below this.
MAX_PHASE_PER_PANEL = 0.5 * math.pi
HALF_LINE_MARGIN = 40.0
TAIL_TERMS = 8
PANEL_BLOCK = 1 << 16
SPECTRAL_EPS = 1e-9


@dataclass
class WaveField:
    """Sampled psi(x, t) on a grid plus where it came from."""
    grid: np.ndarray
    t: float
    values: np.ndarray
    producer: str
    error_estimate: float = 0.0
    diagnostics: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        self.grid = np.asarray(self.grid, dtype=float)
        self.values = np.asarray(self.values, dtype=complex)
        if self.producer not in PRODUCERS:
            raise ValueError(f"unknown producer {self.producer!r}")
        if self.grid.shape != self.values.shape:
            raise ValueError("grid and values must have the same shape")
        if self.grid.size > 1 and np.any(np.diff(self.grid) <= 0):
            raise ValueError("grid must be strictly increasing")
        if not np.all(np.isfinite(self.values)):
            raise ValueError(f"{self.producer} produced non-finite values")
        if not self.error_estimate >= 0:
            raise ValueError("error_estimate must be >= 0")

    @property
    def density(self) -> np.ndarray:
        return np.abs(self.values) ** 2


def _check_time(t: float) -> float:
    if not (math.isfinite(t) and t > 0.0):
        raise DomainError(f"t must be > 0, got {t!r}")
    return float(t)


def kernel_prefactor(t: float, literal_prefactor: bool = False) -> complex:
    """(4 pi i t)^(-1/2); the literal variant drops the sqrt(i)."""
    if literal_prefactor:
        return 1.0 / (2.0 * math.sqrt(math.pi * t))
    return 1.0 / (2.0 * math.sqrt(math.pi) * sqrt_it(t))


def free_kernel(u, t: float, literal_prefactor: bool = False):
    """Free propagator K(u, t) = (4 pi i t)^(-1/2) exp(i u^2 / 4t)."""
    t = _check_time(t)
    u = np.asarray(u, dtype=float)
    return kernel_prefactor(t, literal_prefactor) * np.exp(1j * u * u / (4.0 * t))


# --- Composite Gauss-Legendre ---

@lru_cache(maxsize=8)
def _gauss_nodes(order: int) -> Tuple[np.ndarray, np.ndarray]:
    return leggauss(order)


def integrate_panels(func: Callable[[np.ndarray], np.ndarray], lo: float, hi: float,
                     n_panels: int, order: int) -> complex:
    """Composite Gauss-Legendre on equal panels.

    Panel sums are reduced left to right with math.fsum so the result does
    not depend on block sizes.
    """
    nodes, weights = _gauss_nodes(order)
    width = (hi - lo) / n_panels
    half = 0.5 * width
    real_parts = []
    imag_parts = []
    for start in range(0, n_panels, PANEL_BLOCK):
        count = min(PANEL_BLOCK, n_panels - start)
        centers = lo + (np.arange(start, start + count) + 0.5) * width
        points = centers[:, None] + half * nodes[None, :]
        panel_sums = (np.asarray(func(points.ravel())).reshape(count, order) * weights).sum(axis=1) * half
        real_parts.extend(panel_sums.real.tolist())
        imag_parts.extend(panel_sums.imag.tolist())
    return complex(math.fsum(real_parts), math.fsum(imag_parts))


def integrate_oscillatory(func: Callable[[np.ndarray], np.ndarray], lo: float, hi: float,
                          max_rate: float, tol_abs: Optional[float] = None,
                          tol_rel: Optional[float] = None, max_doublings: Optional[int] = None,
                          order: Optional[int] = None, what: str = "integral") -> Tuple[complex, float]:
    """Integrates an oscillatory function by panel doubling.

    The starting panel count caps the phase change per panel at pi/2 given
    ``max_rate`` (largest |d phase / dy| on the interval). Panels double
    until two successive estimates differ by at most
    max(tol_abs, tol_rel * |estimate|).

    Returns:
        (estimate, |difference of the last two estimates|)

    Raises:
        NonConvergenceError: with the last two estimates.
    """
    tol_abs = numerics_setting('quad_tol') if tol_abs is None else tol_abs
    tol_rel = numerics_setting('quad_tol') if tol_rel is None else tol_rel
    max_doublings = numerics_setting('max_doublings') if max_doublings is None else max_doublings
    order = numerics_setting('gauss_order') if order is None else order

    if hi <= lo:
        return 0j, 0.0
    n_panels = max(4, int(math.ceil((hi - lo) * max_rate / MAX_PHASE_PER_PANEL)))
    previous = integrate_panels(func, lo, hi, n_panels, order)
    current = previous
    for _ in range(max_doublings):
        n_panels *= 2
        previous, current = current, integrate_panels(func, lo, hi, n_panels, order)
        difference = abs(current - previous)
        log.debug(f"{what}: {n_panels} panels, change {difference:.3e}")
        if difference <= max(tol_abs, tol_rel * abs(current)):
            return current, difference
    raise NonConvergenceError(f"{what} did not converge after {max_doublings} doublings",
                              (previous, current))


# --- Quadrature of the Green-function integral ---

def _half_line_cutoff(packet: Packet, x: float, t: float) -> float:
    k_max = max((abs(k) for _, k in packet.exponential_modes()), default=0.0)
    cutoff = -(HALF_LINE_MARGIN * math.sqrt(t) + abs(x) + 2.0 * k_max * t)
    return min(cutoff, packet.b - HALF_LINE_MARGIN * math.sqrt(t))


def _tail_correction(packet: Packet, x: float, t: float, cutoff: float,
                     prefactor: complex) -> Tuple[complex, float]:
    """int_{-inf}^{cutoff} K(x - y) psi(y) dy by repeated integration by parts.

    Per mode the phase is k y + (x - y)^2 / 4t with slope p at the cutoff
    and curvature s = 1/2t, giving
    exp(i phase) / (i p) * sum_m (2m - 1)!! (s / (i p^2))^m.
    """
    curvature = 1.0 / (2.0 * t)
    total = 0j
    bound = 0.0
    for coefficient, wavenumber in packet.exponential_modes():
        slope = wavenumber + (cutoff - x) / (2.0 * t)
        phase = wavenumber * cutoff + (x - cutoff) ** 2 / (4.0 * t)
        ratio = curvature / (1j * slope * slope)
        term = 1.0 + 0j
        series = term
        for m in range(1, TAIL_TERMS + 1):
            term *= (2 * m - 1) * ratio
            series += term
        leading = cmath.exp(1j * phase) / (1j * slope)
        total += coefficient * leading * series
        bound += abs(coefficient * leading * term)
    return prefactor * total, abs(prefactor) * bound


def quadrature_with_error(packet: Packet, x: float, t: float,
                          literal_prefactor: bool = False) -> Tuple[complex, float]:
    """Green-function quadrature plus its error estimate."""
    t = _check_time(t)
    if packet.kind == "tanh-edge":
        raise UnsupportedKindError("tanh-edge packets are propagated by the edge module")
    prefactor = kernel_prefactor(t, literal_prefactor)

    lo = packet.a
    tail, tail_bound = 0j, 0.0
    if packet.half_line:
        lo = _half_line_cutoff(packet, x, t)
        tail, tail_bound = _tail_correction(packet, x, t, lo, prefactor)

    hi = packet.b
    k_max = packet.max_wavenumber()
    max_rate = k_max + max(abs(lo - x), abs(hi - x)) / (2.0 * t)

    def integrand(y: np.ndarray) -> np.ndarray:
        return np.exp(1j * (x - y) ** 2 / (4.0 * t)) * packet.evaluate(y)

    body, change = integrate_oscillatory(integrand, lo, hi, max_rate,
                                         what=f"quadrature at x={x:g}, t={t:g}")
    return prefactor * body + tail, abs(prefactor) * change + tail_bound


def propagate_quadrature(packet: Packet, x: float, t: float,
                         literal_prefactor: bool = False) -> complex:
    """psi(x, t) = int K(x - y, t) psi(y, 0) dy by adaptive Gauss-Legendre.

    Half-line packets are cut at -L with L >= 40 sqrt(t) + |x| and the
    remaining tail is added analytically per exponential mode.
    """
    return quadrature_with_error(packet, x, t, literal_prefactor)[0]


# --- Closed form for exponential-mode packets ---

def exact_boundary_form(packet: Packet, x: float, t: float) -> complex:
    """Boundary formula in closed form: sum_n c_n [M(x; k_n, t, b) - M(x; k_n, t, a)].

    Raises:
        UnsupportedKindError: for packets without an exponential-mode form.
    """
    t = _check_time(t)
    if packet.kind not in ("constant", "cosine-bridge", "sine-bridge", "plane-wave-sum"):
        raise UnsupportedKindError(f"exact boundary form needs exponential modes, not {packet.kind}")
    total = 0j
    for coefficient, wavenumber in packet.exponential_modes():
        term = moshinsky(x, wavenumber, t, packet.b)
        if not packet.half_line:
            term -= moshinsky(x, wavenumber, t, packet.a)
        total += coefficient * term
    return total


# --- Spectral propagation ---

def evolve_samples(values: Sequence[complex], spacing: float, t: float) -> np.ndarray:
    """Free evolution of periodic samples: each DFT mode picks up exp(-i k^2 t)."""
    if not (math.isfinite(t) and t >= 0.0):
        raise DomainError(f"t must be >= 0, got {t!r}")
    values = np.asarray(values, dtype=complex)
    wavenumbers = 2.0 * math.pi * sp_fft.fftfreq(values.size, d=spacing)
    return sp_fft.ifft(sp_fft.fft(values) * np.exp(-1j * wavenumbers ** 2 * t))


def _uniform_spacing(grid: np.ndarray) -> float:
    if grid.ndim != 1 or grid.size < 2:
        raise PreconditionError("spectral propagation needs a uniform grid of at least 2 nodes")
    steps = np.diff(grid)
    spacing = (grid[-1] - grid[0]) / (grid.size - 1)
    if spacing <= 0 or np.max(np.abs(steps - spacing)) > 1e-9 * spacing:
        raise PreconditionError("spectral propagation needs a strictly increasing uniform grid")
    return spacing


def spectral_leakage(k_center: float, sigma: float, nyquist: float, k_wrap: float) -> float:
    """Window weight left at the Nyquist wavenumber plus at the slowest wrapping mode.

    A mode k moves amplitude a distance 2|k|t, so wrap-around images reach a
    node once 2|k|t exceeds the period minus the span of support and grid;
    ``k_wrap`` is that wavenumber.
    """
    aliased = 0.5 * math.erfc((nyquist - k_center) / sigma)
    wrapped = 0.5 * math.erfc((k_wrap - k_center) / sigma)
    return aliased + wrapped


def propagate_spectral(packet: Packet, grid: Sequence[float], t: float,
                       eps: float = SPECTRAL_EPS) -> WaveField:
    """Evolves the exact spectrum g(k) by exp(-i k^2 t) on a periodic domain.

    Only wavenumbers below a smooth cut-off are kept. The cut-off sits above
    every wavenumber that can reach a grid node from the support by time t,
    and the period is long enough that the cut-off modes cannot travel
    around the circle, so wrap-around images never reach a requested node.
    With this sizing the leakage sits near erfc(10)/2 at worst; only an eps
    tighter than that raises PaddingInsufficientError.
    """
    t = _check_time(t)
    grid = np.asarray(grid, dtype=float)
    if packet.kind == "tanh-edge" or packet.half_line:
        raise UnsupportedKindError("spectral propagation needs a compact support")
    dx = _uniform_spacing(grid)

    lo, hi = min(packet.a, grid[0]), max(packet.b, grid[-1])
    span = hi - lo
    sigma = max(1.0 / math.sqrt(t), 1.0)
    k_center = span / (2.0 * t) + packet.max_wavenumber() + 10.0 * sigma
    k_cut = k_center + 10.0 * sigma
    period_needed = 2.0 * span + 2.0 * t * (k_cut + 10.0 * sigma)

    refine = int(math.ceil(dx * k_cut / math.pi))
    spacing = dx / refine
    size = sp_fft.next_fast_len(max(int(math.ceil(period_needed / spacing)), (grid.size - 1) * refine + 1))
    period = size * spacing
    log.debug(f"spectral domain: N={size}, h={spacing:.3e}, L={period:.3f}, k_cut={k_cut:.1f}")

    wavenumbers = 2.0 * math.pi * sp_fft.fftfreq(size, d=spacing)
    nyquist = math.pi / spacing
    window = 0.5 * special.erfc((np.abs(wavenumbers) - k_center) / sigma)
    leakage = spectral_leakage(k_center, sigma, nyquist, (period - span) / (2.0 * t))
    if leakage > eps:
        raise PaddingInsufficientError(f"spectral padding leaves leakage {leakage:.2e} > {eps:.0e}")

    active = window > 1e-300
    coefficients = np.zeros(size, dtype=complex)
    coefficients[active] = (2.0 * math.pi / period) * window[active] * np.asarray(spectrum(packet, wavenumbers[active]))
    phased = coefficients * np.exp(1j * wavenumbers * grid[0] - 1j * wavenumbers ** 2 * t)
    domain_field = size * sp_fft.ifft(phased)

    norm_initial = period * float(np.sum(np.abs(coefficients) ** 2))
    norm_final = spacing * float(np.sum(np.abs(domain_field) ** 2))
    values = domain_field[::refine][:grid.size]
    roundoff = 1e-15 * math.log2(size) * float(np.max(np.abs(values), initial=0.0))
    return WaveField(grid=grid, t=t, values=values, producer="spectral",
                     error_estimate=leakage * float(np.max(np.abs(values), initial=1.0)) + roundoff,
                     diagnostics={"norm_initial": norm_initial, "norm_final": norm_final,
                                  "domain_size": size, "domain_length": period, "k_cut": k_cut})


# --- Grids ---

def propagate_field(packet: Packet, grid: Sequence[float], t: float, method: str) -> WaveField:
    """WaveField for one of: quadrature, spectral, exact-boundary."""
    grid = np.asarray(grid, dtype=float)
    if method == "spectral":
        return propagate_spectral(packet, grid, t)
    if method == "quadrature":
        results = [quadrature_with_error(packet, float(x), t) for x in grid]
        return WaveField(grid=grid, t=t, values=np.array([r[0] for r in results]), producer="quadrature",
                         error_estimate=max((r[1] for r in results), default=0.0))
    if method == "exact-boundary":
        values = np.array([exact_boundary_form(packet, float(x), t) for x in grid], dtype=complex)
        return WaveField(grid=grid, t=t, values=values, producer="exact-boundary",
                         error_estimate=1e-13 * float(np.max(np.abs(values), initial=0.0)))
    raise PreconditionError(f"unknown propagation method {method!r}")
