"""Initial wavefunctions psi(y, t=0) with compact or half-line support.

A Packet knows how to evaluate itself inside its support, how to hand out
one-sided boundary jets (value and derivatives taken from inside the
support) and, for compact supports, its Fourier counterpart
g(k) = (2 pi)^-1 int psi(y, 0) exp(-iky) dy.

Kinds:
    constant        A on [a, b] (a may be -inf)
    cosine-bridge   A cos(2 pi n (y - a) / (b - a))
    sine-bridge     A sin(pi n (y - a) / (b - a))
    plane-wave-sum  sum_n c_n exp(i k_n y) on [a, b] (a may be -inf)
    tanh-edge       [1 - tanh(y / xi)] / 2 on the whole line
    sampled         uniform samples on [a, b], cubic-spline interior
"""

import io
import logging
import math
from dataclasses import dataclass, field
from typing import Any, List, Optional, Tuple, Union

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import DepthUnsupportedError, InvalidParameterError, UnsupportedKindError

log = logging.getLogger(__name__)

KINDS = ("constant", "cosine-bridge", "sine-bridge", "plane-wave-sum", "tanh-edge", "sampled")
EXPONENTIAL_KINDS = ("constant", "cosine-bridge", "sine-bridge", "plane-wave-sum")

LEFT = "left"
RIGHT = "right"

MAX_ANALYTIC_DEPTH = 4
MAX_SAMPLED_DEPTH = 2
MIN_SAMPLES = 9
UNIFORM_TOL = 1e-6

Mode = Tuple[complex, float]
ArrayLike = Union[float, np.ndarray]


@dataclass(frozen=True)
class BoundaryJet:
    """One-sided value and derivatives of psi(y, 0) at a support edge."""
    position: float
    side: str
    values: Tuple[complex, ...]

    def __post_init__(self):
        if self.side not in (LEFT, RIGHT):
            raise InvalidParameterError("side", f"must be '{LEFT}' or '{RIGHT}', got {self.side!r}")

    @property
    def depth(self) -> int:
        return len(self.values) - 1

    def d(self, order: int) -> complex:
        """Derivative of the given order; zero past the stored depth."""
        return self.values[order] if order < len(self.values) else 0j


@dataclass(frozen=True)
class Packet:
    kind: str
    a: float
    b: float
    amplitude: complex = 1.0
    n: int = 1
    modes: Tuple[Mode, ...] = ()
    xi: float = 0.0
    sample_positions: Optional[np.ndarray] = field(default=None, compare=False, repr=False)
    sample_values: Optional[np.ndarray] = field(default=None, compare=False, repr=False)
    label: str = ""

    @property
    def half_line(self) -> bool:
        return math.isinf(self.a)

    @property
    def width(self) -> float:
        return self.b - self.a

    def describe(self) -> str:
        return self.label or f"{self.kind}[{self.a:g}, {self.b:g}]"

    # --- Evaluation ---

    def evaluate(self, y: ArrayLike) -> np.ndarray:
        """Value of psi(y, 0) inside the support (zero outside it)."""
        y = np.asarray(y, dtype=float)
        if self.kind == "tanh-edge":
            return (0.5 * (1.0 - np.tanh(y / self.xi))).astype(complex)
        inside = (y >= self.a) & (y <= self.b)
        if self.kind == "sampled":
            clipped = np.clip(y, self.a, self.b)
            values = _spline_pair(self)[0](clipped) + 1j * _spline_pair(self)[1](clipped)
        else:
            values = np.zeros(y.shape, dtype=complex)
            for coefficient, wavenumber in self.exponential_modes():
                values = values + coefficient * np.exp(1j * wavenumber * y)
        return np.where(inside, values, 0j)

    def exponential_modes(self) -> List[Mode]:
        """The packet written as sum_n c_n exp(i k_n y) on its support."""
        if self.kind == "constant":
            return [(complex(self.amplitude), 0.0)]
        if self.kind == "plane-wave-sum":
            return list(self.modes)
        if self.kind in ("cosine-bridge", "sine-bridge"):
            omega = self.angular_wavenumber()
            shift = np.exp(-1j * omega * self.a)
            if self.kind == "cosine-bridge":
                half = 0.5 * complex(self.amplitude)
                return [(half * shift, omega), (half / shift, -omega)]
            half = complex(self.amplitude) / 2j
            return [(half * shift, omega), (-half / shift, -omega)]
        raise UnsupportedKindError(f"{self.kind} packet has no exponential-mode form")

    def angular_wavenumber(self) -> float:
        if self.kind == "cosine-bridge":
            return 2.0 * math.pi * self.n / self.width
        if self.kind == "sine-bridge":
            return math.pi * self.n / self.width
        return 0.0

    def max_wavenumber(self) -> float:
        """Largest |k| present in the packet's interior variation."""
        if self.kind in EXPONENTIAL_KINDS:
            return max((abs(k) for _, k in self.exponential_modes()), default=0.0)
        if self.kind == "sampled":
            spacing = self.sample_positions[1] - self.sample_positions[0]
            return 0.25 * math.pi / spacing
        return 1.0 / self.xi


def _spline_pair(packet: Packet) -> Tuple[CubicSpline, CubicSpline]:
    cache = packet.__dict__.get("_splines")
    if cache is None:
        positions = packet.sample_positions
        values = packet.sample_values
        cache = (CubicSpline(positions, values.real), CubicSpline(positions, values.imag))
        object.__setattr__(packet, "_splines", cache)
    return cache


# --- Construction ---

def _positive_width(a: float, b: float, allow_half_line: bool) -> Tuple[float, float]:
    a, b = float(a), float(b)
    if math.isnan(a) or math.isnan(b) or math.isinf(b):
        raise InvalidParameterError("b", f"support bounds must be numbers with finite b, got [{a}, {b}]")
    if math.isinf(a) and not (allow_half_line and a < 0):
        raise InvalidParameterError("a", "half-line support is only available for constant and plane-wave-sum")
    if not a < b:
        raise InvalidParameterError("a", f"support needs a < b, got [{a}, {b}]")
    return a, b


def make_packet(kind: str, **params: Any) -> Packet:
    """Builds a Packet of the given kind.

    Args:
        kind: one of KINDS.
        **params: a, b, amplitude, n (bridges), modes (plane-wave-sum, a list
            of (coefficient, wavenumber) pairs), xi (tanh-edge), positions and
            values (sampled), label.

    Raises:
        InvalidParameterError: naming the offending field.
    """
    if kind not in KINDS:
        raise InvalidParameterError("kind", f"unknown packet kind {kind!r}; expected one of {', '.join(KINDS)}")
    label = str(params.get("label", ""))
    amplitude = complex(params.get("amplitude", 1.0))
    if not (math.isfinite(amplitude.real) and math.isfinite(amplitude.imag)):
        raise InvalidParameterError("amplitude", f"must be finite, got {amplitude!r}")

    if kind == "tanh-edge":
        xi = float(params.get("xi", 0.0))
        if not (math.isfinite(xi) and xi > 0):
            raise InvalidParameterError("xi", f"must be > 0, got {xi!r}")
        return Packet(kind=kind, a=-math.inf, b=math.inf, xi=xi, label=label)

    if kind == "sampled":
        positions = np.asarray(params.get("positions"), dtype=float)
        values = np.asarray(params.get("values"), dtype=complex)
        positions, values = validate_samples(positions, values)
        return Packet(kind=kind, a=float(positions[0]), b=float(positions[-1]),
                      sample_positions=positions, sample_values=values, label=label)

    allow_half_line = kind in ("constant", "plane-wave-sum")
    a, b = _positive_width(params.get("a", -1.0), params.get("b", 1.0), allow_half_line)

    if kind == "constant":
        return Packet(kind=kind, a=a, b=b, amplitude=amplitude, label=label)

    if kind in ("cosine-bridge", "sine-bridge"):
        n = params.get("n", 1)
        if isinstance(n, bool) or int(n) != n or int(n) < 1:
            raise InvalidParameterError("n", f"oscillation count must be a positive integer, got {n!r}")
        return Packet(kind=kind, a=a, b=b, amplitude=amplitude, n=int(n), label=label)

    modes: List[Mode] = []
    for index, pair in enumerate(params.get("modes", ())):
        try:
            coefficient, wavenumber = complex(pair[0]), float(pair[1])
        except (TypeError, ValueError, IndexError):
            raise InvalidParameterError("modes", f"entry {index} is not a (coefficient, wavenumber) pair: {pair!r}")
        if not (math.isfinite(coefficient.real) and math.isfinite(coefficient.imag) and math.isfinite(wavenumber)):
            raise InvalidParameterError("modes", f"entry {index} is not finite: {pair!r}")
        modes.append((coefficient, wavenumber))
    return Packet(kind=kind, a=a, b=b, modes=tuple(modes), label=label)


def validate_samples(positions: np.ndarray, values: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    if positions.ndim != 1 or positions.shape != values.shape:
        raise InvalidParameterError("samples", "positions and values must be 1-D arrays of equal length")
    if positions.size < MIN_SAMPLES:
        raise InvalidParameterError("samples", f"need at least {MIN_SAMPLES} points, got {positions.size}")
    if not (np.all(np.isfinite(positions)) and np.all(np.isfinite(values))):
        raise InvalidParameterError("samples", "positions and values must be finite")
    steps = np.diff(positions)
    if np.any(steps <= 0):
        raise InvalidParameterError("samples", "positions must be strictly increasing")
    mean_step = (positions[-1] - positions[0]) / (positions.size - 1)
    if np.max(np.abs(steps - mean_step)) > UNIFORM_TOL * mean_step:
        raise InvalidParameterError("samples", f"positions must be uniform to 1 part in {1 / UNIFORM_TOL:.0e}")
    # snapped so spline and spectrum share one spacing
    return np.linspace(positions[0], positions[-1], positions.size), values


def load_samples(path: str, label: str = "") -> Packet:
    """Reads a sampled packet from a two/three-column text file.

    Columns are position, real part and an optional imaginary part,
    whitespace or comma delimited; '#' starts a comment.
    """
    with open(path, "r", encoding="utf-8") as handle:
        text = handle.read().replace(",", " ")
    try:
        table = np.loadtxt(io.StringIO(text), ndmin=2)
    except ValueError as e:
        raise InvalidParameterError("samples", f"cannot parse '{path}': {e}")
    if table.shape[1] not in (2, 3):
        raise InvalidParameterError("samples", f"'{path}' must have 2 or 3 columns, found {table.shape[1]}")
    values = table[:, 1] + (1j * table[:, 2] if table.shape[1] == 3 else 0j)
    log.info(f"Loaded {table.shape[0]} samples from '{path}'")
    return make_packet("sampled", positions=table[:, 0], values=values, label=label or path)


# --- Boundary jets ---

def _analytic_derivative(packet: Packet, y: float, order: int) -> complex:
    total = 0j
    for coefficient, wavenumber in packet.exponential_modes():
        total += coefficient * (1j * wavenumber) ** order * np.exp(1j * wavenumber * y)
    return complex(total)


def _bridge_derivative(packet: Packet, y: float, order: int) -> complex:
    # A f^(j)(omega (y - a)) omega^j with f = cos or sin, exact at the edges.
    omega = packet.angular_wavenumber()
    phase = omega * (y - packet.a) + 0.5 * math.pi * order
    # Edge phases are multiples of pi/2; round so sin(pi) is exactly zero.
    quarter_turns = phase / (0.5 * math.pi)
    if abs(quarter_turns - round(quarter_turns)) < 1e-9:
        turns = int(round(quarter_turns)) % 4
        cosine = (1.0, 0.0, -1.0, 0.0)[turns]
        sine = (0.0, 1.0, 0.0, -1.0)[turns]
    else:
        cosine, sine = math.cos(phase), math.sin(phase)
    base = cosine if packet.kind == "cosine-bridge" else sine
    return complex(packet.amplitude) * omega ** order * base


def finite_difference_weights(order: int, points: int) -> np.ndarray:
    """One-sided forward stencil weights on offsets 0..points-1 (unit spacing)."""
    offsets = np.arange(points, dtype=float)
    vandermonde = np.vander(offsets, points, increasing=True).T
    rhs = np.zeros(points)
    rhs[order] = math.factorial(order)
    return np.linalg.solve(vandermonde, rhs)


def _sampled_derivative(packet: Packet, side: str, order: int) -> complex:
    positions, values = packet.sample_positions, packet.sample_values
    spacing = positions[1] - positions[0]
    points = order + 5
    weights = finite_difference_weights(order, points)
    if side == LEFT:
        window = values[:points]
        sign = 1.0
    else:
        window = values[::-1][:points]
        sign = (-1.0) ** order
    return complex(sign * np.dot(weights, window) / spacing ** order)


def boundary_jet(packet: Packet, side: str, depth: int = 2) -> BoundaryJet:
    """One-sided interior value and derivatives at a support edge.

    Raises:
        DepthUnsupportedError: depth above 4 (analytic) or 2 (sampled).
        UnsupportedKindError: tanh-edge packets and the open end of a half line.
    """
    if side not in (LEFT, RIGHT):
        raise InvalidParameterError("side", f"must be '{LEFT}' or '{RIGHT}', got {side!r}")
    if packet.kind == "tanh-edge":
        raise UnsupportedKindError("tanh-edge packets have no sharp boundary")
    limit = MAX_SAMPLED_DEPTH if packet.kind == "sampled" else MAX_ANALYTIC_DEPTH
    if depth < 0 or depth > limit:
        raise DepthUnsupportedError(f"{packet.kind} packets support jet depth up to {limit}, got {depth}")
    position = packet.a if side == LEFT else packet.b
    if math.isinf(position):
        raise UnsupportedKindError("a half-line packet has no left boundary")

    if packet.kind == "sampled":
        values = [_sampled_derivative(packet, side, order) for order in range(depth + 1)]
    elif packet.kind in ("cosine-bridge", "sine-bridge"):
        values = [_bridge_derivative(packet, position, order) for order in range(depth + 1)]
    else:
        values = [_analytic_derivative(packet, position, order) for order in range(depth + 1)]
    return BoundaryJet(position=position, side=side, values=tuple(values))


# --- Spectrum ---

def _segment_integral(q: np.ndarray, a: float, b: float) -> np.ndarray:
    # int_a^b exp(i q y) dy, stable as q (b - a) -> 0
    width = b - a
    z = 1j * q * width
    small = np.abs(z) < 1e-3
    safe = np.where(small, 1.0, z)
    ratio = np.where(small, 1.0 + z / 2.0 + z * z / 6.0 + z ** 3 / 24.0, (np.exp(safe) - 1.0) / safe)
    return width * np.exp(1j * q * a) * ratio


def spectrum(packet: Packet, k: ArrayLike) -> Union[complex, np.ndarray]:
    """Fourier counterpart g(k) = (2 pi)^-1 int_a^b psi(y, 0) exp(-iky) dy."""
    scalar = np.ndim(k) == 0
    k = np.atleast_1d(np.asarray(k, dtype=float))
    if packet.kind == "tanh-edge":
        raise UnsupportedKindError("tanh-edge spectrum is handled analytically by the edge module")
    if packet.half_line:
        raise UnsupportedKindError("spectrum needs a compact support")

    if packet.kind == "sampled":
        result = _sampled_spectrum(packet, k)
    else:
        result = np.zeros(k.shape, dtype=complex)
        for coefficient, wavenumber in packet.exponential_modes():
            result = result + coefficient * _segment_integral(wavenumber - k, packet.a, packet.b)
        result = result / (2.0 * math.pi)
    return complex(result[0]) if scalar else result


def _power_moments(theta: np.ndarray) -> np.ndarray:
    """int_0^1 v^p exp(i theta v) dv for p = 0..3, one row per power."""
    z = 1j * theta
    moments = np.empty((4, theta.size), dtype=complex)
    small = np.abs(theta) < 4.0
    # Taylor series near zero, upward recurrence elsewhere
    zs = z[small]
    for power in range(4):
        term = np.ones_like(zs)
        total = term / (power + 1)
        for n in range(1, 40):
            term = term * zs / n
            total = total + term / (n + power + 1)
        moments[power, small] = total
    zl = z[~small]
    ez = np.exp(zl)
    previous = (ez - 1.0) / zl
    moments[0, ~small] = previous
    for power in range(1, 4):
        previous = (ez - power * previous) / zl
        moments[power, ~small] = previous
    return moments


def _sampled_spectrum(packet: Packet, k: np.ndarray, chunk: int = 512) -> np.ndarray:
    # Exact transform of the cubic-spline interior, segment by segment.
    real, imag = _spline_pair(packet)
    coefficients = real.c + 1j * imag.c
    knots = packet.sample_positions[:-1]
    spacing = packet.sample_positions[1] - packet.sample_positions[0]
    moments = _power_moments(-k * spacing)
    out = np.zeros(k.shape, dtype=complex)
    for start in range(0, k.size, chunk):
        window = slice(start, start + chunk)
        phases = np.exp(-1j * k[window, None] * knots[None, :])
        for power in range(4):
            out[window] += spacing ** (power + 1) * moments[power, window] * (phases @ coefficients[3 - power])
    return out / (2.0 * math.pi)
