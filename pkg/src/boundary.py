"""Boundary-only short-time approximants.

At short times the free evolution of a packet with sharp edges is carried
entirely by the edges: each edge c contributes

    sqrt(i/pi) exp(i (x - c)^2 / 4t) S(x - c, t)

where S is a series in t^(1/2) / (x - c) built from the one-sided jet
(d_0, d_1, d_2) at c. The right edge of a support enters with sign +1 and
the left edge with -1.
"""

import logging
import math
from dataclasses import dataclass
from enum import IntEnum
from typing import List, Sequence

import numpy as np

from .complexfn import SQRT_I
from .errors import DomainError, InvalidParameterError, PreconditionError, SignPatternError
from .oracle import WaveField
from .packets import LEFT, RIGHT, BoundaryJet, Packet, boundary_jet

log = logging.getLogger(__name__)

SQRT_I_OVER_PI = SQRT_I / math.sqrt(math.pi)
VANISHING_VALUE_TOL = 1e-12
VALIDITY_WARNING = 1e-2


class SeriesOrder(IntEnum):
    ZERO = 0
    ONE = 1
    TWO = 2

    @classmethod
    def parse(cls, value) -> "SeriesOrder":
        try:
            return cls(int(value))
        except (TypeError, ValueError):
            raise InvalidParameterError("order", f"must be 0, 1 or 2, got {value!r}") from None


@dataclass(frozen=True)
class BoundaryPoint:
    """An edge of the support: position, sign in the boundary sum, and jet."""
    position: float
    sign: int
    jet: BoundaryJet

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise InvalidParameterError("sign", f"must be +1 or -1, got {self.sign!r}")
        if self.jet.position != self.position:
            raise InvalidParameterError("jet", "jet position does not match the boundary position")

    @classmethod
    def from_values(cls, position: float, sign: int, *values: complex) -> "BoundaryPoint":
        side = RIGHT if sign > 0 else LEFT
        return cls(position, sign, BoundaryJet(position, side, tuple(complex(v) for v in values)))


def points_from_packet(packet: Packet, depth: int = 2) -> List[BoundaryPoint]:
    """Signed boundary points of a single support, in increasing position."""
    points = []
    if not packet.half_line:
        points.append(BoundaryPoint(packet.a, -1, boundary_jet(packet, LEFT, depth)))
    points.append(BoundaryPoint(packet.b, 1, boundary_jet(packet, RIGHT, depth)))
    return points


def _check(x: float, t: float, positions: Sequence[float]) -> None:
    if not (math.isfinite(t) and t > 0.0):
        raise DomainError(f"t must be > 0, got {t!r}")
    if not math.isfinite(x):
        raise DomainError(f"x must be finite, got {x!r}")
    for c in positions:
        if x == c:
            raise DomainError(f"x = {x:g} sits on a boundary")


def _series(jet: BoundaryJet, offset: float, t: float, order: int) -> complex:
    d0, d1, d2 = jet.d(0), jet.d(1), jet.d(2)
    total = math.sqrt(t) / offset * d0
    if order >= 1:
        total += -2j * t ** 1.5 / offset ** 3 * (d0 + offset * d1)
    if order >= 2:
        total += -4.0 * t ** 2.5 / offset ** 5 * (3.0 * (d0 + offset * d1) + offset ** 2 * d2)
    return total


def _edge_term(jet: BoundaryJet, x: float, t: float, order: int) -> complex:
    offset = x - jet.position
    return SQRT_I_OVER_PI * np.exp(1j * offset * offset / (4.0 * t)) * _series(jet, offset, t, order)


def short_time_single(jet: BoundaryJet, x: float, t: float, order: int = SeriesOrder.ZERO) -> complex:
    """Short-time series of one edge truncated at ``order`` (0, 1 or 2).

    Raises:
        DomainError: x at the edge, or t <= 0.
    """
    order = SeriesOrder.parse(order)
    _check(x, t, (jet.position,))
    ratio = t / (x - jet.position) ** 2
    if ratio > VALIDITY_WARNING:
        log.debug(f"series evaluated at t/(x-c)^2 = {ratio:.3g}")
    return complex(_edge_term(jet, x, t, order))


def _pair(left: BoundaryPoint, right: BoundaryPoint, x: float, t: float):
    if not left.position < right.position:
        raise SignPatternError("left boundary must lie below the right boundary")
    if left.sign != -1 or right.sign != 1:
        raise SignPatternError("a support interval has sign -1 at its left edge and +1 at its right edge")
    _check(x, t, (left.position, right.position))
    return left.position, right.position


def two_boundary_amplitude(left: BoundaryPoint, right: BoundaryPoint, x: float, t: float) -> complex:
    a, b = _pair(left, right, x, t)
    prefactor = SQRT_I_OVER_PI * math.sqrt(t)
    right_term = np.exp(1j * (x - b) ** 2 / (4.0 * t)) / (x - b) * right.jet.d(0)
    left_term = np.exp(1j * (x - a) ** 2 / (4.0 * t)) / (x - a) * left.jet.d(0)
    return complex(prefactor * (right_term - left_term))


def interference_phase(a: float, b: float, x: float, t: float) -> float:
    """((x - b)^2 - (x - a)^2) / 4t written as (x - (a + b)/2)(a - b) / 2t."""
    return (x - 0.5 * (a + b)) * (a - b) / (2.0 * t)


def two_boundary_density(left: BoundaryPoint, right: BoundaryPoint, x: float, t: float) -> float:
    """|psi|^2 of the two-edge order-0 amplitude, with its interference term."""
    a, b = _pair(left, right, x, t)
    d_b, d_a = right.jet.d(0), left.jet.d(0)
    cross = np.exp(1j * interference_phase(a, b, x, t)) / ((x - b) * (x - a)) * d_b * np.conj(d_a)
    return float(t / math.pi * (abs(d_b) ** 2 / (x - b) ** 2 + abs(d_a) ** 2 / (x - a) ** 2
                                - 2.0 * cross.real))


def two_boundary_derivative_density(left: BoundaryPoint, right: BoundaryPoint, x: float, t: float) -> float:
    """Density of a packet that vanishes at both edges, carried by d_1.

    Raises:
        PreconditionError: if |d_0| exceeds 1e-12 at either edge.
    """
    a, b = _pair(left, right, x, t)
    for point in (left, right):
        if abs(point.jet.d(0)) > VANISHING_VALUE_TOL:
            raise PreconditionError(f"d_0 = {point.jet.d(0)} at x = {point.position:g} does not vanish")
    d_b, d_a = right.jet.d(1), left.jet.d(1)
    cross = np.exp(1j * interference_phase(a, b, x, t)) / ((x - b) ** 2 * (x - a) ** 2) * d_b * np.conj(d_a)
    return float(4.0 * t ** 3 / math.pi * (abs(d_b) ** 2 / (x - b) ** 4 + abs(d_a) ** 2 / (x - a) ** 4
                                           - 2.0 * cross.real))


def check_sign_pattern(points: Sequence[BoundaryPoint]) -> None:
    """Positions strictly increasing, signs alternating, +1 on the last point."""
    if not points:
        raise SignPatternError("at least one boundary point is required")
    for lower, upper in zip(points, points[1:]):
        if upper.position == lower.position:
            raise SignPatternError(f"coincident boundary points at x = {upper.position:g}")
        if upper.position < lower.position:
            raise SignPatternError("boundary points must be in increasing position")
        if upper.sign == lower.sign:
            raise SignPatternError("boundary signs must alternate")
    if points[-1].sign != 1:
        raise SignPatternError("the rightmost boundary must carry sign +1")


def multi_boundary_amplitude(points: Sequence[BoundaryPoint], x: float, t: float) -> complex:
    """Order-0 sum over all edges of a set of slits."""
    check_sign_pattern(points)
    _check(x, t, [p.position for p in points])
    total = 0j
    for point in points:
        offset = x - point.position
        total += point.sign * np.exp(1j * offset * offset / (4.0 * t)) / offset * point.jet.d(0)
    return complex(SQRT_I_OVER_PI * math.sqrt(t) * total)


def validity_ratio(points: Sequence[BoundaryPoint], x: float, t: float) -> float:
    """t / min_j (x - x_j)^2; the series needs this to be small."""
    nearest = min(abs(x - p.position) for p in points)
    return math.inf if nearest == 0 else t / nearest ** 2


def series_field(points: Sequence[BoundaryPoint], grid: Sequence[float], t: float,
                 order: int = SeriesOrder.ZERO) -> WaveField:
    """Signed sum of short_time_single over the edges, on a grid.

    The error estimate is the size of the first omitted order, taken as
    |psi| (2 t/(x - c)^2)^(order + 1) at the worst node.
    """
    order = SeriesOrder.parse(order)
    check_sign_pattern(points)
    grid = np.asarray(grid, dtype=float)
    values = np.array([sum(p.sign * short_time_single(p.jet, float(x), t, order) for p in points)
                       for x in grid], dtype=complex)
    ratios = np.array([validity_ratio(points, float(x), t) for x in grid])
    worst = float(np.max(ratios, initial=0.0))
    if worst > VALIDITY_WARNING:
        log.warning(f"series-{int(order)} field used at validity ratio {worst:.3g}")
    error = float(np.max(np.abs(values) * (2.0 * ratios) ** (int(order) + 1), initial=0.0))
    return WaveField(grid=grid, t=t, values=values, producer=f"series-{int(order)}",
                     error_estimate=error, diagnostics={"max_validity_ratio": worst})


def fringe_period(a: float, b: float, t: float) -> float:
    """Spacing in x of two-edge interference minima, 4 pi t / (b - a)."""
    if not b > a:
        raise InvalidParameterError("b", "must exceed a")
    return 4.0 * math.pi * t / (b - a)


def fringe_velocity(a: float, b: float, t: float) -> float:
    """d/dx of the interference phase, (a - b) / 2t."""
    if not (math.isfinite(t) and t > 0.0):
        raise DomainError(f"t must be > 0, got {t!r}")
    return (a - b) / (2.0 * t)
