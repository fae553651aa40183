"""Command bodies: experiment configs in, CSV curves and summaries out.

Each cmd_* function takes a parsed ExperimentConfig, does its work through
the library modules and writes one CSV. They return a short summary dict
that main.py prints; errors propagate as ShutterError subclasses.
"""

import logging
import math
import os
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import yaml
from scipy import fft as sp_fft
from scipy import signal

from .boundary import (BoundaryPoint, SeriesOrder, multi_boundary_amplitude, points_from_packet,
                       series_field, short_time_single)
from .config_loader import get_config
from .edge import physical_window, propagate_step, propagate_tanh, regime_window_position
from .errors import (ConfigError, InvalidParameterError, JetMismatchError, NonConvergenceError,
                     TooFewFringesError)
from .oracle import WaveField, propagate_field
from .packets import (EXPONENTIAL_KINDS, KINDS, LEFT, RIGHT, BoundaryJet, Packet, boundary_jet,
                      load_samples, make_packet)
from .utils import write_csv

log = logging.getLogger(__name__)

CONFIG_KEYS = ("packet", "a", "b", "amplitude", "n", "k_modes", "xi", "t", "x_start", "x_end", "n_x",
               "method", "mode", "order", "output", "edges", "samples", "mass_kg", "distance_m",
               "edge_width_m")
EXACT_METHODS = ("quadrature", "spectral", "exact-boundary")
SERIES_METHODS = ("series-0", "series-1", "series-2")
METHODS = EXACT_METHODS + SERIES_METHODS
MODES = ("value", "derivative")

SELF_CHECK_TOL = 1e-7
JET_MATCH_TOL = 1e-9
MIN_FRINGES = 3
PEAK_PROMINENCE = 0.05
FFT_OVERSAMPLE = 16


# --- Config parsing ---

def parse_config_text(text: str) -> Dict[str, str]:
    """Flat ``key = value`` lines; '#' starts a comment."""
    raw: Dict[str, str] = {}
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.split('#', 1)[0].strip()
        if not line:
            continue
        if '=' not in line:
            raise ConfigError(line, f"line {number} is not of the form key = value")
        key, value = (part.strip() for part in line.split('=', 1))
        if key in raw:
            raise ConfigError(key, f"given twice (line {number})")
        raw[key] = value
    return raw


def _yaml_text(key: str, value: Any) -> str:
    if isinstance(value, (list, tuple)):
        if key == "k_modes":
            return ";".join(f"{item[0]}:{item[1]}" if isinstance(item, (list, tuple)) else str(item)
                            for item in value)
        return ",".join(str(item) for item in value)
    return "" if value is None else str(value)


def read_experiment_config(path: str) -> Dict[str, str]:
    """Reads an experiment config as raw strings keyed by name.

    ``.yaml``/``.yml`` files are YAML mappings; anything else is key = value text.
    """
    try:
        with open(path, 'r', encoding='utf-8') as handle:
            text = handle.read()
    except OSError as e:
        raise ConfigError("config", f"cannot read '{path}': {e}")
    if os.path.splitext(path)[1].lower() in ('.yaml', '.yml'):
        try:
            loaded = yaml.safe_load(text) or {}
        except yaml.YAMLError as e:
            raise ConfigError("config", f"cannot parse '{path}': {e}")
        if not isinstance(loaded, dict):
            raise ConfigError("config", f"'{path}' is not a mapping")
        return {str(key): _yaml_text(str(key), value) for key, value in loaded.items()}
    return parse_config_text(text)


def _split(value: str) -> List[str]:
    return [item.strip() for item in value.split(',') if item.strip()]


def _number(key: str, value: str, kind=float):
    try:
        return kind(value)
    except (TypeError, ValueError):
        raise ConfigError(key, f"cannot read {value!r} as {kind.__name__}")


def _finite(key: str, value: str) -> float:
    number = _number(key, value)
    if not math.isfinite(number):
        raise ConfigError(key, f"must be finite, got {value!r}")
    return number


def _modes(value: str) -> Tuple[Tuple[complex, float], ...]:
    modes = []
    for entry in (item.strip() for item in value.split(';')):
        if not entry:
            continue
        if ':' not in entry:
            raise ConfigError("k_modes", f"entry {entry!r} is not coefficient:wavenumber")
        coefficient, wavenumber = entry.rsplit(':', 1)
        modes.append((_number("k_modes", coefficient.replace(' ', ''), complex),
                      _number("k_modes", wavenumber, float)))
    return tuple(modes)


@dataclass
class ExperimentConfig:
    packets: Tuple[str, ...] = ("constant",)
    a: float = -1.0
    b: float = 1.0
    amplitudes: Tuple[complex, ...] = (1.0,)
    ns: Tuple[int, ...] = (1,)
    k_modes: Tuple[Tuple[complex, float], ...] = ()
    xi: Optional[float] = None
    times: Tuple[float, ...] = ()
    x_start: Optional[float] = None
    x_end: Optional[float] = None
    n_x: int = 64
    method: str = "quadrature"
    mode: str = "value"
    order: Optional[int] = None
    output: Optional[str] = None
    edges: Tuple[float, ...] = ()
    samples: Optional[str] = None
    mass_kg: Optional[float] = None
    distance_m: Optional[float] = None
    edge_width_m: Optional[float] = None
    provided: Tuple[str, ...] = field(default=(), repr=False)

    @property
    def grid(self) -> np.ndarray:
        return np.linspace(self.x_start, self.x_end, self.n_x)

    def require(self, *keys: str) -> None:
        for key in keys:
            if key not in self.provided:
                raise ConfigError(key, "is required for this command")

    def packet(self, index: int = 0) -> Packet:
        """Packet number ``index``; amplitude and n lists broadcast from one entry."""
        kind = self.packets[index]
        amplitude = self.amplitudes[min(index, len(self.amplitudes) - 1)]
        n = self.ns[min(index, len(self.ns) - 1)]
        try:
            if kind == "sampled":
                if not self.samples:
                    raise ConfigError("samples", "a sampled packet needs a samples file")
                return load_samples(self.samples)
            if kind == "tanh-edge":
                return make_packet(kind, xi=self.xi if self.xi is not None else 0.0)
            return make_packet(kind, a=self.a, b=self.b, amplitude=amplitude, n=n, modes=self.k_modes)
        except InvalidParameterError as e:
            raise ConfigError(e.field, str(e)) from e
        except OSError as e:
            raise ConfigError("samples", f"cannot read samples: {e}") from e


def build_config(raw: Dict[str, str]) -> ExperimentConfig:
    """Validates raw config strings into an ExperimentConfig.

    Raises:
        ConfigError: naming the first offending key.
    """
    for key in raw:
        if key not in CONFIG_KEYS:
            raise ConfigError(key, "unknown key")
    cfg = ExperimentConfig(n_x=int(get_config().get('experiments', {}).get('default_n_x', 64)),
                           provided=tuple(raw))

    if "packet" in raw:
        cfg.packets = tuple(_split(raw["packet"]))
        if not cfg.packets:
            raise ConfigError("packet", "needs a packet kind")
        for kind in cfg.packets:
            if kind not in KINDS:
                raise ConfigError("packet", f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    if "a" in raw:
        cfg.a = _number("a", raw["a"])
        if math.isnan(cfg.a) or cfg.a == math.inf:
            raise ConfigError("a", f"must be a number or -inf, got {raw['a']!r}")
    if "b" in raw:
        cfg.b = _finite("b", raw["b"])
    if "amplitude" in raw:
        cfg.amplitudes = tuple(_number("amplitude", item.replace(' ', ''), complex)
                               for item in _split(raw["amplitude"])) or (1.0,)
    if "n" in raw:
        cfg.ns = tuple(_number("n", item, int) for item in _split(raw["n"])) or (1,)
    if "k_modes" in raw:
        cfg.k_modes = _modes(raw["k_modes"])
    if "xi" in raw:
        cfg.xi = _number("xi", raw["xi"])
        if not (math.isfinite(cfg.xi) and cfg.xi > 0):
            raise ConfigError("xi", f"must be > 0, got {raw['xi']!r}")
    if "t" in raw:
        cfg.times = tuple(_number("t", item) for item in _split(raw["t"]))
        if not cfg.times:
            raise ConfigError("t", "needs at least one time")
        if any(not (math.isfinite(t) and t > 0) for t in cfg.times):
            raise ConfigError("t", f"all times must be > 0, got {raw['t']!r}")
    for key in ("x_start", "x_end", "mass_kg", "distance_m", "edge_width_m"):
        if key in raw:
            setattr(cfg, key, _finite(key, raw[key]))
    if "n_x" in raw:
        cfg.n_x = _number("n_x", raw["n_x"], int)
    if cfg.n_x < 2:
        raise ConfigError("n_x", f"needs at least 2 nodes, got {cfg.n_x}")
    if cfg.x_start is not None and cfg.x_end is not None and not cfg.x_end > cfg.x_start:
        raise ConfigError("x_end", "must exceed x_start")
    if "method" in raw:
        cfg.method = raw["method"]
        if cfg.method not in METHODS:
            raise ConfigError("method", f"unknown method {cfg.method!r}; expected one of {', '.join(METHODS)}")
    if "mode" in raw:
        cfg.mode = raw["mode"]
        if cfg.mode not in MODES:
            raise ConfigError("mode", f"must be value or derivative, got {cfg.mode!r}")
    if "order" in raw:
        cfg.order = _number("order", raw["order"], int)
        if cfg.order not in (0, 1, 2):
            raise ConfigError("order", f"must be 0, 1 or 2, got {cfg.order}")
    if "output" in raw:
        cfg.output = raw["output"] or None
    if "edges" in raw:
        cfg.edges = tuple(_finite("edges", item) for item in _split(raw["edges"]))
    if "samples" in raw:
        cfg.samples = raw["samples"] or None
    return cfg


def load_experiment(path: str) -> ExperimentConfig:
    cfg = build_config(read_experiment_config(path))
    log.info(f"Loaded experiment config '{path}' ({len(cfg.provided)} keys)")
    return cfg


def _output_path(cfg: ExperimentConfig, default: str) -> str:
    return cfg.output or default


def _require_grid(cfg: ExperimentConfig) -> None:
    cfg.require("x_start", "x_end")


def _require_times(cfg: ExperimentConfig) -> None:
    if not cfg.times:
        raise ConfigError("t", "needs at least one time")


# --- propagate ---

def _boundary_positions(packet: Packet) -> List[float]:
    return [c for c in (packet.a, packet.b) if math.isfinite(c)]


def _validity_ratios(positions: Sequence[float], grid: np.ndarray, t: float) -> np.ndarray:
    if not positions:
        return np.full(grid.shape, np.nan)
    nearest = np.min(np.abs(grid[:, None] - np.asarray(positions)[None, :]), axis=1)
    with np.errstate(divide='ignore'):
        return np.where(nearest > 0, t / np.maximum(nearest, 1e-300) ** 2, np.inf)


def _field(packet: Packet, grid: np.ndarray, t: float, method: str) -> WaveField:
    if method in SERIES_METHODS:
        return series_field(points_from_packet(packet, 2), grid, t, int(method[-1]))
    return propagate_field(packet, grid, t, method)


def _reference_method(packet: Packet, method: str) -> Optional[str]:
    candidates = ["quadrature"]
    if not packet.half_line:
        candidates.append("spectral")
    if packet.kind in EXPONENTIAL_KINDS:
        candidates.append("exact-boundary")
    others = [m for m in candidates if m != method]
    return others[0] if others else None


def self_check(packet: Packet, result: WaveField, method: str) -> float:
    """Recomputes ``result`` by an independent exact method and compares.

    Raises:
        NonConvergenceError: if the two disagree by more than 1e-7 plus
            their error estimates.
    """
    reference_method = _reference_method(packet, method)
    if reference_method is None:
        log.warning(f"No independent method for {packet.describe()}; self-check skipped")
        return 0.0
    reference = propagate_field(packet, result.grid, result.t, reference_method)
    deviation = float(np.max(np.abs(result.values - reference.values)))
    allowed = SELF_CHECK_TOL + result.error_estimate + reference.error_estimate
    log.info(f"Self-check {method} vs {reference_method} at t={result.t:g}: max deviation {deviation:.3e}")
    if deviation > allowed:
        raise NonConvergenceError(f"self-check failed: {method} and {reference_method} differ by "
                                  f"{deviation:.3e} > {allowed:.3e} at t={result.t:g}")
    return deviation


def cmd_propagate(cfg: ExperimentConfig, run_self_check: bool = False) -> Dict[str, Any]:
    """psi(x, t) on the config grid for every requested time."""
    _require_times(cfg)
    _require_grid(cfg)
    packet = cfg.packet(0)
    grid = cfg.grid
    positions = _boundary_positions(packet)
    if run_self_check and cfg.method in SERIES_METHODS:
        log.warning("Self-check compares exact methods only; ignored for series output")

    columns: Dict[str, List[Any]] = {name: [] for name in
                                     ("x", "t", "re", "im", "abs2", "method", "validity_ratio", "error_estimate")}
    max_deviation = 0.0
    for t in cfg.times:
        log.info(f"Propagating {packet.describe()} to t={t:g} by {cfg.method} on {grid.size} nodes")
        result = _field(packet, grid, t, cfg.method)
        if run_self_check and cfg.method in EXACT_METHODS:
            max_deviation = max(max_deviation, self_check(packet, result, cfg.method))
        ratios = _validity_ratios(positions, grid, t)
        if np.nanmax(ratios, initial=0.0) > 1e-2:
            log.warning(f"t={t:g}: validity ratio reaches {np.nanmax(ratios):.3g} on this grid")
        columns["x"].extend(grid.tolist())
        columns["t"].extend([t] * grid.size)
        columns["re"].extend(result.values.real.tolist())
        columns["im"].extend(result.values.imag.tolist())
        columns["abs2"].extend(result.density.tolist())
        columns["method"].extend([cfg.method] * grid.size)
        columns["validity_ratio"].extend(ratios.tolist())
        columns["error_estimate"].extend([result.error_estimate] * grid.size)

    output = _output_path(cfg, "propagate.csv")
    rows = write_csv(output, columns)
    summary = {"command": "propagate", "output": output, "rows": rows, "method": cfg.method}
    if run_self_check and cfg.method in EXACT_METHODS:
        summary["self_check_max_deviation"] = max_deviation
    return summary


# --- compare-interiors ---

def check_jets_match(first: Packet, second: Packet, mode: str) -> int:
    """Checks that both packets share their edge jets up to the mode's order.

    Returns:
        The highest matched derivative order (0 for value, 1 for derivative).

    Raises:
        JetMismatchError: naming the first order that differs.
    """
    if (first.a, first.b) != (second.a, second.b):
        raise JetMismatchError(0, f"supports differ: [{first.a:g}, {first.b:g}] vs [{second.a:g}, {second.b:g}]")
    depth = 0 if mode == "value" else 1
    sides = [RIGHT] if first.half_line else [LEFT, RIGHT]
    for side in sides:
        jet_one, jet_two = boundary_jet(first, side, depth), boundary_jet(second, side, depth)
        for order in range(depth + 1):
            one, two = jet_one.d(order), jet_two.d(order)
            if abs(one - two) > JET_MATCH_TOL * max(1.0, abs(one), abs(two)):
                raise JetMismatchError(order, f"{side} edge of {first.describe()} has {one:.6g}, "
                                              f"{second.describe()} has {two:.6g}")
    return depth


def interference_envelope(points: Sequence[BoundaryPoint], grid: np.ndarray, t: float, mode: str) -> np.ndarray:
    """Largest density the leading edge terms can add up to at each x."""
    total = np.zeros(grid.shape)
    for point in points:
        offset = np.abs(grid - point.position)
        if mode == "value":
            total += abs(point.jet.d(0)) / offset
        else:
            total += abs(point.jet.d(1)) / offset ** 2
    scale = t / math.pi if mode == "value" else 4.0 * t ** 3 / math.pi
    return scale * total ** 2


def cmd_compare_interiors(cfg: ExperimentConfig) -> Dict[str, Any]:
    """Two packets with matching edge jets: exact densities against each other and the series."""
    _require_times(cfg)
    _require_grid(cfg)
    if len(cfg.packets) != 2:
        raise ConfigError("packet", f"compare-interiors needs two packet kinds, got {len(cfg.packets)}")
    first, second = cfg.packet(0), cfg.packet(1)
    depth = check_jets_match(first, second, cfg.mode)
    log.info(f"Jets of {first.describe()} and {second.describe()} match to order {depth} ({cfg.mode} mode)")

    grid = cfg.grid
    power = 2 if cfg.mode == "value" else 4
    order = cfg.order if cfg.order is not None else depth
    points = points_from_packet(first, depth=max(depth, order))
    columns: Dict[str, List[Any]] = {name: [] for name in
                                     ("x", "t", "first", "second", "series", "relative_difference")}
    worst = 0.0
    for t in cfg.times:
        fields = []
        for packet in (first, second):
            method = "exact-boundary" if packet.kind in EXPONENTIAL_KINDS else "quadrature"
            fields.append(propagate_field(packet, grid, t, method))
        series = series_field(points, grid, t, order)
        compensation = grid ** power
        envelope = interference_envelope(points, grid, t, cfg.mode)
        difference = np.abs(fields[0].density - fields[1].density) / envelope
        worst = max(worst, float(np.max(difference)))
        columns["x"].extend(grid.tolist())
        columns["t"].extend([t] * grid.size)
        columns["first"].extend((fields[0].density * compensation).tolist())
        columns["second"].extend((fields[1].density * compensation).tolist())
        columns["series"].extend((series.density * compensation).tolist())
        columns["relative_difference"].extend(difference.tolist())

    output = _output_path(cfg, "compare_interiors.csv")
    metadata = {"first": first.describe(), "second": second.describe(), "mode": cfg.mode,
                "compensation": f"x^{power}"}
    rows = write_csv(output, columns, metadata)
    log.info(f"Max pairwise relative difference: {worst:.4%}")
    return {"command": "compare-interiors", "output": output, "rows": rows,
            "max_relative_difference": worst}


# --- edge-compare ---

def cmd_edge_compare(cfg: ExperimentConfig) -> Dict[str, Any]:
    """tanh edge against the sharp step and the order-n series at c = 0."""
    _require_times(cfg)
    _require_grid(cfg)
    cfg.require("xi")
    t = cfg.times[0]
    if len(cfg.times) > 1:
        log.warning(f"edge-compare uses the first time only (t={t:g})")
    window = regime_window_position(t, cfg.xi)
    order = cfg.order if cfg.order is not None else 0
    jet = BoundaryJet(0.0, RIGHT, (1.0 + 0j,))

    grid = cfg.grid
    columns: Dict[str, List[Any]] = {name: [] for name in
                                     ("x", "abs_tanh", "abs_step", "abs_approx", "relative_deviation", "window")}
    for x in grid.tolist():
        tanh_value = abs(propagate_tanh(x, t, cfg.xi))
        # series is singular on the edge itself
        approx = math.nan if x == jet.position else abs(short_time_single(jet, x, t, SeriesOrder.parse(order)))
        columns["x"].append(x)
        columns["abs_tanh"].append(tanh_value)
        columns["abs_step"].append(abs(propagate_step(x, t)))
        columns["abs_approx"].append(approx)
        columns["relative_deviation"].append(abs(tanh_value - approx) / approx)
        columns["window"].append("below" if x <= window.lower else "above" if x >= window.upper else "in")

    output = _output_path(cfg, "edge_compare.csv")
    metadata = {"x_min": window.lower, "x_max": window.upper, "xi": cfg.xi, "t": t}
    rows = write_csv(output, columns, metadata)
    return {"command": "edge-compare", "output": output, "rows": rows,
            "x_min": window.lower, "x_max": window.upper}


# --- fringe ---

@dataclass
class FringeAnalysis:
    minima: np.ndarray
    period: float
    peak_wavenumbers: np.ndarray
    peak_strengths: np.ndarray

    def strongest(self, count: int) -> np.ndarray:
        order = np.argsort(self.peak_strengths)[::-1][:count]
        return np.sort(self.peak_wavenumbers[order])


def _refine_minima(x: np.ndarray, y: np.ndarray, indices: np.ndarray) -> np.ndarray:
    # Parabola through each minimum and its neighbours.
    spacing = x[1] - x[0]
    left, centre, right = y[indices - 1], y[indices], y[indices + 1]
    curvature = left - 2.0 * centre + right
    shift = np.where(curvature > 0, 0.5 * (left - right) / np.where(curvature > 0, curvature, 1.0), 0.0)
    return x[indices] + shift * spacing


def fringe_analysis(x: Sequence[float], density: Sequence[float], compensate: bool = True) -> FringeAnalysis:
    """Fringe spacing and spectral content of a density curve.

    The period is the mean spacing of local minima (parabola-refined). The
    spectrum is taken of the x^2-compensated, mean-free density under a Hann
    window; peak positions are angular wavenumbers (radians per unit x).

    Raises:
        TooFewFringesError: fewer than three minima in the window.
    """
    x = np.asarray(x, dtype=float)
    density = np.asarray(density, dtype=float)
    minima_idx, _ = signal.find_peaks(-density)
    if minima_idx.size < MIN_FRINGES:
        raise TooFewFringesError(f"found {minima_idx.size} minima in [{x[0]:g}, {x[-1]:g}]; "
                                 f"need at least {MIN_FRINGES}")
    minima = _refine_minima(x, density, minima_idx)
    period = float(np.mean(np.diff(minima)))

    curve = density * x ** 2 if compensate else density.copy()
    curve = (curve - curve.mean()) * signal.windows.hann(curve.size)
    size = sp_fft.next_fast_len(FFT_OVERSAMPLE * curve.size)
    spacing = x[1] - x[0]
    magnitude = np.abs(sp_fft.rfft(curve, n=size))
    wavenumbers = 2.0 * math.pi * sp_fft.rfftfreq(size, d=spacing)
    peaks, properties = signal.find_peaks(magnitude, prominence=PEAK_PROMINENCE * magnitude.max())
    # Drop what is left of the slow 1/x^2 trend.
    keep = wavenumbers[peaks] > 4.0 * math.pi / (x[-1] - x[0])
    return FringeAnalysis(minima=minima, period=period, peak_wavenumbers=wavenumbers[peaks][keep],
                          peak_strengths=properties["prominences"][keep])


def fringe_points(cfg: ExperimentConfig) -> List[BoundaryPoint]:
    """Edges with d_0 = amplitude, signs alternating and +1 on the rightmost."""
    positions = sorted(cfg.edges) if cfg.edges else [c for c in (cfg.a, cfg.b) if math.isfinite(c)]
    amplitude = complex(cfg.amplitudes[0])
    count = len(positions)
    return [BoundaryPoint.from_values(c, 1 if (count - 1 - j) % 2 == 0 else -1, amplitude)
            for j, c in enumerate(positions)]


def predicted_wavenumbers(positions: Sequence[float], t: float) -> List[float]:
    """Pairwise separations over 2t, distinct and sorted."""
    separations = {round(abs(q - p), 12) for i, p in enumerate(positions) for q in positions[i + 1:]}
    return sorted(s / (2.0 * t) for s in separations if s > 0)


def cmd_fringe(cfg: ExperimentConfig) -> Dict[str, Any]:
    """Order-0 multi-edge density and its measured fringe structure."""
    _require_times(cfg)
    _require_grid(cfg)
    t = cfg.times[0]
    points = fringe_points(cfg)
    grid = cfg.grid
    density = np.array([abs(multi_boundary_amplitude(points, x, t)) ** 2 for x in grid.tolist()])
    analysis = fringe_analysis(grid, density)

    positions = [p.position for p in points]
    predicted = predicted_wavenumbers(positions, t)
    measured = analysis.strongest(len(predicted))
    output = _output_path(cfg, "fringe.csv")
    metadata = {"t": t, "edges": ",".join(f"{c:g}" for c in positions),
                "measured_period": analysis.period,
                "predicted_periods": ",".join(f"{2.0 * math.pi / k:.7g}" for k in predicted),
                "measured_wavenumbers": ",".join(f"{k:.7g}" for k in measured),
                "predicted_wavenumbers": ",".join(f"{k:.7g}" for k in predicted)}
    rows = write_csv(output, {"x": grid, "density": density, "compensated": density * grid ** 2}, metadata)
    log.info(f"Fringe period {analysis.period:.6g} from {analysis.minima.size} minima; "
             f"predicted {metadata['predicted_periods']}")
    return {"command": "fringe", "output": output, "rows": rows, "measured_period": analysis.period,
            "predicted_periods": [2.0 * math.pi / k for k in predicted],
            "measured_wavenumbers": measured.tolist(), "predicted_wavenumbers": predicted}


# --- window ---

def cmd_window(mass_kg: float, distance_m: float, edge_width_m: float) -> Dict[str, Any]:
    window = physical_window(mass_kg, distance_m, edge_width_m)
    return {"command": "window", "t_min_s": window.lower, "t_max_s": window.upper,
            "provenance": "t_min = 2 m xi x / hbar, t_max = 2 m x^2 / hbar (CODATA hbar)"}
