import cmath
import math

import numpy as np
import pytest

from src.complexfn import moshinsky
from src.errors import (DomainError, NonConvergenceError, PaddingInsufficientError, PreconditionError,
                        UnsupportedKindError)
from src.oracle import (WaveField, evolve_samples, exact_boundary_form, free_kernel, integrate_oscillatory,
                        propagate_field, propagate_quadrature, propagate_spectral, quadrature_with_error,
                        spectral_leakage)
from src.packets import make_packet

GRID = np.linspace(-5.0, 20.0, 64)
TIMES = (0.01, 0.1, 1.0)


def truncated_plane_wave(k=1.0):
    return make_packet("plane-wave-sum", a=-math.inf, b=0.0, modes=[(1.0, k)])


def random_plane_wave_sums(count=3, seed=2024):
    rng = np.random.default_rng(seed)
    packets = []
    for _ in range(count):
        modes = [(complex(rng.normal(), rng.normal()), float(rng.uniform(-3, 3))) for _ in range(3)]
        packets.append(make_packet("plane-wave-sum", a=-1.0, b=1.0, modes=modes))
    return packets


class TestKernel:
    def test_principal_branch(self):
        u, t = 0.7, 0.3
        expected = cmath.exp(1j * u * u / (4 * t)) / cmath.sqrt(4j * math.pi * t)
        assert complex(free_kernel(u, t)) == pytest.approx(expected, rel=1e-14)

    def test_literal_prefactor_differs_by_constant_phase(self):
        u = np.linspace(-3, 3, 7)
        ratio = free_kernel(u, 0.2) / free_kernel(u, 0.2, literal_prefactor=True)
        np.testing.assert_allclose(ratio, cmath.exp(-0.25j * math.pi), rtol=1e-14)

    def test_rejects_non_positive_time(self):
        with pytest.raises(DomainError):
            free_kernel(1.0, 0.0)


class TestQuadrature:
    def test_matches_moshinsky(self):
        value = propagate_quadrature(truncated_plane_wave(), 2.0, 0.1)
        assert value == pytest.approx(moshinsky(2.0, 1.0, 0.1, 0.0), rel=1e-8)

    @pytest.mark.parametrize("t", TIMES)
    def test_moshinsky_equivalence_on_grid(self, t):
        packet = truncated_plane_wave()
        for x in GRID:
            exact = moshinsky(float(x), 1.0, t, 0.0)
            assert abs(propagate_quadrature(packet, float(x), t) - exact) <= 1e-6 * abs(exact)

    def test_literal_prefactor_fails_moshinsky(self):
        value = propagate_quadrature(truncated_plane_wave(), 2.0, 0.1, literal_prefactor=True)
        exact = moshinsky(2.0, 1.0, 0.1, 0.0)
        assert abs(value - exact) / abs(exact) > 0.5
        assert abs(value) == pytest.approx(abs(exact), rel=1e-8)

    def test_linearity(self):
        alpha, beta = 0.8 - 0.3j, -1.2 + 0.5j
        first = [(1.0, 1.0), (0.5j, -1.0)]
        second = [(2.0, 0.5), (-1.0, -1.0)]
        combined = [(alpha * c, k) for c, k in first] + [(beta * c, k) for c, k in second]
        p1, p2, p12 = (make_packet("plane-wave-sum", a=-1, b=1, modes=m) for m in (first, second, combined))
        x, t = 5.0, 0.05
        expected = alpha * propagate_quadrature(p1, x, t) + beta * propagate_quadrature(p2, x, t)
        assert propagate_quadrature(p12, x, t) == pytest.approx(expected, abs=1e-10)

    def test_short_time_interior(self):
        packet = make_packet("constant", a=-1, b=1)
        assert propagate_quadrature(packet, 0.0, 1e-6) == pytest.approx(1.0, abs=1e-3)

    def test_half_line_tail_is_small_and_recorded(self):
        value, error = quadrature_with_error(truncated_plane_wave(), 3.0, 0.5)
        assert error < 1e-9
        assert value == pytest.approx(moshinsky(3.0, 1.0, 0.5, 0.0), rel=1e-8)

    def test_sampled_packet(self):
        y = np.linspace(-1, 1, 2001)
        sampled = make_packet("sampled", positions=y, values=np.sin(0.5 * np.pi * (y + 1)))
        analytic = make_packet("sine-bridge", a=-1, b=1, n=1)
        assert propagate_quadrature(sampled, 6.0, 0.1) == pytest.approx(
            propagate_quadrature(analytic, 6.0, 0.1), abs=1e-6)

    def test_tanh_edge_is_not_integrated_here(self):
        with pytest.raises(UnsupportedKindError):
            propagate_quadrature(make_packet("tanh-edge", xi=0.2), 1.0, 1.0)

    def test_rejects_bad_time(self):
        with pytest.raises(DomainError):
            propagate_quadrature(make_packet("constant"), 1.0, -0.1)


class TestOscillatoryIntegrator:
    def test_smooth_oscillation(self):
        value, change = integrate_oscillatory(lambda y: np.exp(1j * 40.0 * y), 0.0, 1.0, 40.0)
        assert value == pytest.approx((cmath.exp(40j) - 1) / 40j, abs=1e-12)
        assert change <= 1e-9

    def test_reports_last_estimates(self):
        def step(y):
            return np.where(y > 1.0 / 3.0, 1.0, 0.0) + 0j

        with pytest.raises(NonConvergenceError) as info:
            integrate_oscillatory(step, 0.0, 1.0, 1.0, max_doublings=2)
        assert info.value.estimates is not None
        assert len(info.value.estimates) == 2

    def test_empty_interval(self):
        assert integrate_oscillatory(np.exp, 1.0, 1.0, 1.0) == (0j, 0.0)


class TestExactBoundaryForm:
    def test_empty_mode_list(self):
        packet = make_packet("plane-wave-sum", a=-1, b=1, modes=[])
        assert exact_boundary_form(packet, 3.0, 0.5) == 0

    def test_single_mode_matches_quadrature(self):
        packet = make_packet("plane-wave-sum", a=-1, b=1, modes=[(1.0, 1.0)])
        assert exact_boundary_form(packet, 4.0, 0.2) == pytest.approx(propagate_quadrature(packet, 4.0, 0.2),
                                                                      abs=1e-8)

    def test_zero_mode_matches_spectral(self):
        packet = make_packet("plane-wave-sum", a=-1, b=1, modes=[(1.0, 0.0)])
        grid = np.linspace(3.0, 20.0, 64)
        spectral = propagate_spectral(packet, grid, 0.05)
        exact = np.array([exact_boundary_form(packet, float(x), 0.05) for x in grid])
        np.testing.assert_allclose(spectral.values, exact, rtol=0, atol=1e-7)

    def test_half_line_uses_one_edge(self):
        assert exact_boundary_form(truncated_plane_wave(), 2.0, 0.1) == pytest.approx(moshinsky(2.0, 1.0, 0.1, 0.0),
                                                                              rel=1e-15)

    def test_bridges_are_exponential(self):
        packet = make_packet("cosine-bridge", a=-1, b=1, n=2)
        assert exact_boundary_form(packet, 7.0, 0.05) == pytest.approx(propagate_quadrature(packet, 7.0, 0.05),
                                                                       abs=1e-8)

    def test_sampled_unsupported(self):
        y = np.linspace(0, 1, 11)
        with pytest.raises(UnsupportedKindError):
            exact_boundary_form(make_packet("sampled", positions=y, values=y), 2.0, 0.1)


class TestSpectral:
    def test_constant_packet_against_quadrature(self):
        packet = make_packet("constant", a=-1, b=1)
        grid = np.linspace(3.0, 20.0, 64)
        spectral = propagate_spectral(packet, grid, 0.05)
        quadrature = np.array([propagate_quadrature(packet, float(x), 0.05) for x in grid])
        np.testing.assert_allclose(spectral.values, quadrature, rtol=0, atol=1e-7)

    @pytest.mark.parametrize("kind, params", [
        ("constant", {}),
        ("sine-bridge", {"n": 3}),
        ("plane-wave-sum", {"modes": [(1.0, 2.0), (0.5j, -1.0)]}),
    ])
    def test_norm_conserved(self, kind, params):
        packet = make_packet(kind, a=-1, b=1, **params)
        result = propagate_spectral(packet, np.linspace(-4, 4, 33), 0.3)
        diagnostics = result.diagnostics
        assert diagnostics["norm_final"] == pytest.approx(diagnostics["norm_initial"], rel=1e-10)

    def test_sampled_packet_against_quadrature(self):
        y = np.linspace(-1.0, 1.0, 201)
        sampled = make_packet("sampled", positions=y, values=np.sin(0.5 * np.pi * (y + 1.0)))
        grid = np.linspace(3.0, 8.0, 21)
        spectral = propagate_spectral(sampled, grid, 0.05)
        quadrature = np.array([propagate_quadrature(sampled, float(x), 0.05) for x in grid])
        np.testing.assert_allclose(spectral.values, quadrature, rtol=0, atol=1e-7)

    def test_padding_failure(self):
        packet = make_packet("constant", a=-1, b=1)
        with pytest.raises(PaddingInsufficientError):
            propagate_spectral(packet, np.linspace(2, 4, 8), 0.1, eps=0.0)

    def test_leakage_grows_as_wrap_distance_shrinks(self):
        far = spectral_leakage(100.0, 3.0, 130.0, 160.0)
        assert far < 1e-40
        assert spectral_leakage(100.0, 3.0, 130.0, 100.0) == pytest.approx(0.5, rel=1e-12)
        assert spectral_leakage(100.0, 3.0, 100.0, 160.0) == pytest.approx(0.5, rel=1e-12)

    def test_needs_uniform_grid(self):
        packet = make_packet("constant", a=-1, b=1)
        with pytest.raises(PreconditionError):
            propagate_spectral(packet, [1.0, 2.0, 4.0], 0.1)

    def test_half_line_unsupported(self):
        with pytest.raises(UnsupportedKindError):
            propagate_spectral(truncated_plane_wave(), GRID, 0.1)


@pytest.mark.parametrize("t", TIMES)
def test_oracle_triangle(t):
    for packet in random_plane_wave_sums():
        quadrature = propagate_field(packet, GRID, t, "quadrature").values
        spectral = propagate_field(packet, GRID, t, "spectral").values
        exact = propagate_field(packet, GRID, t, "exact-boundary").values
        assert np.max(np.abs(quadrature - spectral)) <= 1e-7
        assert np.max(np.abs(quadrature - exact)) <= 1e-7
        assert np.max(np.abs(spectral - exact)) <= 1e-7


class TestEvolveSamples:
    def test_round_trip_at_zero_time(self):
        y = np.linspace(-1, 1, 256, endpoint=False)
        samples = np.sin(0.5 * np.pi * (y + 1)).astype(complex)
        np.testing.assert_allclose(evolve_samples(samples, y[1] - y[0], 0.0), samples, atol=1e-12)

    def test_semigroup(self):
        y = np.linspace(-10, 10, 512, endpoint=False)
        samples = np.exp(-y ** 2 + 2j * y)
        spacing = y[1] - y[0]
        stepped = evolve_samples(evolve_samples(samples, spacing, 0.2), spacing, 0.3)
        np.testing.assert_allclose(stepped, evolve_samples(samples, spacing, 0.5), atol=1e-10)

    def test_norm(self):
        rng = np.random.default_rng(5)
        samples = rng.normal(size=128) + 1j * rng.normal(size=128)
        evolved = evolve_samples(samples, 0.1, 2.0)
        assert np.sum(np.abs(evolved) ** 2) == pytest.approx(np.sum(np.abs(samples) ** 2), rel=1e-10)

    def test_rejects_negative_time(self):
        with pytest.raises(DomainError):
            evolve_samples(np.ones(8), 0.1, -1.0)


class TestWaveField:
    def test_density(self):
        wave = WaveField(grid=[0.0, 1.0], t=0.1, values=[1j, 2.0], producer="quadrature")
        np.testing.assert_allclose(wave.density, [1.0, 4.0])

    def test_rejects_unknown_producer(self):
        with pytest.raises(ValueError):
            WaveField(grid=[0.0], t=0.1, values=[0j], producer="guess")

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            WaveField(grid=[0.0, 1.0], t=0.1, values=[np.nan, 0.0], producer="spectral")

    def test_rejects_unsorted_grid(self):
        with pytest.raises(ValueError):
            WaveField(grid=[1.0, 0.0], t=0.1, values=[0j, 0j], producer="spectral")

    def test_unknown_method(self):
        with pytest.raises(PreconditionError):
            propagate_field(make_packet("constant"), [1.0, 2.0], 0.1, "guess")
