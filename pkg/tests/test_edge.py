import logging
import math

import numpy as np
import pytest
from scipy import constants

from src.edge import (POSITION, SECONDS, RegimeWindow, leading_difference, physical_window, propagate_step,
                      propagate_tanh, regime_window_position, time_unit, to_physical_time)
from src.errors import DomainError
from src.oracle import propagate_quadrature
from src.packets import make_packet

RB87_KG = 1.443e-25


class TestStep:
    def test_half_at_origin(self):
        assert propagate_step(0.0, 0.3) == pytest.approx(0.5, abs=1e-15)

    def test_deep_inside(self):
        assert propagate_step(-50.0, 0.1) == pytest.approx(1.0, abs=1e-12)

    def test_matches_half_line_quadrature(self):
        half_line = make_packet("constant", a=-math.inf, b=0.0)
        assert propagate_step(5.0, 0.1) == pytest.approx(propagate_quadrature(half_line, 5.0, 0.1), abs=1e-7)

    def test_far_field_density(self):
        x, t = 20.0, 0.1
        assert abs(propagate_step(x, t)) ** 2 == pytest.approx(t / (math.pi * x * x), rel=4 * t / x ** 2)

    def test_rejects_bad_time(self):
        with pytest.raises(DomainError):
            propagate_step(1.0, 0.0)


class TestTanh:
    def test_initial_profile(self):
        xi = 0.2
        expected = 0.5 * (1.0 - math.tanh(-5.0))
        assert expected == pytest.approx(0.9999546, abs=1e-7)
        assert propagate_tanh(-5.0 * xi, 1e-6, xi) == pytest.approx(expected, abs=1e-6)

    def test_centre_is_half(self):
        assert propagate_tanh(0.0, 0.7, 0.3) == pytest.approx(0.5, abs=1e-15)

    @pytest.mark.parametrize("x", [0.4, 2.0, 6.0])
    def test_antisymmetric_about_half(self, x):
        assert propagate_tanh(x, 0.5, 0.2) + propagate_tanh(-x, 0.5, 0.2) == pytest.approx(1.0, abs=1e-9)

    def test_narrow_edge_is_a_step(self):
        assert propagate_tanh(2.0, 0.5, 1e-3) == pytest.approx(propagate_step(2.0, 0.5), abs=1e-5)

    def test_rejects_bad_width(self):
        with pytest.raises(DomainError):
            propagate_tanh(1.0, 1.0, 0.0)


class TestLeadingDifference:
    def difference(self, xi, x=10.0, t=1.0):
        return propagate_tanh(x, t, xi) - propagate_step(x, t)

    @pytest.mark.parametrize("x, t", [(10.0, 1.0), (2.0, 0.5)])
    def test_predicts_difference(self, x, t):
        coarse = abs(self.difference(0.05, x, t) / leading_difference(x, t, 0.05) - 1.0)
        fine = abs(self.difference(0.025, x, t) / leading_difference(x, t, 0.025) - 1.0)
        assert coarse <= 0.05
        assert 2.5 <= coarse / fine <= 5.5

    def test_quadratic_in_width(self):
        widths = np.array([0.1, 0.05, 0.025])
        differences = [abs(self.difference(xi)) for xi in widths]
        slope = np.polyfit(np.log(widths), np.log(differences), 1)[0]
        assert slope == pytest.approx(2.0, abs=0.2)

    def test_zero_at_origin(self):
        assert leading_difference(0.0, 1.0, 0.1) == 0


class TestSharpnessWindow:
    @pytest.mark.parametrize("x", np.linspace(5.0, 16.7, 6))
    def test_narrow_edge_inside_window(self, x):
        step = propagate_step(x, 1.0)
        assert abs(propagate_tanh(x, 1.0, 0.02) - step) / abs(step) <= 0.02

    @pytest.mark.parametrize("x", [15.0, 16.0])
    def test_wide_edge_fails_past_window(self, x):
        step = propagate_step(x, 1.0)
        assert abs(abs(propagate_tanh(x, 1.0, 0.2)) - abs(step)) / abs(step) > 0.3


class TestRegimeWindow:
    def test_empty(self, caplog):
        with caplog.at_level(logging.WARNING, logger="src.edge"):
            window = regime_window_position(0.04, 0.2)
        assert window.empty
        assert not window.contains(0.2)
        assert "empty" in caplog.text

    @pytest.mark.parametrize("t, xi, bounds", [(1.0, 0.2, (1.0, 5.0)), (0.25, 0.01, (0.5, 25.0))])
    def test_bounds(self, t, xi, bounds):
        window = regime_window_position(t, xi)
        assert (window.lower, window.upper) == pytest.approx(bounds)
        assert window.units == POSITION
        assert window.contains(0.5 * sum(bounds))

    def test_negative_lower_bound(self):
        with pytest.raises(DomainError):
            RegimeWindow(-1.0, 1.0)


class TestPhysicalUnits:
    def test_time_unit(self):
        assert time_unit(1.0, 1.0) == pytest.approx(2.0 / constants.hbar)
        assert to_physical_time(3.0, 1.0, 1.0) == pytest.approx(6.0 / constants.hbar)

    def test_rubidium_window(self):
        window = physical_window(RB87_KG, 1e-3, 2e-5)
        assert window.units == SECONDS
        assert 1.5e3 <= window.upper <= 4e3
        assert window.lower == pytest.approx(55.0, rel=0.01)

    def test_edge_wider_than_distance(self):
        with pytest.raises(DomainError):
            physical_window(RB87_KG, 1e-3, 1e-3)

    def test_rejects_non_positive_mass(self):
        with pytest.raises(DomainError):
            time_unit(0.0, 1.0)
