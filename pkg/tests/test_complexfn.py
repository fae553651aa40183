import cmath
import math

import numpy as np
import pytest
from scipy import special

from src.complexfn import erfc_c, faddeeva_w, moshinsky, sqrt_it, sqrt_minus_it, w_asymptotic
from src.errors import DomainError


def sample_points(count=200, radius=6.0, seed=7):
    rng = np.random.default_rng(seed)
    r = radius * np.sqrt(rng.random(count))
    theta = 2.0 * np.pi * rng.random(count)
    return [complex(z) for z in r * np.exp(1j * theta)]


def relative_error(value, reference):
    return abs(value - reference) / abs(reference)


class TestBranches:
    def test_sqrt_it_is_principal(self):
        assert sqrt_it(4.0) == pytest.approx(2.0 * cmath.exp(0.25j * math.pi), rel=1e-15)
        assert sqrt_it(2.5) ** 2 == pytest.approx(2.5j, rel=1e-14)
        assert sqrt_it(2.5).real > 0

    def test_sqrt_minus_it(self):
        assert sqrt_minus_it(3.0) ** 2 == pytest.approx(-3.0j, rel=1e-14)
        assert sqrt_minus_it(3.0) == pytest.approx(sqrt_it(3.0).conjugate(), rel=1e-15)


class TestErfc:
    def test_zero(self):
        assert erfc_c(0) == 1

    @pytest.mark.parametrize("z", sample_points())
    def test_reflection(self, z):
        scale = max(1.0, abs(erfc_c(z)))
        assert abs(erfc_c(-z) - (2.0 - erfc_c(z))) <= 1e-12 * scale

    @pytest.mark.parametrize("z", sample_points())
    def test_conjugation(self, z):
        assert erfc_c(z.conjugate()) == pytest.approx(erfc_c(z).conjugate(), rel=1e-12, abs=1e-15)

    def test_real_value(self):
        assert erfc_c(1.0) == pytest.approx(0.15729920705028513, rel=1e-13)

    @pytest.mark.parametrize("z", sample_points(60, radius=4.0, seed=11))
    def test_matches_scipy(self, z):
        assert erfc_c(z) == pytest.approx(complex(special.erfc(z)), rel=1e-10, abs=1e-13)

    @pytest.mark.parametrize("x", [-3.0, -0.5, 0.25, 2.0, 5.5])
    def test_real_axis(self, x):
        assert erfc_c(x).real == pytest.approx(math.erfc(x), rel=1e-11)
        assert abs(erfc_c(x).imag) < 1e-14

    def test_rejects_nan(self):
        with pytest.raises(DomainError):
            erfc_c(complex(float('nan'), 0.0))


class TestFaddeeva:
    def test_origin(self):
        assert faddeeva_w(0) == 1

    @pytest.mark.parametrize("z", sample_points(radius=8.0, seed=5))
    def test_reflection_identity(self, z):
        left, right, gaussian = faddeeva_w(z), faddeeva_w(-z), 2.0 * cmath.exp(-z * z)
        assert abs(left + right - gaussian) <= 1e-12 * max(abs(left), abs(right), abs(gaussian))

    def test_imaginary_axis(self):
        assert faddeeva_w(1j) == pytest.approx(0.42758357615580705, rel=1e-13)
        assert abs(faddeeva_w(1j).imag) < 1e-15

    @pytest.mark.parametrize("z", sample_points())
    def test_matches_wofz(self, z):
        assert relative_error(faddeeva_w(z), complex(special.wofz(z))) <= 1e-10

    @pytest.mark.parametrize("z", [15 + 2j, -40 + 0.5j, 300j, 1e3 + 1e3j, 9e3 + 10j])
    def test_large_arguments(self, z):
        assert relative_error(faddeeva_w(z), complex(special.wofz(z))) <= 1e-10

    @pytest.mark.parametrize("z", sample_points(seed=3))
    def test_conjugation(self, z):
        assert faddeeva_w(-z.conjugate()) == pytest.approx(faddeeva_w(z).conjugate(), rel=1e-12)

    @pytest.mark.parametrize("z", sample_points(seed=13))
    def test_derivative_relation(self, z):
        h = 1e-5
        derivative = (faddeeva_w(z + h) - faddeeva_w(z - h)) / (2 * h)
        expected = -2.0 * z * faddeeva_w(z) + 2j / math.sqrt(math.pi)
        assert derivative == pytest.approx(expected, rel=1e-7, abs=1e-7)

    def test_overflow_is_domain_error(self):
        with pytest.raises(DomainError):
            faddeeva_w(-40j)


class TestAsymptotic:
    def test_zeroth_truncation(self):
        z = 3.0 + 4.0j
        assert w_asymptotic(z, 0) == pytest.approx(1j / (math.sqrt(math.pi) * z), rel=1e-15)

    def test_upper_half_plane(self):
        z = 10j
        assert relative_error(w_asymptotic(z, 6), faddeeva_w(z)) <= 1e-8

    def test_lower_half_plane_tracks_reflected_part(self):
        z = 8.0 * cmath.exp(-0.25j * math.pi)
        reference = -faddeeva_w(-z)
        errors = [abs(w_asymptotic(z, m) - reference) for m in range(9)]
        assert all(later < earlier for earlier, later in zip(errors, errors[1:]))

    def test_rejects_small_argument(self):
        with pytest.raises(DomainError):
            w_asymptotic(1.5 + 1.0j, 3)

    def test_rejects_negative_order(self):
        with pytest.raises(DomainError):
            w_asymptotic(5j, -1)


class TestMoshinsky:
    def test_wavefront(self):
        k, t, c = 0.7, 0.3, 1.0
        x = c + 2 * k * t
        assert moshinsky(x, k, t, c) == pytest.approx(0.5 * cmath.exp(1j * (k * x - k * k * t)), rel=1e-14)

    @pytest.mark.parametrize("offset, expected_weight", [(-1.0, 1.0), (1.0, 0.0)])
    def test_initial_condition_limit(self, offset, expected_weight):
        c, k, t = 0.5, 1.3, 1e-12
        x = c + offset
        expected = expected_weight * cmath.exp(1j * k * x)
        assert abs(moshinsky(x, k, t, c) - expected) <= 1e-6

    def test_shift_is_translation(self):
        # exp(iky) on y < c is exp(ikc) times the unshifted profile moved by c.
        x, k, t, c = 2.3, -0.8, 0.4, 1.7
        assert moshinsky(x, k, t, c) == pytest.approx(cmath.exp(1j * k * c) * moshinsky(x - c, k, t), rel=1e-12)

    @pytest.mark.parametrize("t", [0.0, -1.0, float('inf')])
    def test_rejects_bad_time(self, t):
        with pytest.raises(DomainError):
            moshinsky(1.0, 1.0, t)

    def test_rejects_non_finite_position(self):
        with pytest.raises(DomainError):
            moshinsky(float('nan'), 1.0, 1.0)
