# -*- coding: utf-8 -*-
"""This modules declares unit tests for the casimirscope.three_body.quadrature
module."""
# pylint: disable = no-value-for-parameter
import unittest

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad, trapezoid
from scipy.special import exp1, sici

from casimirscope.three_body import quadrature
from casimirscope.three_body.quadrature import (DivergentIntegralError,
                                                IntegralResult, PoleError,
                                                QuadratureError,
                                                QuadratureSpec,
                                                RationalAmplitude,
                                                integrate_damped,
                                                integrate_oscillatory_pv,
                                                integrate_rational,
                                                pole_integral)

# define strategy shortcuts
POSITIVE = st.floats(min_value=.5, max_value=3.)
"""Generate pole positions and wavelengths away from the degenerate cases."""


def shifted_exponential_integral(a, x):
    """``∫₀^∞ e^{ikx}/(k + a) dk`` for ``a, x > 0``."""
    return np.exp(-1j * a * x) * exp1(-1j * a * x)


def principal_value_integral(p, x):
    """PV of ``∫₀^∞ e^{ikx}/(k - p) dk`` for ``p, x > 0``."""
    sine_integral, _ = sici(p * x)
    return np.exp(1j * p * x) * (2j * sine_integral + exp1(-1j * p * x))


class TestSpec(unittest.TestCase):

    def test_validate(self):
        assert QuadratureSpec().validate() == quadrature.DEFAULT_SPEC
        with self.assertRaises(QuadratureError):
            QuadratureSpec(rel_tol=0.).validate()
        with self.assertRaises(QuadratureError):
            QuadratureSpec(acceleration_order=0).validate()

    def test_results_accumulate(self):
        total = IntegralResult.total([IntegralResult(1j, .1, 3),
                                      IntegralResult(2., .2, 4, False)])
        assert total.value == 2. + 1j
        assert total.evaluations == 7
        assert not total.converged
        np.testing.assert_allclose(total.error_estimate, .3)
        assert total.scaled(-2.).value == -4. - 2j
        np.testing.assert_allclose(total.scaled(-2.).error_estimate, .6)


class TestDamped(unittest.TestCase):

    def test_closed_forms(self):
        np.testing.assert_allclose(integrate_damped(lambda u: 1., 1.).value,
                                   1., rtol=1e-10)
        np.testing.assert_allclose(integrate_damped(lambda u: u, 2.).value,
                                   .25, rtol=1e-10)
        np.testing.assert_allclose(
            integrate_damped(lambda u: np.cos(u) + 1j * u**2, 1.).value,
            .5 + 2j, rtol=1e-9)

    @given(POSITIVE)
    def test_rational_weight(self, s):
        """``∫₀^∞ e^{-us}/(1 + u) du = e^s E1(s)``."""
        result = integrate_damped(lambda u: 1 / (1 + u), s)
        assert result.converged
        np.testing.assert_allclose(result.value, np.exp(s) * exp1(s),
                                   rtol=1e-8)

    def test_nonpositive_decay(self):
        with self.assertRaises(QuadratureError):
            integrate_damped(lambda u: 1., 0.)

    @given(POSITIVE)
    def test_error_estimate_bounds_the_error(self, s):
        result = integrate_damped(lambda u: 1 / (1 + u), s)
        assert abs(result.value - np.exp(s) * exp1(s)) <= (
            result.error_estimate + 1e-14)

    def test_dense_trapezoid(self):
        """``∫₀^∞ e^{-u}/(1 + u²) du`` against a fine trapezoidal sum."""
        nodes = np.linspace(0., 40., 400_001)
        reference = trapezoid(np.exp(-nodes) / (1 + nodes**2), nodes)
        result = integrate_damped(lambda u: 1 / (1 + u**2), 1.)
        assert result.converged
        np.testing.assert_allclose(result.value, reference, atol=1e-8)


class TestOscillatory(unittest.TestCase):

    def test_dirichlet_integral(self):
        result = integrate_oscillatory_pv(
            lambda k: 1 / (2j * k) if k else .5, [(1, 1.), (-1, -1.)])
        assert result.converged
        np.testing.assert_allclose(result.value, np.pi / 2, rtol=1e-7)

    def test_cosine_over_pole(self):
        """PV of ``∫₀^∞ cos(2k)/(1 - k²) dk = π sin(2)/2``."""
        result = integrate_oscillatory_pv(lambda k: 1 / (1 - k**2),
                                          [(.5, 2.), (.5, -2.)], poles=[1.])
        expected = np.pi * np.sin(2.) / 2
        assert result.converged
        np.testing.assert_allclose(result.value, expected, rtol=1e-7)
        assert abs(result.value - expected) <= max(
            10 * result.error_estimate,
            quadrature.DEFAULT_SPEC.tolerance(expected))

    @settings(deadline=None, max_examples=3)
    @given(st.sampled_from((1e-5, 1e-4, 1e-3)))
    def test_window_independence(self, width):
        """The excised window around the pole does not move the value."""
        spec = QuadratureSpec(pv_window=width)
        result = integrate_oscillatory_pv(lambda k: 1 / (1 - k**2),
                                          [(.5, 2.), (.5, -2.)], poles=[1.],
                                          spec=spec)
        np.testing.assert_allclose(result.value, np.pi * np.sin(2.) / 2,
                                   rtol=1e-7)

    def test_without_oscillation(self):
        result = integrate_oscillatory_pv(lambda k: np.exp(-k), [0.])
        np.testing.assert_allclose(result.value, 1., rtol=1e-9)

    @settings(deadline=None, max_examples=20)
    @given(POSITIVE, POSITIVE)
    def test_complex_root(self, a, x):
        result = pole_integral(-a + 0j, x)
        np.testing.assert_allclose(result.value,
                                   shifted_exponential_integral(a, x),
                                   rtol=1e-6)

    @settings(deadline=None, max_examples=20)
    @given(POSITIVE, POSITIVE)
    def test_principal_value(self, p, x):
        result = pole_integral(p + 0j, x)
        np.testing.assert_allclose(result.value,
                                   principal_value_integral(p, x), rtol=1e-6)

    def test_regulated_pole(self):
        """With ``ε`` large the integral is dominated by small ``k``."""
        result = pole_integral(-1 + 0j, 1., regulator=50.)
        real, _ = quad(lambda k: np.cos(k) * np.exp(-50 * k) / (k + 1), 0, 2)
        imag, _ = quad(lambda k: np.sin(k) * np.exp(-50 * k) / (k + 1), 0, 2)
        np.testing.assert_allclose(result.value, real + 1j * imag, rtol=1e-7)

    def test_pole_integral_is_cached(self):
        pole_integral(-2 + 0j, .75)
        hits = pole_integral.cache_info().hits
        pole_integral(-2 + 0j, .75)
        assert pole_integral.cache_info().hits == hits + 1

    def test_pole_errors(self):
        with self.assertRaises(PoleError):
            integrate_oscillatory_pv(lambda k: 1., [1.], poles=[1e-5])
        with self.assertRaises(PoleError):
            integrate_oscillatory_pv(lambda k: 1., [1.], poles=[1., 1.0001])
        with self.assertRaises(PoleError):
            RationalAmplitude(np.array([1.]), (1 + 0j, 1 + 0j)).real_poles()


class TestRational(unittest.TestCase):

    @given(POSITIVE)
    def test_polynomial_moments(self, x):
        amplitude = RationalAmplitude(np.array([2., 3.]), ())
        np.testing.assert_allclose(integrate_rational(amplitude, x).value,
                                   2j / x - 3 / x**2, rtol=1e-12)

    def test_regulated_moment(self):
        assert quadrature.polynomial_moment(2, 0., 2.) == .25

    @settings(deadline=None, max_examples=10)
    @given(POSITIVE)
    def test_partial_fractions(self, x):
        """``k²/((k+1)(k+2)) = 1 + 1/(k+1) - 4/(k+2)``."""
        numerator = np.zeros((3, 2))
        numerator[2] = (1., -2.)
        amplitude = RationalAmplitude(numerator, (-1 + 0j, -2 + 0j))
        expected = (1j / x + shifted_exponential_integral(1., x)
                    - 4 * shifted_exponential_integral(2., x))
        np.testing.assert_allclose(integrate_rational(amplitude, x).value,
                                   (expected, -2 * expected), rtol=1e-6)

    def test_repeated_roots(self):
        """``∫ e^{ikx}/(k+1)² = 1 + ix e^{-ix} E1(-ix)``."""
        x = 1.5
        amplitude = RationalAmplitude(np.array([1.]), (-1 + 0j, -1 + 0j))
        expected = 1 + 1j * x * shifted_exponential_integral(1., x)
        np.testing.assert_allclose(integrate_rational(amplitude, x).value,
                                   expected, rtol=1e-6)

    def test_divergences(self):
        with self.assertRaises(DivergentIntegralError):
            integrate_rational(RationalAmplitude(np.array([0., 1.]),
                                                 (-1 + 0j,)), 0.)
        with self.assertRaises(DivergentIntegralError):
            integrate_rational(RationalAmplitude(np.array([1.]),
                                                 (-1 + 0j,)), 0.)
        with self.assertRaises(DivergentIntegralError):
            quadrature.polynomial_moment(1, 0.)

    def test_zero_phase_with_regulator(self):
        amplitude = RationalAmplitude(np.array([0., 1.]), ())
        np.testing.assert_allclose(
            integrate_rational(amplitude, 0., regulator=2.).value, .25)


if __name__ == '__main__':
    unittest.main()
