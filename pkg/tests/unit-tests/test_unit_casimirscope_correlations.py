# -*- coding: utf-8 -*-
"""This modules declares unit tests for the
casimirscope.three_body.correlations module."""
# pylint: disable = no-value-for-parameter
import unittest

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from casimirscope.three_body import correlations
from casimirscope.three_body.quadrature import DivergentIntegralError
from casimirscope.three_body.scene import scene_from_distances

SCENE = scene_from_distances(1.2, 1.6, 1.1, k0=1.)


@st.composite
def scenes(draw):
    """Generate scenes with ``|alpha - beta| > 0.1``."""
    alpha = draw(st.floats(min_value=.6, max_value=2.))
    beta = alpha + draw(st.sampled_from((-1, 1))) * draw(
        st.floats(min_value=.2, max_value=.5))
    gamma = draw(st.floats(min_value=abs(alpha - beta) + .1,
                           max_value=alpha + beta - .1))
    return scene_from_distances(alpha, beta, gamma,
                                k0=draw(st.floats(min_value=.5,
                                                  max_value=2.)))


class TestCausality(unittest.TestCase):

    @given(scenes(), st.floats(min_value=0., max_value=.99))
    def test_zero_before_any_signal(self, scene, fraction):
        ct = fraction * min(scene.geometry.alpha, scene.geometry.beta)
        tensor = correlations.correlation(scene, ct)
        assert not np.any(tensor.components)
        assert tensor.converged

    @given(scenes())
    def test_resonant_needs_both_cones(self, scene):
        alpha, beta, _ = scene.geometry.distances
        between = (alpha + beta) / 2
        assert not np.any(correlations.corr_resonant(scene, between).value)
        assert np.any(
            correlations.corr_resonant(scene, max(alpha, beta)).value)

    def test_one_sided_nonresonant(self):
        ct = 1.4
        nonresonant = correlations.corr_nonresonant(SCENE, ct)
        assert nonresonant.converged
        assert np.any(nonresonant.value)
        resonant = correlations.corr_resonant(SCENE, ct)
        assert not np.any(resonant.value)
        assert resonant.converged and resonant.error_estimate == 0.


class TestStructure(unittest.TestCase):

    @settings(deadline=None, max_examples=5)
    @given(scenes(), st.floats(min_value=1.05, max_value=2.))
    def test_swapping_a_and_b_transposes(self, scene, factor):
        ct = factor * max(scene.geometry.alpha, scene.geometry.beta)
        direct = correlations.correlation(scene, ct)
        swapped = correlations.correlation(scene.relabel('BAC'), ct,
                                           k0=scene.k0)
        np.testing.assert_allclose(swapped.resonant, direct.resonant.T,
                                   rtol=1e-10, atol=1e-12)
        np.testing.assert_allclose(swapped.nonresonant, direct.nonresonant.T,
                                   rtol=1e-6, atol=1e-9)

    def test_linear_in_mu2(self):
        ct = 2.
        reference = correlations.correlation(SCENE, ct)
        scaled = correlations.correlation(SCENE.scaled_mu2(factor_c=2.5), ct)
        np.testing.assert_allclose(scaled.components,
                                   2.5 * reference.components, rtol=1e-7,
                                   atol=1e-10)

    def test_ground_state_reference(self):
        ct = 2.
        excited = correlations.corr_nonresonant(SCENE, ct)
        ground = correlations.corr_ground_state_reference(SCENE, ct)
        np.testing.assert_array_equal(ground.value, -excited.value)
        assert ground.error_estimate == excited.error_estimate

    def test_equal_distances_need_a_regulator(self):
        scene = scene_from_distances(1.3, 1.3, .7)
        with self.assertRaises(DivergentIntegralError):
            correlations.corr_nonresonant(scene, 2.)
        regulated = correlations.corr_nonresonant(scene, 2., regulator=.5)
        assert np.all(np.isfinite(regulated.value))


if __name__ == '__main__':
    unittest.main()
