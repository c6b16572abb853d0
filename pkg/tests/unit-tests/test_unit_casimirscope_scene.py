# -*- coding: utf-8 -*-
"""This modules declares unit tests for the casimirscope.three_body.scene
module."""
# pylint: disable = no-value-for-parameter
import unittest

import numpy as np
from hypothesis import assume, given
from hypothesis import strategies as st

from casimirscope.three_body import scene
from casimirscope.three_body.scene import (Atom, GeometryError, RoleError,
                                           SceneGeometry, build_scene,
                                           classify_region)

# define strategy shortcuts
SIDE = st.floats(min_value=.5, max_value=5.)
"""Generate triangle sides, in units of 1/k0."""

COORDINATE = st.floats(min_value=-5., max_value=5.)

RANK = {scene.ALL_SPACELIKE: 0, scene.PAIR_ONLY: 1, scene.C_SEES_ONE: 1,
        scene.MIXED: 2, scene.C_SEES_BOTH: 3}
"""Number of light cones a label implies to be open, up to ties."""


@st.composite
def triangles(draw):
    """Generate distances ``(alpha, beta, gamma)`` of proper triangles."""
    alpha = draw(SIDE)
    beta = draw(SIDE)
    gamma = draw(st.floats(min_value=abs(alpha - beta) + .05,
                           max_value=alpha + beta - .05))
    return alpha, beta, gamma


def excited(position, k_trans=1.):
    return Atom(position, k_trans, role='excited')


class TestAtoms(unittest.TestCase):

    def test_rejects_nonpositive_constants(self):
        with self.assertRaises(GeometryError):
            Atom((0, 0, 0), k_trans=0.).validate()
        with self.assertRaises(GeometryError):
            Atom((0, 0, 0), mu2=-1.).validate()

    def test_rejects_unknown_role(self):
        with self.assertRaises(RoleError):
            Atom((0, 0, 0), role='ionized').validate()

    def test_exactly_one_excited_atom(self):
        with self.assertRaises(RoleError):
            build_scene(Atom((1, 0, 0)), Atom((0, 1, 0)), Atom((0, 0, 0)))
        with self.assertRaises(RoleError):
            build_scene(excited((1, 0, 0)), Atom((0, 1, 0)),
                        excited((0, 0, 0)))

    def test_excited_atom_is_c(self):
        with self.assertRaises(RoleError):
            build_scene(excited((1, 0, 0)), Atom((0, 1, 0)), Atom((0, 0, 0)))

    def test_coincident_atoms(self):
        with self.assertRaises(GeometryError):
            build_scene(Atom((1, 0, 0)), Atom((1, 0, 0)), excited((0, 0, 0)))


class TestGeometry(unittest.TestCase):

    def test_side_labels(self):
        built = build_scene(Atom((3, 0, 0)), Atom((0, 4, 0)),
                            excited((0, 0, 0)))
        assert built.geometry.distances == (4., 3., 5.)
        np.testing.assert_allclose(built.geometry.beta_hat, (1, 0, 0))
        np.testing.assert_allclose(built.geometry.gamma_hat,
                                   (3 / 5, -4 / 5, 0))

    @given(triangles())
    def test_from_distances(self, distances):
        geometry = SceneGeometry.from_distances(*distances)
        np.testing.assert_allclose(geometry.distances, distances, rtol=1e-9)

    def test_triangle_inequality(self):
        with self.assertRaises(GeometryError):
            SceneGeometry.from_distances(1., 1., 3.)
        with self.assertRaises(GeometryError):
            SceneGeometry.from_distances(1., 0., 1.)

    def test_flat_triangle(self):
        geometry = SceneGeometry.from_distances(1., 2., 3.)
        np.testing.assert_allclose(geometry.distances, (1., 2., 3.))

    @given(triangles())
    def test_relabel_swaps_sides(self, distances):
        alpha, beta, gamma = distances
        built = scene.scene_from_distances(*distances, k_a=2., k_b=3.)
        swapped = built.relabel('BAC')
        np.testing.assert_allclose(swapped.geometry.distances,
                                   (beta, alpha, gamma), rtol=1e-9)
        assert swapped.atom_a.k_trans == 3.
        np.testing.assert_allclose(built.relabel('ACB').geometry.distances,
                                   (alpha, gamma, beta), rtol=1e-9)
        np.testing.assert_allclose(built.relabel('CBA').geometry.distances,
                                   (gamma, beta, alpha), rtol=1e-9)

    @given(triangles(), st.floats(min_value=.1, max_value=10.))
    def test_scaled_mu2(self, distances, factor):
        built = scene.scene_from_distances(*distances)
        assert built.scaled_mu2(factor_b=factor).atom_b.mu2 == factor
        assert built.scaled_mu2(factor_b=factor).atom_a.mu2 == 1.


class TestCausality(unittest.TestCase):

    def test_conventions(self):
        assert scene.theta(0.) == 1.
        assert scene.theta(-1e-300) == 0.
        assert scene.sign(0.) == 1.
        assert scene.sign(-2.) == -1.

    def test_negative_time(self):
        with self.assertRaises(ValueError):
            classify_region(SceneGeometry.from_distances(1, 1, 1), -1.)

    def test_labels(self):
        geometry = SceneGeometry.from_distances(2., 3., 1.5)
        labels = [classify_region(geometry, ct).label
                  for ct in (.5, 1.7, 2.5, 3.5)]
        assert labels == [scene.ALL_SPACELIKE, scene.PAIR_ONLY, scene.MIXED,
                          scene.C_SEES_BOTH]
        assert classify_region(SceneGeometry.from_distances(1., 3., 3.),
                               1.5).label == scene.C_SEES_ONE

    def test_closed_light_cone(self):
        geometry = SceneGeometry.from_distances(2., 3., 1.5)
        region = classify_region(geometry, 2.)
        assert region.th_alpha and not region.th_beta
        assert region.on_light_cone
        assert not classify_region(geometry, 2.2).on_light_cone

    @given(triangles())
    def test_all_open_time(self, distances):
        geometry = SceneGeometry.from_distances(*distances)
        opened = scene.all_open_time(geometry)
        assert all(classify_region(geometry, opened + 1e-6).flags.values())
        assert not all(classify_region(geometry,
                                       opened - 1e-6).flags.values())

    @given(triangles(), st.floats(min_value=0., max_value=12.))
    def test_signs_follow_steps(self, distances, ct):
        region = classify_region(SceneGeometry.from_distances(*distances), ct)
        for side in ('alpha', 'beta', 'gamma'):
            inside = getattr(region, f'th_{side}')
            sign = getattr(region, f'sgn_{side}')
            assert inside == (sign < 0) or region.on_light_cone

    @given(triangles(), st.floats(min_value=0., max_value=12.),
           st.floats(min_value=0., max_value=3.))
    def test_cones_only_open(self, distances, ct, later):
        geometry = SceneGeometry.from_distances(*distances)
        before = classify_region(geometry, ct)
        after = classify_region(geometry, ct + later)
        assert all(after.flags[name] for name, value in before.flags.items()
                   if value)
        assert RANK[after.label] >= RANK[before.label]

    @given(triangles(), st.floats(min_value=0., max_value=12.))
    def test_label_ignores_ground_atom_order(self, distances, ct):
        alpha, beta, gamma = distances
        direct = classify_region(SceneGeometry.from_distances(*distances), ct)
        assume(not direct.on_light_cone)
        swapped = classify_region(
            SceneGeometry.from_distances(beta, alpha, gamma), ct)
        assert swapped.label == direct.label
        assert (swapped.th_alpha, swapped.th_beta) == (direct.th_beta,
                                                       direct.th_alpha)


if __name__ == '__main__':
    unittest.main()
