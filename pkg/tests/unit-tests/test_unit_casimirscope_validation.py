# -*- coding: utf-8 -*-
"""This modules declares unit tests for the
casimirscope.three_body.validation module."""
# pylint: disable = no-value-for-parameter
import unittest
from unittest import mock

import numpy as np

from casimirscope.three_body import validation
from casimirscope.three_body.quadrature import PoleError
from casimirscope.three_body.scenario import ScenarioConfig
from casimirscope.three_body.scene import Atom, scene_from_distances
from casimirscope.three_body.validation import Finding

SCENE = scene_from_distances(1.2, 1.6, 1.1, k_a=1.3, k_b=.7, k0=1.)
A_CLOSE = scene_from_distances(1., 2., 1.8, k_a=1.3, k_b=.7, k0=1.)
FAR_C = scene_from_distances(2., 2.4, 1.5, k_a=1.3, k_b=.7, k0=1.)

CONFIG = ScenarioConfig(atoms=A_CLOSE.atoms)


class TestChecks(unittest.TestCase):

    def test_finite_differences(self):
        findings = validation.check_fd_kernels(SCENE)
        assert len(findings) == 3
        assert all(finding.passed and finding.strict for finding in findings)

    def test_resonant_identity(self):
        finding, = validation.check_resonant_identity(SCENE, 2.)
        assert finding.passed
        finding, = validation.check_resonant_identity(SCENE, 1.3)
        assert finding.passed and finding.discrepancy == 0.

    def test_three_body_stationary(self):
        exact, late = validation.check_sym_stationary(SCENE)
        assert exact.strict and exact.passed, exact
        assert not late.strict
        assert late.discrepancy < 1e-2, late

    def test_pair_stationary(self):
        """Only a finite linewidth lets the pair energy settle."""
        principal, = validation.check_pair_stationary(FAR_C, linewidth=0.,
                                                      strict=False)
        assert not principal.strict and not principal.passed
        assert principal.discrepancy > 1e-2
        damped, = validation.check_pair_stationary(FAR_C)
        assert damped.strict and damped.passed, damped
        assert str(validation.STATIONARY_LINEWIDTH) in damped.name

    def test_spacelike_pair(self):
        static, full = validation.check_pair_spacelike(SCENE, 1.15)
        assert static.strict and static.passed, static
        assert not full.strict
        assert np.isfinite(full.discrepancy)

    def test_spacelike_A(self):
        strict, reported = validation.check_sym_spacelike_A(A_CLOSE, 1.4)
        assert strict.strict and strict.passed
        assert not reported.strict
        assert np.isfinite(reported.discrepancy)


class TestValidate(unittest.TestCase):

    def test_runs_applicable_checks(self):
        with mock.patch.object(validation, 'check_pair_stationary',
                               return_value=[]) as pair, \
                mock.patch.object(validation, 'check_sym_spacelike_A',
                                  return_value=[]) as spacelike:
            findings = validation.validate(CONFIG)
        assert pair.call_count == 2
        assert [call.kwargs.get('linewidth') for call in pair.call_args_list
                ] == [0., None]
        spacelike.assert_called_once()
        names = [finding.name for finding in findings]
        assert 'resonant three-body term vs resonant pair term' in names
        assert not any(name.startswith('box') for name in names)

    def test_failing_check_becomes_a_finding(self):
        with mock.patch.object(validation, 'check_pair_stationary',
                               side_effect=PoleError('coincident poles')), \
                mock.patch.object(validation, 'check_sym_spacelike_A',
                                  return_value=[]):
            findings = validation.validate(CONFIG)
        failed = [finding for finding in findings
                  if finding.strict and not finding.passed]
        assert [finding.name for finding in failed] == [
            'pair stationary limit (principal value)',
            'pair stationary limit (linewidth)']
        assert all('coincident' in finding.note for finding in failed)

    def test_reports(self):
        findings = [Finding('a', 0., 1., True),
                    Finding('b', 2., 1., False),
                    Finding('c', 2., 1., False, strict=False, note='shown')]
        frame = validation.findings_frame(findings)
        assert list(frame.columns) == list(Finding._fields)
        assert list(frame['passed']) == [True, False, False]
        assert validation.findings_table(findings).row_count == 3


if __name__ == '__main__':
    unittest.main()
