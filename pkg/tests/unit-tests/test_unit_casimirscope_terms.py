# -*- coding: utf-8 -*-
"""This modules declares unit tests for the casimirscope.three_body.terms
module."""
# pylint: disable = no-value-for-parameter
import unittest

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from casimirscope.three_body import terms
from casimirscope.three_body.kernels import (exp_complex, f_apply,
                                             pair_contract, static,
                                             triple_contract)
from casimirscope.three_body.polarizability import (ImaginaryAxisWeight,
                                                    RealAxisWeight,
                                                    TwoLevelPolarizability)
from casimirscope.three_body.quadrature import (DivergentIntegralError,
                                                QuadratureError)
from casimirscope.three_body.scene import SceneGeometry
from casimirscope.three_body.terms import Term, TermEvaluator

GEOMETRY = SceneGeometry.from_distances(1.2, 1.5, .9)
VECTORS = GEOMETRY.vectors


def _quad_complex(function, lower, upper):
    real, _ = quad(lambda x: function(x).real, lower, upper, limit=200)
    imag, _ = quad(lambda x: function(x).imag, lower, upper, limit=200)
    return real + 1j * imag


class TestAlgebra(unittest.TestCase):

    def test_product_expands(self):
        expanded = terms.product(terms.cos_i(alpha=1.), terms.sin_i(beta=1.),
                                 terms.power(2))
        assert len(expanded) == 4
        assert all(monomial.power == 2 for monomial in expanded)
        np.testing.assert_allclose(sum(monomial.weight
                                       for monomial in expanded), 0.)

    def test_phase_with_constant_wavenumber(self):
        monomial, = terms.exp_i(alpha=1., shift=-2., k=3.)
        assert monomial.rates == terms.ZERO
        assert monomial.offsets[0] == 3j
        np.testing.assert_allclose(monomial.weight, np.exp(-6j))

    @given(st.floats(min_value=-3., max_value=3.))
    def test_absolute_exponent(self, shift):
        monomials, orientation = terms.exp_u_abs((1., 2., 3.), alpha=1.,
                                                 gamma=-1., shift=shift)
        assert orientation == (1. if shift - 2. >= 0 else -1.)
        assert monomials[0].rates[0] == -orientation
        assert monomials[0].free_rate == -orientation * shift


class TestEvaluator(unittest.TestCase):

    def test_unknown_contraction(self):
        with self.assertRaises(ValueError):
            TermEvaluator(GEOMETRY, 'quadruple')

    def test_closed_form(self):
        k0 = 1.3
        evaluator = TermEvaluator(GEOMETRY)
        term = Term(terms.scaled(terms.exp_i(alpha=1., gamma=-1., k=k0), 2.))
        expected = 2 * triple_contract(
            f_apply(exp_complex(-1j * k0), VECTORS[2]),
            f_apply(static(), VECTORS[1]),
            f_apply(exp_complex(1j * k0), VECTORS[0]))
        np.testing.assert_allclose(evaluator.evaluate(term).value, expected,
                                   rtol=1e-10)

    def test_empty_and_cancelling_terms(self):
        evaluator = TermEvaluator(GEOMETRY, 'pair')
        weight = RealAxisWeight(1. + 0j, (-1 + 0j,))
        assert evaluator.evaluate(Term([], 'k', weight)).value == 0
        monomials = terms.exp_i(alpha=1.)
        cancelling = monomials + terms.scaled(monomials, -1.)
        result = evaluator.evaluate(Term(cancelling, 'k', weight))
        assert result.value == 0 and result.evaluations == 0

    @settings(deadline=None, max_examples=5)
    @given(st.floats(min_value=.5, max_value=2.))
    def test_real_axis_with_regulator(self, k0):
        """Abel moments plus residues against a direct regulated quadrature."""
        regulator = 1.
        evaluator = TermEvaluator(GEOMETRY, 'pair', regulator=regulator)
        weight = RealAxisWeight(1. + 0j, (-k0 + 0j,))
        term = Term(terms.exp_i(alpha=1., beta=1.), 'k', weight)
        value = evaluator.evaluate(term).value

        def integrand(k, l, m):
            tensor_b = f_apply(exp_complex(1j * k), VECTORS[1])
            tensor_a = f_apply(exp_complex(1j * k), VECTORS[0])
            return (3 * pair_contract(tensor_b, tensor_a, 1.)[l, m]
                    * np.exp(-regulator * k) / (k + k0))

        for l, m in ((0, 0), (0, 1)):
            direct = _quad_complex(lambda k: integrand(k, l, m), 1e-8, 80.)
            np.testing.assert_allclose(value[l, m], direct, rtol=1e-5,
                                       atol=1e-8)

    def test_imaginary_axis(self):
        polarizabilities = (TwoLevelPolarizability(1., 1.),
                            TwoLevelPolarizability(1.5, 2.),
                            TwoLevelPolarizability(.8, .5))
        weight = ImaginaryAxisWeight(polarizabilities)
        evaluator = TermEvaluator(GEOMETRY)
        term = Term(terms.product(terms.exp_u(alpha=1., beta=1., gamma=1.),
                                  terms.power(1)), 'u', weight)

        def integrand(u):
            return weight(u) * u * triple_contract(
                *(f_apply(exp_complex(-u), VECTORS[v]) for v in (2, 1, 0)))

        direct = _quad_complex(integrand, 0., 60.)
        np.testing.assert_allclose(evaluator.evaluate(term).value, direct,
                                   rtol=1e-7)

    def test_misused_variables(self):
        weight = RealAxisWeight(1. + 0j, (-1 + 0j,))
        with self.assertRaises(QuadratureError):
            TermEvaluator(GEOMETRY).evaluate(
                Term(terms.exp_u(alpha=1.), 'k', weight))
        with self.assertRaises(QuadratureError):
            TermEvaluator(GEOMETRY, 'pair').evaluate(
                Term(terms.exp_u(alpha=1.), 'u', ImaginaryAxisWeight(())))
        with self.assertRaises(QuadratureError):
            TermEvaluator(GEOMETRY).evaluate(
                Term(terms.exp_u(alpha=-1.), 'u', ImaginaryAxisWeight(())))

    def test_undamped_imaginary_axis(self):
        """A light-cone time leaves an imaginary-axis term without decay."""
        weight = ImaginaryAxisWeight((TwoLevelPolarizability(1., 1.),))
        term = Term(terms.exp_u(alpha=1., shift=-GEOMETRY.alpha), 'u', weight)
        with self.assertRaises(DivergentIntegralError):
            TermEvaluator(GEOMETRY).evaluate(term)


if __name__ == '__main__':
    unittest.main()
