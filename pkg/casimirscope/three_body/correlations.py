# -*- coding: utf-8 -*-
"""Equal-time correlations ``<E_l(r_A, t) E_m(r_B, t)>`` of the field
emitted by the excited atom C.

The free-field part is never included. The source part splits into a
resonant closed form, set by the pole at ``k = k0``, and a nonresonant part.
In the continuum limit the mode sum of the nonresonant part becomes

    -(|μ|²/3π) ∫₀^∞ dk/(k0 + k) Σ_n [F^β sin kβ/β]_ln
        × [F^α (e^{-ikα} - e^{ik0α} e^{-i(k0+k)t}) / α]_mn θ(t - β)

plus its conjugate image under A ⇄ B (α ⇄ β, transposed indices), gated by
θ(t - α). The real part of the sum is reported.
"""
from typing import NamedTuple

import numpy as np
from loguru import logger as log

from .kernels import exp_complex, f_apply, pair_contract
from .polarizability import RealAxisWeight
from .quadrature import DEFAULT_SPEC
from .scene import CausalityRegion, classify_region
from .terms import Term, TermEvaluator, exp_i, product, scaled, sin_i

__all__ = ['CorrelationPart', 'CorrelationTensor', 'corr_resonant',
           'corr_nonresonant', 'corr_ground_state_reference',
           'correlation']

log.disable('casimirscope')


class CorrelationPart(NamedTuple):
    """One part of the correlation with the accuracy it was obtained to."""

    value: np.ndarray
    error_estimate: float = 0.
    converged: bool = True


class CorrelationTensor(NamedTuple):
    """Source part of the field correlation at ``(r_A, r_B)``."""

    nonresonant: np.ndarray
    resonant: np.ndarray
    region: CausalityRegion
    error_estimate: float = 0.
    converged: bool = True

    @property
    def components(self):
        """np.ndarray: Total 3×3 tensor, nonresonant plus resonant."""
        return self.nonresonant + self.resonant


def _k0_mu2(scene, k0, mu2_c):
    return (scene.k0 if k0 is None else k0,
            scene.atom_c.mu2 if mu2_c is None else mu2_c)


def corr_resonant(scene, ct, k0=None, mu2_c=None):
    """Resonant correlation, zero unless A and B are both inside C's cone.

    ``2 (|μ|²/3) Σ_n Re(F^β[e^{-ik0β}/β]_ln F^α[e^{ik0α}/α]_mn)``
    """
    k0, mu2_c = _k0_mu2(scene, k0, mu2_c)
    region = classify_region(scene.geometry, ct)
    if not (region.th_alpha and region.th_beta):
        return CorrelationPart(np.zeros((3, 3)))
    alpha_vector, beta_vector, _ = scene.geometry.vectors
    tensor_b = f_apply(exp_complex(-1j * k0), beta_vector)
    tensor_a = f_apply(exp_complex(1j * k0), alpha_vector)
    return CorrelationPart(2 * pair_contract(tensor_b, tensor_a, mu2_c).real)


def _nonresonant_half(scene, ct, k0, mu2_c, spec, regulator):
    """The θ(t - β) half, as a complex tensor, with its error estimate."""
    monomials = product(sin_i(beta=1.), exp_i(alpha=-1.)) + scaled(
        product(sin_i(beta=1.), exp_i(alpha=1., shift=-ct, k=k0),
                exp_i(shift=-ct)), -1.)
    term = Term(scaled(monomials, -mu2_c / (3 * np.pi)), 'k',
                RealAxisWeight(1. + 0j, (-k0 + 0j,)))
    evaluator = TermEvaluator(scene.geometry, 'pair', spec, regulator)
    return evaluator.evaluate(term)


def corr_nonresonant(scene, ct, k0=None, mu2_c=None, spec=DEFAULT_SPEC,
                     regulator=0.):
    """Real nonresonant correlation tensor.

    ``regulator`` multiplies the ``k`` integrand by ``e^{-εk}``; the box
    oracle, which has a finite cutoff, is compared with ``ε > 0``.
    """
    k0, mu2_c = _k0_mu2(scene, k0, mu2_c)
    region = classify_region(scene.geometry, ct)
    tensor = np.zeros((3, 3), dtype=complex)
    error, converged = 0., True
    if region.th_beta:
        half = _nonresonant_half(scene, ct, k0, mu2_c, spec, regulator)
        tensor += half.value
        error += half.error_estimate
        converged &= half.converged
    if region.th_alpha:
        image = _nonresonant_half(scene.relabel('BAC'), ct, k0, mu2_c, spec,
                                  regulator)
        tensor += np.conj(image.value).T
        error += image.error_estimate
        converged &= image.converged
    log.debug(f'nonresonant correlation at ct={ct}: '
              f'imaginary part {np.abs(tensor.imag).max():.3g}')
    return CorrelationPart(tensor.real, error, converged)


def corr_ground_state_reference(scene, ct, k0=None, mu2_c=None,
                                spec=DEFAULT_SPEC, regulator=0.):
    """Nonresonant correlation had C started in its ground state."""
    excited = corr_nonresonant(scene, ct, k0, mu2_c, spec, regulator)
    return excited._replace(value=-excited.value)


def correlation(scene, ct, k0=None, mu2_c=None, spec=DEFAULT_SPEC,
                regulator=0.):
    """CorrelationTensor: Both parts and the causal region at ``ct``."""
    nonresonant = corr_nonresonant(scene, ct, k0, mu2_c, spec, regulator)
    return CorrelationTensor(nonresonant.value,
                             corr_resonant(scene, ct, k0, mu2_c).value,
                             classify_region(scene.geometry, ct),
                             nonresonant.error_estimate,
                             nonresonant.converged)
