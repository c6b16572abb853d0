# -*- coding: utf-8 -*-
"""Term tables.

Every energy and correlation formula is a sum of terms of the form

    ∫ dx w(x) x^p Π_v F^v [ e^{(c_v + a_v x) r_v} / r_v ] e^{b x}

where ``v`` runs over the triangle sides ``alpha, beta, gamma``, ``w`` is a
product of polarizabilities (possibly with ``1/(k0 + k)``) and ``b`` collects
the parts of the exponent ``F`` does not act on (times). ``x`` is the real
wavenumber ``k``, the imaginary frequency ``u``, or absent for closed forms.

A formula is written as lists of :class:`Monomial` built with the small
algebra below (:func:`exp_i`, :func:`sin_i`, :func:`cos_i`, :func:`exp_u`,
:func:`product`); :class:`TermEvaluator` turns them into polynomials in
``x``, groups them by exponent and hands each group to the integration
engines once.
"""
from itertools import product as cartesian
from typing import List, NamedTuple, Optional, Tuple

import numpy as np
from loguru import logger as log

from .kernels import (collapse_powers, f_apply_polynomial,
                      pair_contract_coefficients,
                      triple_contract_coefficients)
from .quadrature import (DEFAULT_SPEC, DivergentIntegralError,
                         IntegralResult, QuadratureError, RationalAmplitude,
                         integrate_damped, integrate_rational)
from .scene import EPS_CONE, sign

__all__ = ['Monomial', 'Term', 'TermEvaluator', 'constant', 'exp_i',
           'sin_i', 'cos_i', 'exp_u', 'exp_u_abs', 'power', 'product',
           'scaled']

log.disable('casimirscope')

VARIABLES = ('alpha', 'beta', 'gamma')

Triple = Tuple[complex, complex, complex]
ZERO = (0j, 0j, 0j)


class Monomial(NamedTuple):
    """``weight x^power Π_v e^{(offset_v + rate_v x) r_v} e^{free_rate x}``."""

    weight: complex = 1. + 0j
    rates: Triple = ZERO
    offsets: Triple = ZERO
    free_rate: complex = 0j
    power: int = 0

    def __mul__(self, other):
        return Monomial(
            self.weight * other.weight,
            tuple(a + b for a, b in zip(self.rates, other.rates)),
            tuple(a + b for a, b in zip(self.offsets, other.offsets)),
            self.free_rate + other.free_rate,
            self.power + other.power)


# Algebra
# =======

def _triple(alpha, beta, gamma, factor):
    return tuple(complex(factor * value) for value in (alpha, beta, gamma))


def constant(weight):
    return [Monomial(complex(weight))]


def power(n):
    """``x**n``."""
    return [Monomial(power=n)]


def exp_i(alpha=0., beta=0., gamma=0., shift=0., k=None):
    """``e^{i x (aα + bβ + cγ + shift)}``, or with ``k`` the constant phase.

    ``shift`` is never acted upon by ``F``; with ``k`` it is folded into the
    weight, without it becomes part of the ``x`` exponent.
    """
    if k is None:
        return [Monomial(rates=_triple(alpha, beta, gamma, 1j),
                         free_rate=1j * shift)]
    return [Monomial(weight=np.exp(1j * k * shift),
                     offsets=_triple(alpha, beta, gamma, 1j * k))]


def _opposite(alpha, beta, gamma, shift):
    return {'alpha': -alpha, 'beta': -beta, 'gamma': -gamma, 'shift': -shift}


def cos_i(alpha=0., beta=0., gamma=0., shift=0., k=None):
    return (scaled(exp_i(alpha, beta, gamma, shift, k), .5)
            + scaled(exp_i(k=k, **_opposite(alpha, beta, gamma, shift)), .5))


def sin_i(alpha=0., beta=0., gamma=0., shift=0., k=None):
    return (scaled(exp_i(alpha, beta, gamma, shift, k), -.5j)
            + scaled(exp_i(k=k, **_opposite(alpha, beta, gamma, shift)), .5j))


def exp_u(alpha=0., beta=0., gamma=0., shift=0.):
    """``e^{-u (aα + bβ + cγ + shift)}``; may grow in some of the sides."""
    return [Monomial(rates=_triple(alpha, beta, gamma, -1.),
                     free_rate=-complex(shift))]


def exp_u_abs(distances, alpha=0., beta=0., gamma=0., shift=0.):
    """``e^{-u |aα + bβ + cγ + shift|}`` resolved for the given distances.

    Returns the monomials and the sign of the argument.
    """
    argument = (alpha * distances[0] + beta * distances[1]
                + gamma * distances[2] + shift)
    orientation = sign(argument)
    return exp_u(orientation * alpha, orientation * beta,
                 orientation * gamma, orientation * shift), orientation


def product(*factors):
    """Expand a product of monomial sums."""
    expanded = []
    for monomials in cartesian(*factors):
        result = Monomial()
        for monomial in monomials:
            result = result * monomial
        expanded.append(result)
    return expanded


def scaled(monomials, factor):
    return [monomial._replace(weight=monomial.weight * factor)
            for monomial in monomials]


class Term(NamedTuple):
    """Monomials sharing one integration variable and weight."""

    monomials: List[Monomial]
    variable: Optional[str] = None
    """Optional[str]: ``'k'``, ``'u'`` or ``None`` for closed forms."""

    weight: Optional[object] = None
    """RealAxisWeight for ``'k'``, ImaginaryAxisWeight for ``'u'``."""


# Evaluation
# ==========

class TermEvaluator:
    """Evaluate terms on one geometry.

    ``contraction='triple'`` contracts the three ``F`` tensors to a scalar
    (``Σ Fγ_lm Fβ_ln Fα_mn``); ``'pair'`` keeps the free indices of
    ``Σ_n Fβ_ln Fα_mn`` and ignores ``gamma``.
    """

    def __init__(self, geometry, contraction='triple', spec=DEFAULT_SPEC,
                 regulator=0.):
        if contraction not in ('triple', 'pair'):
            raise ValueError(f'unknown contraction {contraction!r}')
        self.geometry = geometry
        self.contraction = contraction
        self.spec = spec
        self.regulator = regulator
        self.polynomials = [f_apply_polynomial(vector)
                            for vector in geometry.vectors]

    def polynomial(self, monomial):
        """Return ``(coefficients in x, constant factor, x exponent)``."""
        substituted = [polynomial.substituted(offset, rate)
                       for polynomial, offset, rate
                       in zip(self.polynomials, monomial.offsets,
                              monomial.rates)]
        alpha, beta, gamma = substituted
        if self.contraction == 'triple':
            coefficients = collapse_powers(
                triple_contract_coefficients(gamma, beta, alpha), (1, 1, 1))
            used = (0, 1, 2)
        else:
            coefficients = collapse_powers(
                pair_contract_coefficients(beta, alpha), (1, 1))
            used = (0, 1)
        if monomial.power:
            coefficients = np.concatenate(
                [np.zeros((monomial.power,) + coefficients.shape[1:],
                          dtype=complex), coefficients])

        distances = self.geometry.distances
        factor = monomial.weight * np.exp(sum(
            monomial.offsets[v] * distances[v] for v in used))
        exponent = sum(monomial.rates[v] * distances[v] for v in used)
        return factor * coefficients, complex(exponent + monomial.free_rate)

    def grouped(self, monomials):
        """Dict[complex, np.ndarray]: Summed polynomials per exponent."""
        groups = {}
        for monomial in monomials:
            coefficients, exponent = self.polynomial(monomial)
            key = complex(round(exponent.real, 12), round(exponent.imag, 12))
            if key in groups:
                previous = groups[key]
                size = max(len(previous), len(coefficients))
                groups[key] = (_padded(previous, size)
                               + _padded(coefficients, size))
            else:
                groups[key] = coefficients
        return groups

    def evaluate(self, term):
        """IntegralResult: Value of one term."""
        if not term.monomials:
            return IntegralResult(0j)
        if term.variable is None:
            value = sum(self.polynomial(monomial)[0][0]
                        for monomial in term.monomials)
            return IntegralResult(value)

        results = []
        for exponent, numerator in self.grouped(term.monomials).items():
            if not np.any(numerator):
                continue
            if term.variable == 'k':
                results.append(self._real_axis(exponent, numerator,
                                               term.weight))
            elif term.variable == 'u':
                results.append(self._imaginary_axis(exponent, numerator,
                                                    term.weight))
            else:
                raise ValueError(f'unknown variable {term.variable!r}')
        return IntegralResult.total(results)

    def evaluate_all(self, terms):
        return IntegralResult.total(self.evaluate(term) for term in terms)

    def _real_axis(self, exponent, numerator, weight):
        if abs(exponent.real) > EPS_CONE:
            raise QuadratureError(
                f'real-axis term with damped exponent {exponent}')
        amplitude = RationalAmplitude(weight.constant * numerator,
                                      weight.roots)
        return integrate_rational(amplitude, exponent.imag, self.spec,
                                  self.regulator)

    def _imaginary_axis(self, exponent, numerator, weight):
        if self.contraction != 'triple':
            raise QuadratureError('imaginary-axis terms need a full '
                                  'contraction')
        if abs(exponent.imag) > EPS_CONE:
            raise QuadratureError(
                f'imaginary-axis term with oscillating exponent {exponent}')
        decay = -exponent.real
        if decay < -EPS_CONE:
            raise QuadratureError(f'growing imaginary-axis term ({decay})')
        if decay < EPS_CONE:
            # only reachable with ct on a light cone
            raise DivergentIntegralError(
                f'imaginary-axis term without decay ({decay:.3g})')
        return integrate_damped(
            lambda u: weight(u) * np.polynomial.polynomial.polyval(
                u, numerator), decay, self.spec)


def _padded(coefficients, size):
    missing = size - len(coefficients)
    if not missing:
        return coefficients
    return np.concatenate([coefficients, np.zeros(
        (missing,) + coefficients.shape[1:], dtype=complex)])
