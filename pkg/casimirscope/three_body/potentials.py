# -*- coding: utf-8 -*-
"""Casimir-Polder energies of the ground-state atoms A and B in presence of
the excited atom C, and the symmetrized three-body energy.

Every formula is a term table (see :mod:`.terms`) assembled in complex
arithmetic. Conjugate images of the displayed formulas are evaluated on the
relabelled scene and conjugated; the real part is returned and the size of
the discarded imaginary part is kept as ``imag_residual``.

Naming of the parts:

- pair energy ``de_nr`` (nonresonant) and ``de_r`` (resonant),
- three-body energy ``de_I`` (imaginary-frequency term, all pairs),
  ``de_II`` (mixed terms carrying the resonant frequency) and
  ``de_r_sym`` (resonant, not symmetrized).
"""
from typing import NamedTuple, Optional

import numpy as np
from loguru import logger as log

from .kernels import cos_over_r, exp_complex, f_apply, triple_contract
from .polarizability import (DETUNING_MIN_FACTOR, DetuningError,
                             ImaginaryAxisWeight, RealAxisWeight,
                             check_detuning, polarizability_of)
from .quadrature import DEFAULT_SPEC, IntegralResult
from .scene import CasimirError, CausalityRegion, classify_region, sign
from .terms import (Term, TermEvaluator, cos_i, exp_i, exp_u,
                    exp_u_abs, power, product, scaled, sin_i)

__all__ = ['PotentialTensor', 'EnergyBreakdown', 'RegionError',
           'DetuningError', 'delta_e_pair_nr', 'delta_e_pair_r',
           'delta_e_pair', 'delta_e_stationary', 'delta_e_pair_spacelike',
           'delta_e_sym_I', 'delta_e_sym_II', 'delta_e_sym_r',
           'delta_e_sym_total', 'delta_e_sym_spacelike_A',
           'delta_e_sym_stationary']

log.disable('casimirscope')

PAIR_PREFACTOR = -1.
"""float: Constant in front of the nonresonant pair energy.

Pinned so that its long-time limit is the stationary pair energy, whose
constant is ``-1`` (times ``|μ_C|²/3``).
"""

THREE_BODY_PREFACTOR = 1 / (12 * np.pi)

IMAG_RESIDUAL_THRESHOLD = 1e-6


class RegionError(CasimirError):
    """A limiting formula was used outside its region of validity."""


class PotentialTensor(NamedTuple):
    """Classical potential tensors between dipoles separated by ``r_vec``.

    ``v`` is ``-(1/2) F[(cos kγ + cos k'γ)/γ]`` for dipoles oscillating at
    ``k`` and ``k'``; ``v_r`` is ``-F[cos k0γ/γ]`` at the resonant frequency.
    """

    v: np.ndarray
    v_r: np.ndarray

    @classmethod
    def between(cls, k, k_prime, k0, r_vec):
        return cls(f_apply(-.5 * (cos_over_r(k) + cos_over_r(k_prime)),
                           r_vec).components.real,
                   resonant_potential(k0, r_vec))


def resonant_potential(k0, r_vec):
    """np.ndarray: ``-F[cos k0γ/γ]``."""
    return f_apply(-1 * cos_over_r(k0), r_vec).components.real


class EnergyBreakdown(NamedTuple):
    """Parts of a dynamical energy evaluation with their bookkeeping."""

    de_nr: float = 0.
    de_r: float = 0.
    de_I: float = 0.
    de_II: float = 0.
    de_r_sym: float = 0.
    total: float = 0.
    imag_residual: float = 0.
    region: Optional[CausalityRegion] = None
    error_estimate: float = 0.
    evaluations: int = 0
    converged: bool = True

    @property
    def is_real(self):
        """bool: Whether the discarded imaginary part is negligible."""
        return self.imag_residual <= IMAG_RESIDUAL_THRESHOLD * max(
            1., abs(self.total))


# Shared plumbing
# ===============

def _polarizabilities(scene, linewidth):
    return tuple(polarizability_of(atom, linewidth) for atom in scene.atoms)


def _guard(scene, factor=DETUNING_MIN_FACTOR):
    k0 = scene.k0
    check_detuning(scene.atom_a, k0, factor, 'A')
    check_detuning(scene.atom_b, k0, factor, 'B')


def _evaluate(scene, terms, spec):
    return TermEvaluator(scene.geometry, 'triple', spec).evaluate_all(terms)


def _conjugate(result):
    return result._replace(value=np.conj(result.value))


def _real(result, name):
    value = complex(result.value)
    if abs(value.imag) > IMAG_RESIDUAL_THRESHOLD * max(1., abs(value.real)):
        log.warning(f'{name}: imaginary residual {abs(value.imag):.3g}')
    if not result.converged:
        log.warning(f'{name}: quadrature did not converge')
    return value.real


def _breakdown(region, **parts):
    results = list(parts.values())
    total = IntegralResult.total(results)
    values = {name: complex(result.value).real
              for name, result in parts.items()}
    return EnergyBreakdown(
        total=sum(values.values()),
        imag_residual=abs(complex(total.value).imag),
        region=region, error_estimate=total.error_estimate,
        evaluations=total.evaluations, converged=total.converged,
        **values)


# Pair energy
# ===========

def _pair_nr_static(region):
    monomials = []
    if region.th_alpha:
        monomials += product(sin_i(beta=1., gamma=1.)
                             + sin_i(beta=1., gamma=-1.), exp_i(alpha=-1.))
    if region.th_alpha_plus_gamma:
        monomials += product(sin_i(beta=1.), exp_i(alpha=-1., gamma=-1.))
    if region.th_abs_alpha_minus_gamma:
        orientation = region.sgn_alpha_minus_gamma
        monomials += scaled(product(
            sin_i(beta=1.),
            exp_i(alpha=-orientation, gamma=orientation)), orientation)
    return monomials


def _pair_nr_transient(region, k0, ct):
    monomials = []
    if region.th_alpha:
        monomials += product(exp_i(alpha=-1., k=k0),
                             sin_i(beta=1., gamma=1.)
                             + sin_i(beta=1., gamma=-1.))
    phases = []
    if region.th_alpha_plus_gamma:
        phases += exp_i(alpha=-1., gamma=-1., k=k0)
    if region.th_abs_alpha_minus_gamma:
        orientation = region.sgn_alpha_minus_gamma
        phases += scaled(exp_i(alpha=-orientation, gamma=orientation, k=k0),
                         orientation)
    if phases:
        monomials += product(phases, sin_i(beta=1.))
    return scaled(product(monomials, exp_i(shift=-ct)),
                  np.exp(-1j * k0 * ct))


def _pair_nr_half(scene, ct, k0, spec, linewidth, include_transient=True):
    region = classify_region(scene.geometry, ct)
    pol_a, pol_b, _ = _polarizabilities(scene, linewidth)
    prefactor = PAIR_PREFACTOR * scene.atom_c.mu2 / 3
    terms = [
        Term(scaled(_pair_nr_static(region), prefactor), 'k',
             RealAxisWeight.product([pol_a, pol_b], k0)),
        Term(scaled(_pair_nr_transient(region, k0, ct),
                    prefactor * pol_b.real_axis(k0)), 'k',
             RealAxisWeight.product([pol_a], k0))]
    return _evaluate(scene, terms if include_transient else terms[:1], spec)


def pair_nr_result(scene, ct, spec=DEFAULT_SPEC, linewidth=0.,
                   include_transient=True):
    """IntegralResult: Complex nonresonant pair energy before ``Re``."""
    _guard(scene)
    k0 = scene.k0
    direct = _pair_nr_half(scene, ct, k0, spec, linewidth, include_transient)
    image = _pair_nr_half(scene.relabel('BAC'), ct, k0, spec, linewidth,
                          include_transient)
    return direct.plus(_conjugate(image))


def delta_e_pair_nr(scene, ct, spec=DEFAULT_SPEC, linewidth=0.,
                    include_transient=True):
    """Nonresonant pair energy of A and B at time ``ct``.

    Every θ-gated term is assembled, its A ⇄ B image conjugated and added,
    and the real part returned. ``include_transient=False`` keeps only the
    terms without ``e^{-ik ct}``.
    """
    return _real(pair_nr_result(scene, ct, spec, linewidth,
                                include_transient), 'pair nr')


def pair_r_result(scene, ct, linewidth=0.):
    _guard(scene)
    region = classify_region(scene.geometry, ct)
    if not (region.th_alpha and region.th_beta):
        return IntegralResult(0j)
    k0 = scene.k0
    pol_a, pol_b, _ = _polarizabilities(scene, linewidth)
    alpha_vector, beta_vector, gamma_vector = scene.geometry.vectors
    contraction = triple_contract(
        resonant_potential(k0, gamma_vector),
        f_apply(exp_complex(1j * k0), beta_vector),
        f_apply(exp_complex(-1j * k0), alpha_vector))
    value = (scene.atom_c.mu2 / 3 * pol_a.real_axis(k0)
             * pol_b.real_axis(k0) * 2 * contraction.real)
    return IntegralResult(value)


def delta_e_pair_r(scene, ct, linewidth=0.):
    """Resonant pair energy, closed form.

    Non-zero only when A and B are both inside the light cone of C.
    """
    return _real(pair_r_result(scene, ct, linewidth), 'pair r')


def delta_e_pair(scene, ct, spec=DEFAULT_SPEC, linewidth=0.):
    """EnergyBreakdown: Pair energy, ``de_nr + de_r``."""
    return _breakdown(classify_region(scene.geometry, ct),
                      de_nr=pair_nr_result(scene, ct, spec, linewidth),
                      de_r=pair_r_result(scene, ct, linewidth))


def _stationary_nr_half(scene, spec, linewidth):
    geometry = scene.geometry
    pol_a, pol_b, _ = _polarizabilities(scene, linewidth)
    orientation = sign(geometry.alpha - geometry.gamma)
    monomials = (
        product(cos_i(alpha=1.),
                sin_i(beta=1., gamma=1.) + sin_i(beta=1., gamma=-1.))
        + product(sin_i(beta=1.),
                  cos_i(alpha=1., gamma=1.)
                  + scaled(cos_i(alpha=1., gamma=-1.), orientation)))
    term = Term(scaled(monomials, -scene.atom_c.mu2 / 3), 'k',
                RealAxisWeight.product([pol_a, pol_b], scene.k0))
    return _evaluate(scene, [term], spec)


def stationary_parts(scene, spec=DEFAULT_SPEC, linewidth=0.):
    """Return the nonresonant and resonant stationary pair energies.

    The resonant part carries the sign of the long-time limit of the
    dynamical resonant term.
    """
    _guard(scene)
    k0 = scene.k0
    nonresonant = _stationary_nr_half(scene, spec, linewidth).plus(
        _conjugate(_stationary_nr_half(scene.relabel('BAC'), spec,
                                       linewidth)))
    pol_a, pol_b, _ = _polarizabilities(scene, linewidth)
    monomials = (cos_i(alpha=1., beta=-1., gamma=1., k=k0)
                 + cos_i(alpha=1., beta=-1., gamma=-1., k=k0))
    weight = (-scene.atom_c.mu2 / 3 * pol_a.real_axis(k0)
              * pol_b.real_axis(k0))
    resonant = _evaluate(scene, [Term(scaled(monomials, weight))], spec)
    return nonresonant, resonant


def delta_e_stationary(scene, spec=DEFAULT_SPEC, linewidth=0.):
    """Time-independent pair energy reached once every light cone is open."""
    nonresonant, resonant = stationary_parts(scene, spec, linewidth)
    return _real(nonresonant.plus(resonant), 'stationary pair')


def _spacelike_half(scene, ct, k0, spec, linewidth, include_transient=True):
    region = classify_region(scene.geometry, ct)
    orientation = region.sgn_beta_minus_gamma_minus_t
    pol_a, pol_b, _ = _polarizabilities(scene, linewidth)
    prefactor = PAIR_PREFACTOR * scene.atom_c.mu2 / 3

    bracket = (cos_i(beta=1., gamma=-1.)
               + scaled(exp_i(beta=-1., gamma=1.), -.5 * orientation)
               + scaled(exp_i(beta=1., gamma=-1.), -.5))
    static = product(sin_i(alpha=1.), bracket)

    resonant_bracket = (cos_i(beta=1., gamma=-1., k=k0)
                        + scaled(exp_i(beta=-1., gamma=1., k=k0), -.5)
                        + scaled(exp_i(beta=1., gamma=-1., k=k0),
                                 -.5 * orientation))
    transient = product(sin_i(alpha=1.), exp_i(shift=-ct),
                        exp_i(shift=-ct, k=k0), resonant_bracket)
    terms = [
        Term(scaled(static, prefactor), 'k',
             RealAxisWeight.product([pol_a, pol_b], k0)),
        Term(scaled(transient, -prefactor * pol_b.real_axis(k0)), 'k',
             RealAxisWeight.product([pol_a], k0))]
    return _evaluate(scene, terms if include_transient else terms[:1], spec)


def delta_e_pair_spacelike(scene, ct, spec=DEFAULT_SPEC, linewidth=0.,
                           include_transient=True):
    """Pair energy when A and B are outside C's light cone but see each
    other (``α, β > ct > γ``), from its own term table.

    Its static terms have the same real part as those of
    :func:`delta_e_pair_nr`; the transient ones differ.
    """
    region = classify_region(scene.geometry, ct)
    if region.th_alpha or region.th_beta or not region.th_gamma:
        raise RegionError(f'needs α, β > ct > γ, got {region.label} '
                          f'at ct={ct}')
    _guard(scene)
    k0 = scene.k0
    result = _spacelike_half(scene, ct, k0, spec, linewidth,
                             include_transient).plus(
        _conjugate(_spacelike_half(scene.relabel('BAC'), ct, k0, spec,
                                   linewidth, include_transient)))
    return _real(result, 'pair spacelike')


# Three-body energy
# =================

def _three_body_weight(scene, linewidth, labels='ABC'):
    polarizabilities = dict(zip('ABC', _polarizabilities(scene, linewidth)))
    return ImaginaryAxisWeight(tuple(polarizabilities[label]
                                     for label in labels))


def sym_I_coefficients(region):
    """The coefficients of the four exponentials of the first part.

    Ordered as ``e^{-u(α+β+γ)}``, ``e^{-u(α-β+γ)}``, ``e^{-u(α+β-γ)}``,
    ``e^{-u(-α+β+γ)}``.
    """
    return (6 - region.sgn_alpha - region.sgn_beta - region.sgn_gamma
            - region.sgn_alpha_plus_beta - region.sgn_alpha_plus_gamma
            - region.sgn_beta_plus_gamma,
            -region.sgn_beta + region.sgn_alpha_plus_gamma,
            -region.sgn_gamma + region.sgn_alpha_plus_beta,
            -region.sgn_alpha + region.sgn_beta_plus_gamma)


def sym_I_result(scene, ct, spec=DEFAULT_SPEC, linewidth=0.):
    region = classify_region(scene.geometry, ct)
    coefficients = sym_I_coefficients(region)
    if not any(coefficients):
        return IntegralResult(0j)
    exponentials = (exp_u(1., 1., 1.), exp_u(1., -1., 1.),
                    exp_u(1., 1., -1.), exp_u(-1., 1., 1.))
    monomials = []
    for coefficient, exponential in zip(coefficients, exponentials):
        if coefficient:
            monomials += scaled(exponential,
                                coefficient * THREE_BODY_PREFACTOR)
    term = Term(monomials, 'u', _three_body_weight(scene, linewidth))
    return _evaluate(scene, [term], spec)


def delta_e_sym_I(scene, ct, spec=DEFAULT_SPEC, linewidth=0.):
    """Imaginary-frequency part of the three-body energy.

    Exactly zero, without integrating, when every coefficient vanishes.
    """
    return _real(sym_I_result(scene, ct, spec, linewidth), 'sym I')


def _sym_II_pair_terms(scene, ct, k0, linewidth):
    """The ``α_A(iu) α_C(iu)`` bracket gated by θ(t - α), before images."""
    distances = scene.geometry.distances
    shifted = [exp_u_abs(distances, beta=1., gamma=1., shift=-ct),
               exp_u_abs(distances, beta=1., gamma=-1., shift=-ct),
               exp_u_abs(distances, beta=1., gamma=-1., shift=ct)]
    (plus, sgn_plus), (minus, sgn_minus), (minus_t, sgn_minus_t) = shifted
    retarded = exp_u(beta=1., gamma=1., shift=ct)

    cosine_kernel = (retarded + scaled(plus, sgn_plus)
                     + scaled(minus, sgn_minus)
                     + scaled(minus_t, sgn_minus_t))
    sine_kernel = retarded + plus + minus + scaled(minus_t, -1.)
    monomials = (product(cos_i(alpha=1., shift=-ct, k=k0), cosine_kernel)
                 + product(scaled(sin_i(alpha=1., shift=-ct, k=k0), 1 / k0),
                           power(1), sine_kernel))
    return Term(monomials, 'u', _three_body_weight(scene, linewidth, 'AC'))


def _sym_II_late_terms(scene, ct, k0, linewidth):
    """The ``α_B(iu) α_C(iu)`` bracket gated by θ(t - (β+γ))."""
    distances = scene.geometry.distances
    retarded = exp_u(alpha=1., shift=ct)
    shifted, orientation = exp_u_abs(distances, alpha=1., shift=-ct)
    monomials = (
        product(cos_i(beta=1., gamma=1., shift=-ct, k=k0),
                retarded + scaled(shifted, orientation))
        + product(scaled(sin_i(beta=1., gamma=1., shift=-ct, k=k0), 1 / k0),
                  power(1), retarded + shifted))
    return Term(monomials, 'u', _three_body_weight(scene, linewidth, 'BC'))


def _sym_II_image(scene, ct, k0, spec, linewidth):
    region = classify_region(scene.geometry, ct)
    pol_a, pol_b, _ = _polarizabilities(scene, linewidth)
    results = []
    if region.th_alpha:
        inner = scene.relabel('ACB')
        bracket = _evaluate(
            scene, [_sym_II_pair_terms(scene, ct, k0, linewidth)], spec).plus(
            _evaluate(inner, [_sym_II_pair_terms(inner, ct, k0, linewidth)],
                      spec))
        results.append(bracket.scaled(2 * pol_b.real_axis(k0)))
    if region.th_beta_plus_gamma:
        late = _evaluate(scene, [_sym_II_late_terms(scene, ct, k0, linewidth)],
                         spec)
        results.append(late.scaled(4 * pol_a.real_axis(k0)))
    return IntegralResult.total(results)


def sym_II_result(scene, ct, spec=DEFAULT_SPEC, linewidth=0.):
    _guard(scene)
    k0 = scene.k0
    images = (scene, scene.relabel('BAC'), scene.relabel('CBA'))
    return IntegralResult.total(
        _sym_II_image(image, ct, k0, spec, linewidth)
        for image in images).scaled(THREE_BODY_PREFACTOR)


def delta_e_sym_II(scene, ct, spec=DEFAULT_SPEC, linewidth=0.):
    """Three-body terms mixing the resonant frequency and imaginary ones.

    The images exchanging A ⇄ B and A ⇄ C keep ``k0`` fixed; the
    polarizability of C at ``k0`` is its resonant value.
    """
    return _real(sym_II_result(scene, ct, spec, linewidth), 'sym II')


def sym_r_result(scene, ct, linewidth=0., gated=True):
    _guard(scene)
    region = classify_region(scene.geometry, ct)
    if gated and not (region.th_alpha and region.th_beta):
        return IntegralResult(0j)
    k0 = scene.k0
    pol_a, pol_b, _ = _polarizabilities(scene, linewidth)
    alpha_vector, beta_vector, gamma_vector = scene.geometry.vectors
    contraction = triple_contract(
        f_apply(cos_over_r(k0), gamma_vector),
        f_apply(exp_complex(1j * k0), beta_vector),
        f_apply(exp_complex(-1j * k0), alpha_vector))
    value = -(scene.atom_c.mu2 / 3 * pol_a.real_axis(k0)
              * pol_b.real_axis(k0) * 2 * contraction.real)
    return IntegralResult(value)


def delta_e_sym_r(scene, ct, linewidth=0.):
    """Resonant part of the three-body energy (not symmetrized)."""
    return _real(sym_r_result(scene, ct, linewidth), 'sym r')


def delta_e_sym_total(scene, ct, spec=DEFAULT_SPEC, linewidth=0.):
    """EnergyBreakdown: ``de_I + de_II + de_r_sym``."""
    return _breakdown(classify_region(scene.geometry, ct),
                      de_I=sym_I_result(scene, ct, spec, linewidth),
                      de_II=sym_II_result(scene, ct, spec, linewidth),
                      de_r_sym=sym_r_result(scene, ct, linewidth))


def delta_e_sym_spacelike_A(scene, ct, spec=DEFAULT_SPEC, linewidth=0.,
                            include_k_terms=True):
    """Three-body energy when A is outside the light cones of B and C while
    B and C see each other (``β, γ > ct ≥ α``).

    ``include_k_terms=False`` keeps the imaginary-frequency term only.
    """
    region = classify_region(scene.geometry, ct)
    if region.th_beta or region.th_gamma or not region.th_alpha:
        raise RegionError(f'needs β, γ > ct ≥ α, got {region.label} '
                          f'at ct={ct}')
    k0 = scene.k0
    imaginary = Term(scaled(exp_u(1., 1., 1.) + exp_u(-1., 1., 1.),
                            1 / (6 * np.pi)),
                     'u', _three_body_weight(scene, linewidth))
    results = [_evaluate(scene, [imaginary], spec)]

    if include_k_terms:
        _guard(scene)
        pol_a, pol_b, pol_c = _polarizabilities(scene, linewidth)
        monomials = product(exp_i(alpha=-1., shift=-ct, k=k0),
                            sin_i(beta=1., gamma=1.), exp_i(shift=ct))
        integral = _evaluate(scene, [Term(
            scaled(monomials, scene.atom_c.mu2 / 3), 'k',
            RealAxisWeight.product([pol_a], k0))], spec)
        for resonant in (pol_b.real_axis(k0), pol_c.real_axis(k0)):
            weighted = integral.scaled(-resonant / (6 * np.pi))
            results += [weighted, _conjugate(weighted)]
    return _real(IntegralResult.total(results), 'sym spacelike A')


def delta_e_sym_stationary(scene, spec=DEFAULT_SPEC, linewidth=0.):
    """Three-body energy once every light cone is open.

    Imaginary-frequency triple-polarizability integral plus the resonant
    term; the mixed terms have died out.
    """
    term = Term(scaled(exp_u(1., 1., 1.), 1 / np.pi), 'u',
                _three_body_weight(scene, linewidth))
    result = _evaluate(scene, [term], spec).plus(
        sym_r_result(scene, 0., linewidth, gated=False))
    return _real(result, 'sym stationary')
