# -*- coding: utf-8 -*-
"""The two integral engines every energy and correlation reduces to.

- :func:`integrate_damped` computes ``∫₀^∞ g(u) e^{-u s} du`` for smooth,
  polynomially bounded ``g`` (imaginary-frequency integrals).
- :func:`integrate_oscillatory_pv` computes principal values of
  ``∫₀^∞ h(k) Σ_i w_i e^{i k x_i} dk`` for amplitudes decaying at least like
  ``1/k``, with simple real poles of ``h``.

Real-axis integrands of the dipole problem grow polynomially, so
:func:`integrate_rational` first splits a rational amplitude into its
polynomial part, integrated analytically as generalized (Abel) moments, and a
proper remainder that goes through the oscillatory engine.
"""
from functools import lru_cache
from math import factorial
from typing import Callable, NamedTuple, Sequence, Tuple

import numpy as np
from loguru import logger as log
from numpy.polynomial import legendre
from numpy.polynomial import polynomial as poly
from scipy.integrate import quad

from .scene import CasimirError

__all__ = ['QuadratureSpec', 'IntegralResult', 'RationalAmplitude',
           'integrate_damped', 'integrate_oscillatory_pv',
           'integrate_rational', 'polynomial_moment', 'pole_integral',
           'DEFAULT_SPEC']

log.disable('casimirscope')

EPS_PHASE = 1e-9
"""float: Phases below this magnitude are treated as degenerate (zero)."""


class QuadratureError(CasimirError):
    """Base class for integration errors."""


class PoleError(QuadratureError):
    """Poles on the boundary, overlapping or coincident."""


class DivergentIntegralError(QuadratureError):
    """A non-oscillating amplitude does not decay fast enough."""


class QuadratureSpec(NamedTuple):
    """Tolerances and knobs shared by both engines."""

    rel_tol: float = 1e-8
    abs_tol: float = 1e-12
    max_subdivisions: int = 200
    """int: Subinterval limit of each adaptive panel."""

    acceleration_order: int = 8
    """int: Order of the averaging transform on half-period partial sums."""

    pv_window: float = 1e-4
    """float: Half width of the symmetric excision around each pole."""

    u_cutoff_factor: float = 40.
    """float: Imaginary-axis truncation, as a multiple of ``1/s``."""

    max_panels: int = 4000
    """int: Half-period panels allowed before giving up."""

    def validate(self):
        for name in ('rel_tol', 'abs_tol', 'pv_window', 'u_cutoff_factor'):
            if getattr(self, name) <= 0:
                raise QuadratureError(f'{name} must be > 0')
        if self.acceleration_order < 1 or self.max_subdivisions < 1:
            raise QuadratureError('orders and limits must be >= 1')
        return self

    def tolerance(self, value):
        return max(self.rel_tol * abs(value), self.abs_tol)


DEFAULT_SPEC = QuadratureSpec()


class IntegralResult(NamedTuple):
    """Value of an integral and its bookkeeping."""

    value: complex
    """complex: Integral value (an array for tensor valued numerators)."""

    error_estimate: float = 0.
    evaluations: int = 0
    converged: bool = True

    def scaled(self, factor):
        return IntegralResult(factor * self.value,
                              abs(factor) * self.error_estimate,
                              self.evaluations, self.converged)

    def plus(self, other):
        return IntegralResult(self.value + other.value,
                              self.error_estimate + other.error_estimate,
                              self.evaluations + other.evaluations,
                              self.converged and other.converged)

    @classmethod
    def total(cls, results):
        accumulated = cls(0j)
        for result in results:
            accumulated = accumulated.plus(result)
        return accumulated


# Panels
# ======

def _quad_part(function, lower, upper, spec):
    output = quad(function, lower, upper,
                  epsabs=spec.abs_tol, epsrel=spec.rel_tol,
                  limit=spec.max_subdivisions, full_output=1)
    value, error, info = output[:3]
    # a fourth item is only returned with a warning message; roundoff
    # warnings with an error estimate within tolerance are accepted
    accepted = len(output) < 4 or error <= spec.tolerance(value)
    return value, error, info['neval'], accepted


def _quad_complex(function, lower, upper, spec):
    """Adaptive Gauss-Kronrod integration of a complex function."""
    real = _quad_part(lambda x: function(x).real, lower, upper, spec)
    imag = _quad_part(lambda x: function(x).imag, lower, upper, spec)
    return IntegralResult(real[0] + 1j * imag[0], real[1] + imag[1],
                          real[2] + imag[2], real[3] and imag[3])


def _pv_window(function, pole, width, spec):
    """PV over ``[pole - width, pole + width]`` from the even part.

    ``f(p+s) + f(p-s)`` is regular at ``s = 0`` for a simple pole, so it is
    integrated with Gauss-Legendre nodes, which never touch the pole.
    """
    estimates = []
    for n_nodes in (16, 32):
        nodes, weights = legendre.leggauss(n_nodes)
        offsets = width * (nodes + 1) / 2
        even = [function(pole + s) + function(pole - s) for s in offsets]
        estimates.append(width / 2 * np.dot(weights, even))
    error = abs(estimates[1] - estimates[0])
    return IntegralResult(complex(estimates[1]), error, 48,
                          error <= spec.tolerance(estimates[1]))


def _check_poles(poles, spec):
    poles = sorted(float(pole) for pole in poles)
    width = spec.pv_window
    if poles and poles[0] <= width:
        raise PoleError(f'pole {poles[0]} too close to the lower bound')
    for left, right in zip(poles, poles[1:]):
        if right - left <= 2 * width:
            raise PoleError(f'pole windows of {left} and {right} overlap')
    return poles


def _head(function, poles, upper, spec):
    """Integrate ``[0, upper]`` with symmetric excision around ``poles``."""
    results = []
    lower = 0.
    for pole in poles:
        results.append(_quad_complex(function, lower, pole - spec.pv_window,
                                     spec))
        results.append(_pv_window(function, pole, spec.pv_window, spec))
        lower = pole + spec.pv_window
    if upper > lower:
        results.append(_quad_complex(function, lower, upper, spec))
    return IntegralResult.total(results)


def _averaged(partial_sums, order):
    """Repeated averaging (Euler transform) of the last partial sums."""
    values = list(partial_sums[-(order + 1):])
    while len(values) > 1:
        values = [(left + right) / 2 for left, right in zip(values, values[1:])]
    return values[0]


def _normalized_phases(phases):
    normalized = []
    for phase in phases:
        if isinstance(phase, tuple):
            weight, wavelength = phase
        else:
            weight, wavelength = 1., phase
        normalized.append((complex(weight), float(wavelength)))
    return normalized


# Engines
# =======

def integrate_damped(g: Callable[[float], complex], s: float,
                     spec: QuadratureSpec = DEFAULT_SPEC) -> IntegralResult:
    """Compute ``∫₀^∞ g(u) e^{-u s} du``.

    Exemples:
        >>> round(integrate_damped(lambda u: u, 2.).value.real, 12)
        0.25
    """
    if s <= 0:
        raise QuadratureError(f'decay scale must be > 0, got {s}')
    cutoff = spec.u_cutoff_factor / s
    result = _quad_complex(lambda u: complex(g(u)) * np.exp(-u * s),
                           0., cutoff, spec)
    tail = abs(complex(g(cutoff))) * np.exp(-spec.u_cutoff_factor) / s
    converged = (result.converged
                 and result.error_estimate + tail
                 <= spec.tolerance(result.value))
    if not converged:
        log.warning(f'damped integral with s={s} did not converge '
                    f'(error {result.error_estimate + tail:.3g})')
    return result._replace(error_estimate=result.error_estimate + tail,
                           converged=converged)


def integrate_oscillatory_pv(amplitude: Callable[[float], complex],
                             phases: Sequence,
                             poles: Sequence[float] = (),
                             spec: QuadratureSpec = DEFAULT_SPEC,
                             regulator: float = 0.) -> IntegralResult:
    """Principal value of ``∫₀^∞ h(k) Σ_i w_i e^{i k x_i} e^{-εk} dk``.

    ``phases`` holds ``(w_i, x_i)`` pairs, or bare ``x_i`` for unit weights.
    Beyond the last pole the axis is cut in half periods of the fastest
    oscillation and the partial sums are accelerated by repeated averaging,
    which assumes the other oscillations flip sign over the same half period
    (equal or odd-multiple wavelengths).

    Exemples:
        >>> sin_over_k = integrate_oscillatory_pv(
        ...     lambda k: 1 / (2j * k) if k else .5, [(1, 1.), (-1, -1.)])
        >>> round(sin_over_k.value.real, 7)
        1.5707963
    """
    phases = _normalized_phases(phases)
    poles = _check_poles(poles, spec)

    def integrand(k):
        oscillation = sum(weight * np.exp(1j * k * wavelength)
                          for weight, wavelength in phases)
        return complex(amplitude(k)) * oscillation * np.exp(-regulator * k)

    fastest = max((abs(wavelength) for _, wavelength in phases), default=0.)
    last = poles[-1] + spec.pv_window if poles else 0.

    if fastest < EPS_PHASE:
        # no oscillation: plain adaptive integration up to infinity
        head = _head(integrand, poles, last, spec)
        tail = _quad_complex(integrand, last, np.inf, spec)
        result = head.plus(tail)
        return result._replace(converged=result.converged and
                               result.error_estimate
                               <= spec.tolerance(result.value))

    half_period = np.pi / fastest
    first_node = np.ceil(last / half_period) * half_period
    head = _head(integrand, poles, first_node, spec)

    partial_sums = [head.value]
    evaluations = head.evaluations
    panel_errors = head.error_estimate
    accepted = head.converged
    estimates = []
    lower = first_node
    order = spec.acceleration_order
    for _ in range(spec.max_panels):
        panel = _quad_complex(integrand, lower, lower + half_period, spec)
        lower += half_period
        evaluations += panel.evaluations
        panel_errors += panel.error_estimate
        accepted = accepted and panel.converged
        partial_sums.append(partial_sums[-1] + panel.value)
        if len(partial_sums) <= order + 1:
            continue
        estimates.append(_averaged(partial_sums, order))
        if (len(estimates) >= 3
                and _tail_error(estimates) <= spec.tolerance(estimates[-1])):
            break

    value = estimates[-1] if estimates else partial_sums[-1]
    tail = (_tail_error(estimates) if len(estimates) >= 3
            else abs(partial_sums[-1] - partial_sums[-2]))
    # panels were each accepted at their own tolerance
    converged = accepted and tail <= spec.tolerance(value)
    error = tail + panel_errors
    if not converged:
        log.warning(f'oscillatory integral with wavelength {fastest} did not '
                    f'converge after {len(partial_sums) - 1} panels '
                    f'(error {error:.3g})')
    return IntegralResult(complex(value), float(error), evaluations,
                          converged)


def _tail_error(estimates):
    """Spread of the last three averaged estimates."""
    return max(abs(estimates[-1] - estimates[-2]),
               abs(estimates[-2] - estimates[-3]))


# Rational amplitudes
# ===================

def polynomial_moment(n, wavelength, regulator=0.):
    """Generalized ``∫₀^∞ kⁿ e^{i k x} e^{-εk} dk = n!/(ε - i x)^{n+1}``.

    Exemples:
        >>> polynomial_moment(0, 2.) == .5j
        True
    """
    denominator = regulator - 1j * wavelength
    if abs(denominator) < EPS_PHASE:
        raise DivergentIntegralError(
            f'moment of order {n} diverges at zero phase')
    return factorial(n) / denominator**(n + 1)


class RationalAmplitude(NamedTuple):
    """``numerator(k) / Π (k - root)``.

    ``numerator`` holds ascending coefficients along its first axis; any
    trailing axes (*e.g.* free tensor indices) are carried through.
    """

    numerator: np.ndarray
    roots: Tuple[complex, ...]

    @property
    def denominator(self):
        return poly.polyfromroots(self.roots)

    def __call__(self, k):
        return (poly.polyval(k, np.asarray(self.numerator))
                / poly.polyval(k, self.denominator))

    @property
    def distinct_roots(self):
        roots = np.asarray(self.roots, dtype=complex)
        return all(abs(left - right) > 1e-12 * max(1., abs(left))
                   for i, left in enumerate(roots) for right in roots[i + 1:])

    def real_poles(self, tolerance=1e-12):
        """List[float]: Roots on the positive real axis."""
        poles = [root.real for root in np.asarray(self.roots, dtype=complex)
                 if abs(root.imag) <= tolerance and root.real > 0]
        if len(set(np.round(poles, 12))) != len(poles):
            raise PoleError(f'coincident real poles {sorted(poles)}; '
                            f'use a finite linewidth')
        return poles

    def quotient(self):
        """Polynomial part, with the trailing axes of the numerator."""
        numerator = np.asarray(self.numerator, dtype=complex)
        flat = numerator.reshape(len(numerator), -1)
        denominator = self.denominator
        degree = max(len(numerator) - len(self.roots), 1)
        quotient = np.zeros((degree, flat.shape[1]), dtype=complex)
        for column in range(flat.shape[1]):
            part, _ = poly.polydiv(flat[:, column], denominator)
            quotient[:len(part), column] = part
        return quotient.reshape((degree,) + numerator.shape[1:])

    def residues(self):
        """Residues at each root, valid for distinct roots only."""
        roots = np.asarray(self.roots, dtype=complex)
        numerator = np.asarray(self.numerator, dtype=complex)
        residues = []
        for i, root in enumerate(roots):
            others = np.prod([root - other for j, other in enumerate(roots)
                              if j != i])
            residues.append(poly.polyval(root, numerator) / others)
        return residues


@lru_cache(maxsize=4096)
def pole_integral(root: complex, wavelength: float,
                  spec: QuadratureSpec = DEFAULT_SPEC,
                  regulator: float = 0.) -> IntegralResult:
    """PV of ``∫₀^∞ e^{i k x} e^{-εk} / (k - root) dk``.

    Results are cached: every term sharing a pole and a phase reuses it.
    """
    root = complex(root)
    poles = ([root.real] if abs(root.imag) <= 1e-12 and root.real > 0
             else [])
    return integrate_oscillatory_pv(lambda k: 1 / (k - root),
                                    [(1., wavelength)], poles, spec,
                                    regulator)


def _check_moments(quotient, wavelength, regulator):
    if abs(wavelength) < EPS_PHASE and regulator == 0. and np.any(quotient):
        raise DivergentIntegralError(
            'non-oscillating amplitude grows polynomially')


def integrate_rational(amplitude: RationalAmplitude, wavelength: float,
                       spec: QuadratureSpec = DEFAULT_SPEC,
                       regulator: float = 0.) -> IntegralResult:
    """PV of ``∫₀^∞ R(k) e^{i k x} e^{-εk} dk`` for a rational ``R``.

    The polynomial part of ``R`` is integrated as generalized moments. With
    distinct roots the proper remainder is a sum of residues over
    ``k - root``, each integrated once by :func:`pole_integral`; repeated
    (complex) roots fall back to integrating the remainder directly.
    The value keeps the trailing axes of the numerator.
    """
    quotient = amplitude.quotient()
    _check_moments(quotient, wavelength, regulator)
    moments = sum(coefficient * polynomial_moment(n, wavelength, regulator)
                  for n, coefficient in enumerate(quotient) if np.any(
                      coefficient))
    poles = amplitude.real_poles()

    if amplitude.distinct_roots and abs(wavelength) >= EPS_PHASE:
        parts = [pole_integral(complex(root), float(wavelength), spec,
                               float(regulator))
                 for root in amplitude.roots]
        residues = amplitude.residues()
        value = sum(residue * part.value
                    for residue, part in zip(residues, parts))
        result = IntegralResult(
            value,
            float(sum(np.max(np.abs(residue)) * part.error_estimate
                      for residue, part in zip(residues, parts))),
            sum(part.evaluations for part in parts),
            all(part.converged for part in parts))
    else:
        result = _integrate_remainder(amplitude, wavelength, poles, spec,
                                      regulator)

    log.debug(f'rational integral at x={wavelength:.6g} over '
              f'{len(amplitude.roots)} roots')
    return result._replace(value=result.value + moments)


def _integrate_remainder(amplitude, wavelength, poles, spec, regulator):
    numerator = np.asarray(amplitude.numerator, dtype=complex)
    shape = numerator.shape[1:]
    flat = numerator.reshape(len(numerator), -1)
    denominator = amplitude.denominator
    if abs(wavelength) < EPS_PHASE and regulator == 0.:
        gap = len(amplitude.roots) - max(
            len(np.trim_zeros(column, 'b')) for column in flat.T) + 1
        if gap < 2:
            raise DivergentIntegralError(
                'non-oscillating amplitude decays slower than 1/k²')

    results = []
    for column in range(flat.shape[1]):
        _, remainder = poly.polydiv(flat[:, column], denominator)
        if not np.any(remainder):
            results.append(IntegralResult(0j))
            continue
        results.append(integrate_oscillatory_pv(
            lambda k, remainder=remainder: (poly.polyval(k, remainder)
                                            / poly.polyval(k, denominator)),
            [(1., wavelength)], poles, spec, regulator))
    return IntegralResult(
        np.array([result.value for result in results]).reshape(shape)
        if shape else results[0].value,
        float(sum(result.error_estimate for result in results)),
        sum(result.evaluations for result in results),
        all(result.converged for result in results))
