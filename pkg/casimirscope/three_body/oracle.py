# -*- coding: utf-8 -*-
"""Brute-force oracles, used by the tests and the validation command.

- :func:`box_corr` sums the source part of the field correlation mode by mode
  in a periodic box of side ``L``, with two polarizations per wavevector.
- :func:`fd_f_apply` applies ``-∇²δ + ∇∇`` to a scalar kernel by central
  finite differences.

Nothing here goes through the closed forms of :mod:`.kernels` or through
the quadrature engines; the dyadic retarded field is written out inline.
"""
from typing import NamedTuple

import numpy as np
from einops import einsum
from loguru import logger as log

from .scene import CasimirError, classify_region

__all__ = ['BoxSpec', 'BoxCorrelation', 'BudgetError', 'box_corr',
           'polarization_basis', 'polarization_sum', 'fd_f_apply']

log.disable('casimirscope')


class BudgetError(CasimirError):
    """The box needs more modes than allowed."""


class BoxSpec(NamedTuple):
    """A periodic quantization box."""

    side: float
    """float: Box side ``L``; ``L·k0 ≥ 20`` for meaningful comparisons."""

    k_max: float
    """float: Modes with ``|k| ≤ k_max`` are summed."""

    regulator: float = 0.
    """float: Damping ``e^{-εk}`` of every mode, as in the continuum."""

    mode_budget: int = 20_000_000
    seed: int = 0
    """int: Seed of the vector polarization bases are built from."""

    @property
    def n_max(self):
        return int(np.floor(self.k_max * self.side / (2 * np.pi)))

    @property
    def estimated_modes(self):
        return int(4 / 3 * np.pi * self.n_max**3)

    def validate(self):
        if self.side <= 0 or self.k_max <= 0:
            raise BudgetError('box side and cutoff must be > 0')
        if self.estimated_modes > self.mode_budget:
            raise BudgetError(
                f'box needs ~{self.estimated_modes} modes, budget is '
                f'{self.mode_budget}')
        return self


class BoxCorrelation(NamedTuple):
    nonresonant: np.ndarray
    resonant: np.ndarray
    modes: int

    @property
    def components(self):
        return self.nonresonant + self.resonant


# Polarizations
# =============

def _seed_vector(seed):
    vector = np.random.default_rng(seed).normal(size=3)
    return vector / np.linalg.norm(vector)


def polarization_basis(directions, seed=0):
    """Two unit polarizations orthogonal to each unit direction.

    Gram-Schmidt of a seeded vector against each direction, with a fixed
    fallback vector when the two are parallel.
    """
    directions = np.atleast_2d(directions)
    seed_vector = np.broadcast_to(_seed_vector(seed), directions.shape)
    first = seed_vector - np.sum(seed_vector * directions, axis=1,
                                 keepdims=True) * directions
    norms = np.linalg.norm(first, axis=1)
    parallel = norms < 1e-8
    if np.any(parallel):
        fallback = np.cross(directions[parallel], [0., 0., 1.])
        fallback[np.linalg.norm(fallback, axis=1) < 1e-8] = [1., 0., 0.]
        first[parallel] = fallback
        norms = np.linalg.norm(first, axis=1)
    first = first / norms[:, None]
    second = np.cross(directions, first)
    return first, second


def polarization_sum(k_vec, seed=0):
    """np.ndarray: ``Σ_j ê_l ê_n`` at one wavevector."""
    k_vec = np.asarray(k_vec, dtype=float)
    first, second = polarization_basis(k_vec / np.linalg.norm(k_vec), seed)
    return np.outer(first[0], first[0]) + np.outer(second[0], second[0])


# Box sum
# =======

def _retarded_dyadic(q, distance, direction):
    """``F[e^{iqr}/r]`` written out as transverse and longitudinal parts.

    ``q`` may be an array; returns ``(a, b)`` with ``a δ + b r̂r̂``.
    """
    r = distance
    phase = np.exp(1j * q * r)
    transverse = phase * (q**2 + 1j * q / r - 1 / r**2) / r
    longitudinal = phase * (-q**2 - 3j * q / r + 3 / r**2) / r
    return transverse, longitudinal


def _tensor(a, b, direction):
    direction = np.asarray(direction)
    return a * np.eye(3) + b * np.outer(direction, direction)


def _mode_chunks(spec):
    n_max = spec.n_max
    span = np.arange(-n_max, n_max + 1)
    n_y, n_z = np.meshgrid(span, span, indexing='ij')
    n_y, n_z = n_y.ravel(), n_z.ravel()
    for n_x in span:
        squared = n_x**2 + n_y**2 + n_z**2
        keep = (squared <= n_max**2) & (squared > 0)
        if np.any(keep):
            yield (2 * np.pi / spec.side) * np.stack(
                [np.full(keep.sum(), n_x), n_y[keep], n_z[keep]], axis=1)


def _nonresonant_half(scene, ct, k0, mu2_c, spec):
    """Complex mode sum of the θ(t - β) half (index ``l`` at A)."""
    geometry = scene.geometry
    alpha_vector, beta_vector, _ = geometry.vectors
    volume = spec.side**3
    total = np.zeros((3, 3), dtype=complex)
    modes = 0
    for k_vectors in _mode_chunks(spec):
        k = np.linalg.norm(k_vectors, axis=1)
        directions = k_vectors / k[:, None]
        first, second = polarization_basis(directions, spec.seed)
        projectors = (einsum(first, first, 'mode l, mode n -> mode l n')
                      + einsum(second, second, 'mode l, mode n -> mode l n'))

        a_free, b_free = _retarded_dyadic(-k, geometry.alpha,
                                          geometry.alpha_hat)
        a_pole, b_pole = _retarded_dyadic(k0, geometry.alpha,
                                          geometry.alpha_hat)
        delayed = np.exp(-1j * (k0 + k) * ct)
        a = a_free - delayed * a_pole
        b = b_free - delayed * b_pole
        hat = np.asarray(geometry.alpha_hat)
        field = (einsum(a, np.eye(3), 'mode, m n -> mode m n')
                 + einsum(b, np.outer(hat, hat), 'mode, m n -> mode m n'))

        amplitude = (k / (k0 + k) * np.exp(-spec.regulator * k)
                     * np.exp(-1j * k_vectors @ beta_vector))
        total += einsum(amplitude, projectors, field,
                        'mode, mode l n, mode m n -> l m')
        modes += len(k)
    return -2 * np.pi / volume * mu2_c / 3 * total, modes


def box_corr(scene, ct, box, k0=None, mu2_c=None):
    """Correlation of the field of C summed over the modes of a box.

    The resonant part uses the inline dyadic field; the nonresonant part is
    the mode sum itself, θ gates applied as for the continuum.
    """
    k0 = scene.k0 if k0 is None else k0
    mu2_c = scene.atom_c.mu2 if mu2_c is None else mu2_c
    box.validate()
    region = classify_region(scene.geometry, ct)
    geometry = scene.geometry

    resonant = np.zeros((3, 3))
    if region.th_alpha and region.th_beta:
        tensor_b = _tensor(*_retarded_dyadic(-k0, geometry.beta,
                                             geometry.beta_hat),
                           geometry.beta_hat)
        tensor_a = _tensor(*_retarded_dyadic(k0, geometry.alpha,
                                             geometry.alpha_hat),
                           geometry.alpha_hat)
        product = mu2_c / 3 * tensor_b @ tensor_a.T
        resonant = (product + product.conj()).real

    nonresonant = np.zeros((3, 3), dtype=complex)
    modes = 0
    if region.th_beta:
        half, modes = _nonresonant_half(scene, ct, k0, mu2_c, box)
        nonresonant += half
    if region.th_alpha:
        image, modes = _nonresonant_half(scene.relabel('BAC'), ct, k0, mu2_c,
                                         box)
        nonresonant += image.conj().T
    log.info(f'box of side {box.side} summed over {modes} modes')
    return BoxCorrelation(nonresonant, resonant, modes)


# Finite differences
# ==================

def _hessian(function, point, step):
    point = np.asarray(point, dtype=float)
    hessian = np.zeros((3, 3), dtype=complex)
    center = function(point)
    unit = np.eye(3)
    for l in range(3):
        hessian[l, l] = (function(point + step * unit[l]) - 2 * center
                         + function(point - step * unit[l])) / step**2
        for n in range(l + 1, 3):
            shifted = [function(point + step * (s_l * unit[l] + s_n * unit[n]))
                       for s_l, s_n in ((1, 1), (1, -1), (-1, 1), (-1, -1))]
            value = (shifted[0] - shifted[1] - shifted[2]
                     + shifted[3]) / (4 * step**2)
            hessian[l, n] = hessian[n, l] = value
    return hessian


def fd_f_apply(kernel, r_vec, step=1e-3):
    """``(-∇²δ + ∇∇) kernel(|r|)`` by central differences.

    Two step sizes are combined by Richardson extrapolation.
    """
    r_vec = np.asarray(r_vec, dtype=float)
    distance = np.linalg.norm(r_vec)
    fastest = max((abs(z) for _, z in kernel.terms), default=0.)
    if step > .1 * distance or step * fastest > .1:
        log.warning(f'finite-difference step {step} is coarse for '
                    f'r={distance:.3g} and |z|={fastest:.3g}')

    def function(point):
        return kernel(np.linalg.norm(point))

    coarse = _hessian(function, r_vec, step)
    fine = _hessian(function, r_vec, step / 2)
    hessian = (4 * fine - coarse) / 3
    return -np.trace(hessian) * np.eye(3) + hessian
