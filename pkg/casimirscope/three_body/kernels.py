# -*- coding: utf-8 -*-
"""Closed-form dyadic dipole tensors.

The differential operator ``F = -∇²δ + ∇∇`` is applied to spherical kernels
``f(r)``. For any radial function

    F_ln f = δ_ln (-f'' - 2f'/r) + (δ_ln - r̂_l r̂_n) f'/r + r̂_l r̂_n f''

so the result only needs the analytic first and second radial derivatives.
Every kernel of the family is a weighted sum of ``e^{z r}/r`` terms, for
which ``F`` gives ``e^{z r} [A(z) δ + B(z) r̂r̂]`` with ``A`` and ``B``
polynomials of degree two in ``z``. Energies integrate over ``z = ±ik`` or
``z = ±u``, so the polynomial form (:class:`KernelPolynomial`) is what the
integrand builders contract.
"""
from typing import NamedTuple, Tuple

import numpy as np
from einops import einsum, rearrange

from .scene import CasimirError

__all__ = ['ScalarKernel', 'KernelTensor', 'KernelPolynomial',
           'exp_complex', 'sin_over_r', 'cos_over_r', 'static',
           'f_apply', 'f_apply_polynomial',
           'triple_contract', 'pair_contract',
           'triple_contract_coefficients', 'pair_contract_coefficients',
           'collapse_powers']

IDENTITY = np.eye(3)


class SingularKernelError(CasimirError):
    """A kernel was evaluated at zero separation."""


# Scalar kernels
# ==============

class ScalarKernel(NamedTuple):
    """A weighted sum of ``e^{z r}/r`` terms.

    Exemples:
        >>> bool(abs(sin_over_r(2.)(np.pi / 4) - 4 / np.pi) < 1e-12)
        True
    """

    kind: str
    """str: ``exp_complex``, ``sin_over_r``, ``cos_over_r``, ``static``
    or ``sum`` for linear combinations."""

    terms: Tuple[Tuple[complex, complex], ...]
    """Tuple[Tuple[complex, complex]]: ``(weight, z)`` pairs."""

    def __add__(self, other):
        return ScalarKernel('sum', self.terms + other.terms)

    def __mul__(self, factor):
        return ScalarKernel(self.kind, tuple((factor * weight, z)
                                             for weight, z in self.terms))

    __rmul__ = __mul__

    def __call__(self, r):
        return sum(weight * np.exp(z * r) / r for weight, z in self.terms)

    def radial(self, r):
        """Return ``f, f', f''`` at radius ``r``."""
        f = d_f = d2_f = 0j
        for weight, z in self.terms:
            exponential = weight * np.exp(z * r)
            f = f + exponential / r
            d_f = d_f + exponential * (z / r - 1 / r**2)
            d2_f = d2_f + exponential * (z**2 / r - 2 * z / r**2 + 2 / r**3)
        return f, d_f, d2_f


def exp_complex(z):
    """``e^{z r}/r``; ``z`` may have a positive real part (growing kernel)."""
    return ScalarKernel('exp_complex', ((1. + 0j, complex(z)),))


def sin_over_r(k):
    """``sin(k r)/r``."""
    return ScalarKernel('sin_over_r', ((-.5j, 1j * k), (.5j, -1j * k)))


def cos_over_r(k):
    """``cos(k r)/r``."""
    return ScalarKernel('cos_over_r', ((.5 + 0j, 1j * k), (.5 + 0j, -1j * k)))


def static():
    """``1/r``."""
    return ScalarKernel('static', ((1. + 0j, 0j),))


# Tensors
# =======

class KernelTensor(NamedTuple):
    """A 3×3 tensor obtained by applying ``F`` at a separation."""

    components: np.ndarray
    distance: float
    direction: Tuple[float, float, float]

    @property
    def projector(self):
        direction = np.asarray(self.direction)
        return np.outer(direction, direction)

    def projections(self):
        """Split the tensor as ``a δ + b r̂r̂``, return ``(a, b)``."""
        longitudinal = np.einsum('ln,ln->', self.projector, self.components)
        transverse = (np.trace(self.components) - longitudinal) / 2
        return transverse, longitudinal - transverse

    def residual(self):
        """float: Norm of what ``a δ + b r̂r̂`` fails to explain."""
        a, b = self.projections()
        return float(np.linalg.norm(
            self.components - a * IDENTITY - b * self.projector))


def _split(r_vec):
    r_vec = np.asarray(r_vec, dtype=float)
    distance = float(np.linalg.norm(r_vec))
    if distance == 0.:
        raise SingularKernelError('F operator applied at zero separation')
    return distance, tuple(r_vec / distance)


def f_apply(kernel, r_vec):
    """Apply ``-∇²δ + ∇∇`` to ``kernel`` at the separation ``r_vec``.

    Exemples:
        >>> f_apply(static(), (0, 0, 1)).components.real.diagonal()
        array([-1., -1.,  2.])
    """
    distance, direction = _split(r_vec)
    projector = np.outer(direction, direction)
    _, d_f, d2_f = kernel.radial(distance)
    components = (IDENTITY * (-d2_f - 2 * d_f / distance)
                  + (IDENTITY - projector) * d_f / distance
                  + projector * d2_f)
    return KernelTensor(components, distance, direction)


class KernelPolynomial(NamedTuple):
    """``F[e^{z r}/r] e^{-z r}`` as a polynomial in ``z``.

    ``coefficients[j]`` is the 3×3 tensor multiplying ``z**j``.
    """

    coefficients: np.ndarray
    distance: float
    direction: Tuple[float, float, float]

    def at(self, z):
        """KernelTensor: ``F[e^{z r}/r]`` including the exponential."""
        powers = np.asarray([1., z, z**2])
        components = einsum(powers, self.coefficients, 'j, j l n -> l n')
        return KernelTensor(components * np.exp(z * self.distance),
                            self.distance, self.direction)

    def substituted(self, offset, rate):
        """Re-expand in ``x`` for ``z = offset + rate * x``.

        The exponential ``e^{z r}`` is left out, as in the ``z`` form.
        """
        c_0, c_1, c_2 = self.coefficients
        coefficients = np.stack([c_0 + c_1 * offset + c_2 * offset**2,
                                 c_1 * rate + 2 * c_2 * offset * rate,
                                 c_2 * rate**2])
        return self._replace(coefficients=coefficients)


def f_apply_polynomial(r_vec):
    """Return the :class:`KernelPolynomial` of ``F`` at ``r_vec``."""
    distance, direction = _split(r_vec)
    projector = np.outer(direction, direction)
    r = distance
    transverse = np.array([-1 / r**3, 1 / r**2, -1 / r])
    longitudinal = np.array([3 / r**3, -3 / r**2, 1 / r])
    coefficients = (einsum(transverse, IDENTITY, 'j, l n -> j l n')
                    + einsum(longitudinal, projector, 'j, l n -> j l n'))
    return KernelPolynomial(coefficients, distance, direction)


# Contractions
# ============

def _components(tensor):
    if isinstance(tensor, (KernelTensor, KernelPolynomial)):
        return tensor[0]
    return np.asarray(tensor)


def triple_contract(tensor_g, tensor_b, tensor_a):
    """Return ``Σ Tg_lm Tb_ln Ta_mn``.

    The isotropic dipole factor ``|μ|²/3`` is left to the caller.
    """
    return complex(np.einsum('lm,ln,mn->', _components(tensor_g),
                             _components(tensor_b), _components(tensor_a)))


def pair_contract(tensor_b, tensor_a, mu2):
    """Return the free-index tensor ``(|μ|²/3) Σ_n Tb_ln Ta_mn``."""
    return mu2 / 3 * einsum(_components(tensor_b), _components(tensor_a),
                            'l n, m n -> l m')


def triple_contract_coefficients(poly_g, poly_b, poly_a):
    """Contract three kernel polynomials power by power.

    Returns ``K[i, j, k] = Σ Cg_i Cb_j Ca_k`` so that the contraction of the
    three tensors at ``z_g, z_b, z_a`` is ``Σ K[i,j,k] z_g^i z_b^j z_a^k``
    (exponentials excluded).
    """
    return einsum(_components(poly_g), _components(poly_b),
                  _components(poly_a), 'i l m, j l n, k m n -> i j k')


def pair_contract_coefficients(poly_b, poly_a):
    """Return ``K[j, k, l, m] = Σ_n Cb_j,ln Ca_k,mn`` (no |μ|²/3 factor)."""
    return einsum(_components(poly_b), _components(poly_a),
                  'j l n, k m n -> j k l m')


def collapse_powers(coefficients, scales):
    """Turn per-variable power coefficients into one polynomial.

    ``coefficients`` has one leading axis per variable (each of length 3,
    powers 0..2); variable ``v`` is ``scales[v] * x``. The result is the
    ascending coefficient array in ``x`` (trailing axes kept).
    """
    n_variables = len(scales)
    flat = rearrange(np.asarray(coefficients, dtype=complex),
                     ' '.join(f'v{v}' for v in range(n_variables))
                     + ' ... -> (' + ' '.join(f'v{v}'
                                              for v in range(n_variables))
                     + ') ...')
    degree = 2 * n_variables
    result = np.zeros((degree + 1,) + flat.shape[1:], dtype=complex)
    for index, powers in enumerate(np.ndindex(*(3,) * n_variables)):
        weight = np.prod([scale**power
                          for scale, power in zip(scales, powers)])
        result[sum(powers)] += weight * flat[index]
    return result
