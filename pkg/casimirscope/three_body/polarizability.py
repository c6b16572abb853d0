# -*- coding: utf-8 -*-
"""Dynamic polarizabilities of the atoms.

Every energy formula only needs a polarizability on the real frequency axis
(where it has poles) and on the imaginary axis (where it is smooth and
positive). :class:`Polarizability` is the interface, the isotropic two-level
model is the only implementation shipped.
"""
from typing import NamedTuple, Protocol, Sequence, Tuple

import numpy as np
from loguru import logger as log

from .scene import CasimirError

__all__ = ['Polarizability', 'TwoLevelPolarizability', 'DetuningError',
           'RealAxisWeight', 'ImaginaryAxisWeight', 'polarizability_of',
           'check_detuning', 'DETUNING_MIN_FACTOR']

log.disable('casimirscope')

DETUNING_MIN_FACTOR = 1e-3
"""float: Minimal ``|k_x - k0|`` allowed, as a fraction of ``k0``."""


class DetuningError(CasimirError):
    """A ground-state transition is too close to the excited one."""


class Polarizability(Protocol):
    """What the energy formulas need from an atom's polarizability."""

    k_trans: float
    mu2: float

    def real_axis(self, k: float) -> complex:
        ...

    def imag_axis(self, u: float) -> complex:
        ...

    def real_axis_factors(self) -> Tuple[complex, Tuple[complex, ...]]:
        """Return ``(c, roots)`` with ``α(k) = c / Π (k - root)``."""
        ...


class TwoLevelPolarizability(NamedTuple):
    """``α(k) = (2/3) |μ|² k_x / (k_x² - k²)``, isotropic.

    With a finite ``linewidth`` Γ the transition wavenumber becomes
    ``k_x - iΓ/2`` on the real axis. The imaginary axis is never damped.

    Exemples:
        >>> TwoLevelPolarizability(2., 3.).imag_axis(0.)
        1.0
    """

    k_trans: float
    mu2: float
    linewidth: float = 0.

    @property
    def pole(self):
        """complex: Transition wavenumber as seen on the real axis."""
        return self.k_trans - .5j * self.linewidth

    def real_axis(self, k):
        """Polarizability at real wavenumber ``k``.

        Exactly on resonance without linewidth only the counter-rotating
        half survives the principal value, ``|μ|²/(6 k_x)``.
        """
        if self.linewidth == 0. and abs(k - self.k_trans) <= 1e-12 * self.k_trans:
            return complex(self.mu2 / (6 * self.k_trans))
        pole = self.pole
        return complex(2 / 3 * self.mu2 * pole / (pole**2 - k**2))

    def imag_axis(self, u):
        return 2 / 3 * self.mu2 * self.k_trans / (self.k_trans**2 + u**2)

    def real_axis_factors(self):
        pole = self.pole
        return -2 / 3 * self.mu2 * pole, (pole, -pole)

    def scaled(self, factor):
        return self._replace(mu2=self.mu2 * factor)


def polarizability_of(atom, linewidth=0.):
    """Two-level polarizability of a :class:`~.scene.Atom`."""
    return TwoLevelPolarizability(atom.k_trans, atom.mu2, linewidth)


def check_detuning(polarizability, k0, factor=DETUNING_MIN_FACTOR, name='?'):
    """Raise :class:`DetuningError` if ``k_x`` sits too close to ``k0``."""
    detuning = abs(polarizability.k_trans - k0)
    if detuning < factor * k0:
        log.error(f'atom {name} detuned by {detuning:.3g} only')
        raise DetuningError(
            f'atom {name}: |k_trans - k0| = {detuning:.3g} is below '
            f'{factor:g}·k0; α({k0:g}) diverges')
    return polarizability


# Integration weights
# ===================

class RealAxisWeight(NamedTuple):
    """``constant / Π (k - root)``: polarizabilities times ``1/(k0 + k)``."""

    constant: complex
    roots: Tuple[complex, ...]

    @classmethod
    def product(cls, polarizabilities: Sequence, k0=None):
        constant = 1. + 0j
        roots = ()
        for polarizability in polarizabilities:
            factor, poles = polarizability.real_axis_factors()
            constant *= factor
            roots += tuple(poles)
        if k0 is not None:
            roots += (-k0 + 0j,)
        return cls(constant, roots)

    def __call__(self, k):
        return self.constant / np.prod([k - root for root in self.roots])


class ImaginaryAxisWeight(NamedTuple):
    """Product of polarizabilities at imaginary frequency ``iu``."""

    polarizabilities: Tuple

    def __call__(self, u):
        return np.prod([polarizability.imag_axis(u)
                        for polarizability in self.polarizabilities])
