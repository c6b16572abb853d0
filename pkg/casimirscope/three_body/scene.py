# -*- coding: utf-8 -*-
"""Atoms, triangle geometry and light-cone bookkeeping.

Everything is expressed in natural units: ħ = c = 1, and the transition
wavenumber k0 of the excited atom sets the scale. Lengths are in units of
1/k0, times are given as ``ct`` in the same units and energies are in units
of ħ·c·k0. The functions of this module never convert units.

The three atoms are labelled as in the dynamical three-body problem:
``A`` and ``B`` start in their ground state, ``C`` starts excited.
The triangle sides are

- ``alpha = |r_B - r_C|``
- ``beta = |r_A - r_C|``
- ``gamma = |r_A - r_B|``
"""
from typing import NamedTuple, Tuple

import numpy as np
from loguru import logger as log

__all__ = ['Atom', 'Scene', 'SceneGeometry', 'CausalityRegion',
           'build_scene', 'scene_from_distances', 'classify_region',
           'theta', 'sign']

log.disable('casimirscope')

EPS_CONE = 1e-9
"""float: Width of the band around a light cone where results are flagged."""

EXCITED = 'excited'
GROUND = 'ground'

Vector = Tuple[float, float, float]


class CasimirError(Exception):
    """Base class for every error raised by casimirscope."""


class GeometryError(CasimirError):
    """Error related to atom positions or triangle distances."""


class RoleError(CasimirError):
    """Error related to the excitation roles of the atoms."""


# Atoms
# =====

class Atom(NamedTuple):
    """An isotropic two-level atom.

    Exemples:
        >>> Atom((0., 0., 1.), k_trans=2., mu2=1.)
        Atom(position=(0.0, 0.0, 1.0), k_trans=2.0, mu2=1.0, role='ground')
    """

    position: Vector
    """Vector: Position, in units of 1/k0."""

    k_trans: float = 1.
    """float: Transition wavenumber (> 0)."""

    mu2: float = 1.
    """float: Squared dipole matrix element |μ|² (> 0)."""

    role: str = GROUND
    """str: ``'excited'`` or ``'ground'``."""

    @property
    def is_excited(self):
        return self.role == EXCITED

    def validate(self):
        if self.k_trans <= 0:
            raise GeometryError(f'k_trans must be > 0, got {self.k_trans}')
        if self.mu2 <= 0:
            raise GeometryError(f'mu2 must be > 0, got {self.mu2}')
        if self.role not in (EXCITED, GROUND):
            raise RoleError(f'unknown role {self.role!r}')
        return self

    def moved(self, position):
        return self._replace(position=tuple(float(x) for x in position))


# Geometry
# ========

def _separation(head, tail):
    vector = np.asarray(head, dtype=float) - np.asarray(tail, dtype=float)
    distance = float(np.linalg.norm(vector))
    if distance == 0.:
        raise GeometryError(f'coincident atoms at {tuple(head)}')
    return distance, tuple(vector / distance)


class SceneGeometry(NamedTuple):
    """Triangle distances and unit separation vectors of a scene."""

    alpha: float
    """float: ``|r_B - r_C|``."""

    beta: float
    """float: ``|r_A - r_C|``."""

    gamma: float
    """float: ``|r_A - r_B|``."""

    alpha_hat: Vector
    """Vector: Unit vector along ``r_B - r_C``."""

    beta_hat: Vector
    """Vector: Unit vector along ``r_A - r_C``."""

    gamma_hat: Vector
    """Vector: Unit vector along ``r_A - r_B``."""

    @classmethod
    def from_positions(cls, r_a, r_b, r_c):
        alpha, alpha_hat = _separation(r_b, r_c)
        beta, beta_hat = _separation(r_a, r_c)
        gamma, gamma_hat = _separation(r_a, r_b)
        return cls(alpha, beta, gamma, alpha_hat, beta_hat, gamma_hat)

    @classmethod
    def from_distances(cls, alpha, beta, gamma):
        """Build a geometry from raw distances.

        The triangle is laid in the xy plane with C at the origin and B on
        the x axis. The triangle inequality is checked explicitly.
        """
        return cls.from_positions(*triangle_positions(alpha, beta, gamma))

    @property
    def distances(self):
        return self.alpha, self.beta, self.gamma

    @property
    def vectors(self):
        """Tuple[np.ndarray]: Separations ``r_B-r_C``, ``r_A-r_C``, ``r_A-r_B``."""
        return tuple(distance * np.asarray(hat) for distance, hat
                     in zip(self.distances,
                            (self.alpha_hat, self.beta_hat, self.gamma_hat)))

    @property
    def max_distance(self):
        return max(self.distances)


def triangle_positions(alpha, beta, gamma):
    """Return positions ``(r_A, r_B, r_C)`` realising the three distances."""
    if min(alpha, beta, gamma) <= 0:
        raise GeometryError(
            f'distances must be > 0, got {(alpha, beta, gamma)}')
    for side, other_1, other_2 in ((alpha, beta, gamma),
                                   (beta, gamma, alpha),
                                   (gamma, alpha, beta)):
        if side > other_1 + other_2:
            raise GeometryError(
                f'triangle inequality violated by {(alpha, beta, gamma)}')

    x_a = (beta**2 + alpha**2 - gamma**2) / (2 * alpha)
    # clip rounding noise of flat triangles
    y_a = np.sqrt(max(beta**2 - x_a**2, 0.))
    return (x_a, y_a, 0.), (alpha, 0., 0.), (0., 0., 0.)


class Scene(NamedTuple):
    """Three atoms and the geometry they span."""

    atom_a: Atom
    atom_b: Atom
    atom_c: Atom
    geometry: SceneGeometry

    @property
    def atoms(self):
        return self.atom_a, self.atom_b, self.atom_c

    @property
    def k0(self):
        """float: Transition wavenumber of the excited atom C."""
        return self.atom_c.k_trans

    def relabel(self, order):
        """Return the scene with atoms re-labelled, without role checks.

        ``order`` names which current atom becomes the new A, B and C,
        *e.g.* ``'BAC'`` swaps A and B (and therefore α and β).
        """
        lookup = dict(zip('ABC', self.atoms))
        atom_a, atom_b, atom_c = (lookup[label] for label in order)
        geometry = SceneGeometry.from_positions(
            atom_a.position, atom_b.position, atom_c.position)
        return Scene(atom_a, atom_b, atom_c, geometry)

    def scaled_mu2(self, factor_a=1., factor_b=1., factor_c=1.):
        return self._replace(
            atom_a=self.atom_a._replace(mu2=self.atom_a.mu2 * factor_a),
            atom_b=self.atom_b._replace(mu2=self.atom_b.mu2 * factor_b),
            atom_c=self.atom_c._replace(mu2=self.atom_c.mu2 * factor_c))


def build_scene(atom_a, atom_b, atom_c):
    """Validate three atoms and build their scene.

    Exactly one atom must be excited, and it has to be passed as ``atom_c``.

    Exemples:
        >>> build_scene(Atom((3, 0, 0)), Atom((0, 4, 0)),
        ...             Atom((0, 0, 0), role='excited')).geometry.distances
        (4.0, 3.0, 5.0)
    """
    atoms = [atom.validate() for atom in (atom_a, atom_b, atom_c)]
    excited = [atom.is_excited for atom in atoms]
    if sum(excited) != 1:
        raise RoleError(f'exactly one excited atom expected, '
                        f'got {sum(excited)}')
    if not atom_c.is_excited:
        raise RoleError('the excited atom has to be atom C')

    geometry = SceneGeometry.from_positions(
        atom_a.position, atom_b.position, atom_c.position)
    log.debug(f'built scene with distances {geometry.distances}')
    return Scene(atom_a, atom_b, atom_c, geometry)


def scene_from_distances(alpha, beta, gamma, *,
                         k_a=1., k_b=1., k0=1.,
                         mu2_a=1., mu2_b=1., mu2_c=1.):
    """Build a scene from raw triangle distances and atomic constants."""
    r_a, r_b, r_c = triangle_positions(alpha, beta, gamma)
    return build_scene(Atom(r_a, k_a, mu2_a),
                       Atom(r_b, k_b, mu2_b),
                       Atom(r_c, k0, mu2_c, role=EXCITED))


# Light cones
# ===========

def theta(x):
    """Heaviside step with the closed light-cone convention θ(0) = 1."""
    return 1. if x >= 0 else 0.


def sign(x):
    """Sign function with the convention sgn(0) = +1."""
    return 1. if x >= 0 else -1.


ALL_SPACELIKE = 'all-spacelike'
C_SEES_BOTH = 'C-sees-both'
C_SEES_ONE = 'C-sees-one'
PAIR_ONLY = 'pair-only'
MIXED = 'mixed'


class CausalityRegion(NamedTuple):
    """The step and sign factors of a scene at time ``ct``.

    ``th_x`` is θ(ct - x) and ``sgn_x`` is sgn(x - ct); ``sgn_x_minus_y``
    without ``t`` is the time independent sgn(x - y).
    """

    ct: float
    th_alpha: bool
    th_beta: bool
    th_gamma: bool
    th_alpha_plus_beta: bool
    th_alpha_plus_gamma: bool
    th_abs_alpha_minus_gamma: bool
    th_beta_plus_gamma: bool
    th_abs_beta_minus_gamma: bool
    sgn_alpha: float
    sgn_beta: float
    sgn_gamma: float
    sgn_alpha_plus_beta: float
    sgn_alpha_plus_gamma: float
    sgn_beta_plus_gamma: float
    sgn_alpha_minus_gamma: float
    sgn_beta_minus_gamma: float
    sgn_beta_minus_gamma_minus_t: float
    sgn_beta_minus_gamma_plus_t: float
    label: str
    on_light_cone: bool

    @property
    def flags(self):
        """Dict[str, bool]: Every θ flag by name."""
        return {name: value for name, value in self._asdict().items()
                if name.startswith('th_')}


def _label(geometry, ct):
    inside_alpha = geometry.alpha <= ct
    inside_beta = geometry.beta <= ct
    inside_gamma = geometry.gamma <= ct
    if inside_alpha and inside_beta:
        return C_SEES_BOTH
    if inside_alpha or inside_beta:
        return MIXED if inside_gamma else C_SEES_ONE
    return PAIR_ONLY if inside_gamma else ALL_SPACELIKE


def light_cone_arguments(geometry, ct):
    """List[float]: Every argument whose zero is a light-cone crossing."""
    alpha, beta, gamma = geometry.distances
    return [alpha - ct, beta - ct, gamma - ct,
            alpha + beta - ct, alpha + gamma - ct, beta + gamma - ct,
            abs(alpha - gamma) - ct, abs(beta - gamma) - ct,
            abs(alpha - beta) - ct]


def classify_region(geometry, ct):
    """Evaluate the θ and sgn factors of ``geometry`` at time ``ct``.

    Exemples:
        >>> classify_region(SceneGeometry.from_distances(1, 1, 1), .5).label
        'all-spacelike'
    """
    if ct < 0:
        raise ValueError(f'ct must be >= 0, got {ct}')
    alpha, beta, gamma = geometry.distances
    on_light_cone = any(abs(argument) < EPS_CONE
                        for argument in light_cone_arguments(geometry, ct))
    if on_light_cone:
        log.warning(f'ct={ct} lies on a light cone of {geometry.distances}')

    return CausalityRegion(
        ct=ct,
        th_alpha=bool(theta(ct - alpha)),
        th_beta=bool(theta(ct - beta)),
        th_gamma=bool(theta(ct - gamma)),
        th_alpha_plus_beta=bool(theta(ct - alpha - beta)),
        th_alpha_plus_gamma=bool(theta(ct - alpha - gamma)),
        th_abs_alpha_minus_gamma=bool(theta(ct - abs(alpha - gamma))),
        th_beta_plus_gamma=bool(theta(ct - beta - gamma)),
        th_abs_beta_minus_gamma=bool(theta(ct - abs(beta - gamma))),
        sgn_alpha=sign(alpha - ct),
        sgn_beta=sign(beta - ct),
        sgn_gamma=sign(gamma - ct),
        sgn_alpha_plus_beta=sign(alpha + beta - ct),
        sgn_alpha_plus_gamma=sign(alpha + gamma - ct),
        sgn_beta_plus_gamma=sign(beta + gamma - ct),
        sgn_alpha_minus_gamma=sign(alpha - gamma),
        sgn_beta_minus_gamma=sign(beta - gamma),
        sgn_beta_minus_gamma_minus_t=sign(beta - gamma - ct),
        sgn_beta_minus_gamma_plus_t=sign(beta - gamma + ct),
        label=_label(geometry, ct),
        on_light_cone=on_light_cone)


def all_open_time(geometry):
    """float: Time after which every θ flag of ``geometry`` is set."""
    return sum(sorted(geometry.distances)[1:])
