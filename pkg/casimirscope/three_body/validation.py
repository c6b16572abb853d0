# -*- coding: utf-8 -*-
"""Cross-checks between independent evaluation paths.

Each check returns :class:`Finding` objects. ``strict`` findings are
identities or oracle comparisons and fail the validation when they do not
hold; the others document how two displayed forms of the same quantity
compare and are only reported.
"""
from typing import List, NamedTuple, Sequence

import numpy as np
import pandas as pd
from loguru import logger as log
from rich.table import Table

from . import correlations, oracle, potentials
from .kernels import exp_complex, f_apply
from .quadrature import DEFAULT_SPEC
from .scene import CasimirError, all_open_time, build_scene

__all__ = ['Finding', 'validate', 'findings_frame', 'findings_table',
           'check_box_sequence', 'check_fd_kernels', 'check_resonant_identity',
           'check_pair_spacelike', 'check_pair_stationary',
           'check_sym_stationary', 'check_sym_spacelike_A']

log.disable('casimirscope')

STATIONARY_LINEWIDTH = .5
"""Linewidth of the ground atoms for the strict late-time pair check."""


class Finding(NamedTuple):
    name: str
    discrepancy: float
    tolerance: float
    passed: bool
    strict: bool = True
    note: str = ''


def _relative(value, reference):
    scale = max(np.linalg.norm(reference), 1e-300)
    return float(np.linalg.norm(np.asarray(value) - np.asarray(reference))
                 / scale)


def _finding(name, discrepancy, tolerance, strict=True, note=''):
    passed = bool(discrepancy <= tolerance)
    if strict and not passed:
        log.error(f'{name}: discrepancy {discrepancy:.3g} above {tolerance:g}')
    return Finding(name, discrepancy, tolerance, passed, strict, note)


# Checks
# ======

def check_box_sequence(scene, ct, boxes: Sequence[oracle.BoxSpec],
                       tolerance=2e-2, spec=DEFAULT_SPEC):
    """Box mode sums against the continuum, for growing boxes.

    Passes when the last box is within ``tolerance`` and the discrepancies
    shrink monotonically.
    """
    findings = []
    discrepancies = []
    for box in boxes:
        name = f'box L={box.side:g} vs continuum correlation'
        try:
            summed = oracle.box_corr(scene, ct, box)
        except oracle.BudgetError as err:
            findings.append(Finding(name, np.inf, tolerance, False, True,
                                    f'partial: {err}'))
            return findings
        continuum = correlations.correlation(scene, ct, spec=spec,
                                             regulator=box.regulator)
        discrepancy = _relative(summed.components.real, continuum.components)
        discrepancies.append(discrepancy)
        findings.append(_finding(name, discrepancy, tolerance, strict=False,
                                 note=f'{summed.modes} modes'))
    monotone = all(later < earlier for earlier, later
                   in zip(discrepancies, discrepancies[1:]))
    findings.append(Finding('box sequence converges', discrepancies[-1],
                            tolerance,
                            monotone and discrepancies[-1] <= tolerance,
                            True, 'monotone' if monotone else 'not monotone'))
    return findings


def check_fd_kernels(scene, tolerance=1e-6):
    findings = []
    for name, vector in zip(('alpha', 'beta', 'gamma'),
                            scene.geometry.vectors):
        kernel = exp_complex(1j * scene.k0)
        step = 1e-3 * min(np.linalg.norm(vector), 1 / scene.k0)
        discrepancy = _relative(oracle.fd_f_apply(kernel, vector, step),
                                f_apply(kernel, vector).components)
        findings.append(_finding(f'finite differences vs F on {name}',
                                 discrepancy, tolerance))
    return findings


def check_resonant_identity(scene, ct, tolerance=1e-12):
    pair = potentials.delta_e_pair_r(scene, ct)
    sym = potentials.delta_e_sym_r(scene, ct)
    discrepancy = abs(sym - pair) / max(abs(pair), 1e-300) if pair else abs(
        sym)
    return [_finding('resonant three-body term vs resonant pair term',
                     discrepancy, tolerance)]


def check_pair_spacelike(scene, ct, spec=DEFAULT_SPEC, tolerance=1e-6):
    """Dedicated space-like pair formula against the general one.

    The static terms must agree; the transient terms of the two forms
    differ and the full comparison is only reported.
    """
    static_limit = potentials.delta_e_pair_spacelike(
        scene, ct, spec, include_transient=False)
    static_general = potentials.delta_e_pair_nr(scene, ct, spec,
                                                include_transient=False)
    limit = potentials.delta_e_pair_spacelike(scene, ct, spec)
    general = potentials.delta_e_pair(scene, ct, spec).total
    return [
        _finding('space-like pair static terms vs general ones',
                 abs(static_limit - static_general)
                 / max(abs(static_general), spec.abs_tol), tolerance,
                 note=f'{static_limit:.6g} vs {static_general:.6g}'),
        _finding('space-like pair form vs general pair energy',
                 abs(limit - general) / max(abs(general), spec.abs_tol),
                 tolerance, strict=False,
                 note=f'{limit:.6g} vs {general:.6g}')]


def check_pair_stationary(scene, spec=DEFAULT_SPEC,
                          linewidth=STATIONARY_LINEWIDTH, tolerance=1e-2,
                          factors=(50, 100), strict=True):
    """Pair energy at late times against the stationary pair energy.

    Envelopes over one period ``2π/k0`` are compared. Under the principal
    value (``linewidth=0``) the ground-atom pole of the transient terms
    leaves an undamped oscillation, so that run is only reported; a finite
    linewidth damps it as ``e^{-Γ ct/2}``.
    """
    stationary = potentials.delta_e_stationary(scene, spec, linewidth)
    period = 2 * np.pi / scene.k0
    envelopes = []
    for factor in factors:
        start = factor * scene.geometry.max_distance
        samples = [potentials.delta_e_pair(scene, ct, spec, linewidth).total
                   for ct in np.linspace(start, start + period, 5)]
        envelopes.append(max(abs(sample - stationary) for sample in samples)
                         / abs(stationary))
    decreasing = all(later < earlier for earlier, later
                     in zip(envelopes, envelopes[1:]))
    passed = envelopes[0] <= tolerance and decreasing
    if strict and not passed:
        log.error(f'pair energy does not settle with linewidth {linewidth}')
    return [Finding(f'pair energy settles to the stationary value '
                    f'(linewidth {linewidth:g})', envelopes[0], tolerance,
                    passed, strict,
                    ', '.join(f'{envelope:.3g}' for envelope in envelopes))]


def check_sym_stationary(scene, spec=DEFAULT_SPEC, tolerance=1e-8,
                         late_tolerance=1e-3, late_factor=50):
    """Three-body energy past every opening against its stationary form.

    Without the mixed terms the identity is exact once every light cone is
    open. The full energy only approaches it as the mixed terms decay, which
    is reported at ``ct = late_factor * max_distance``.
    """
    stationary = potentials.delta_e_sym_stationary(scene, spec)
    scale = max(abs(stationary), spec.abs_tol)
    ct = 2 * all_open_time(scene.geometry)
    total = potentials.delta_e_sym_total(scene, ct, spec)
    late_ct = late_factor * scene.geometry.max_distance
    late = potentials.delta_e_sym_total(scene, late_ct, spec)
    return [
        _finding('three-body energy reaches its stationary form',
                 abs(total.de_I + total.de_r_sym - stationary) / scale,
                 tolerance,
                 note=f'mixed terms {total.de_II:.3g} at ct={ct:g}'),
        _finding('full three-body energy at late times',
                 abs(late.total - stationary) / scale, late_tolerance,
                 strict=False,
                 note=f'mixed terms {late.de_II:.3g} at ct={late_ct:g}')]


def check_sym_spacelike_A(scene, ct, spec=DEFAULT_SPEC, tolerance=1e-6):
    """A outside both light cones: limiting form against the general sum."""
    imaginary_only = potentials.delta_e_sym_spacelike_A(
        scene, ct, spec, include_k_terms=False)
    limit = potentials.delta_e_sym_spacelike_A(scene, ct, spec)
    total = potentials.delta_e_sym_total(scene, ct, spec)
    return [
        _finding('space-like A imaginary term vs de_I',
                 abs(imaginary_only - total.de_I)
                 / max(abs(total.de_I), spec.abs_tol), tolerance),
        _finding('space-like A form vs general three-body energy',
                 abs(limit - total.total) / max(abs(total.total),
                                                spec.abs_tol),
                 tolerance, strict=False,
                 note=f'{limit:.6g} vs {total.total:.6g}')]


# Report
# ======

def validate(config, boxes: Sequence[oracle.BoxSpec] = (),
             spec=None) -> List[Finding]:
    """Run every check that applies to the scene of ``config``."""
    spec = config.spec if spec is None else spec
    scene = build_scene(*config.atoms)
    alpha, beta, gamma = scene.geometry.distances
    findings = check_fd_kernels(scene)

    checks = [
        ('resonant identity',
         lambda: check_resonant_identity(scene, 1.5 * max(alpha, beta))),
        ('three-body stationary limit',
         lambda: check_sym_stationary(scene, spec)),
        ('pair stationary limit (principal value)',
         lambda: check_pair_stationary(scene, spec, linewidth=0.,
                                       strict=False)),
        ('pair stationary limit (linewidth)',
         lambda: check_pair_stationary(scene, spec)),
    ]
    if gamma < min(alpha, beta):
        checks.append(('space-like pair', lambda: check_pair_spacelike(
            scene, (gamma + min(alpha, beta)) / 2, spec)))
    if alpha < min(beta, gamma):
        checks.append(('space-like A', lambda: check_sym_spacelike_A(
            scene, (alpha + min(beta, gamma)) / 2, spec)))
    if boxes:
        checks.append(('box oracle', lambda: check_box_sequence(
            scene, config.t_max, boxes, spec=spec)))

    for name, check in checks:
        try:
            findings += check()
        except CasimirError as err:
            log.error(f'{name}: check failed to run: {err}')
            findings.append(Finding(name, np.inf, 0., False, True, str(err)))
    return findings


def findings_frame(findings):
    return pd.DataFrame(findings, columns=Finding._fields)


def findings_table(findings):
    table = Table(title='validation')
    for column in ('check', 'discrepancy', 'tolerance', 'status', 'note'):
        table.add_column(column)
    for finding in findings:
        if finding.passed:
            status = '[green]pass[/green]'
        elif finding.strict:
            status = '[red]FAIL[/red]'
        else:
            status = '[yellow]finding[/yellow]'
        table.add_row(finding.name, f'{finding.discrepancy:.3g}',
                      f'{finding.tolerance:g}', status, finding.note)
    return table
