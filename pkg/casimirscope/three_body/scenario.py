# -*- coding: utf-8 -*-
"""Scenario files, sweeps and CSV output.

A scenario is a small INI file, every value in natural units::

    [atom.A]
    position = 1.0, 0.0, 0.0
    k_trans = 2.0
    mu2 = 1.0

    [atom.B]
    ...

    [atom.C]
    position = 0.0, 0.0, 0.0
    role = excited

    [sweep]
    t_min = 0.0
    t_max = 4.0
    steps = 41
    # optional geometry / atom parameter sweep
    parameter = A.x
    values = 1.0, 1.5, 2.0

    [output]
    quantities = pair_parts, sym
    path = sweep.csv

    [quadrature]
    rel_tol = 1e-8
    linewidth = 0.0
"""
import configparser
import io
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import NamedTuple, Optional, Tuple

import numpy as np
import pandas as pd
from loguru import logger as log
from rich.table import Table

from . import correlations, potentials
from .quadrature import DEFAULT_SPEC, QuadratureSpec
from .scene import Atom, CasimirError, build_scene, classify_region

__all__ = ['ScenarioConfig', 'ConfigError', 'run', 'write_csv', 'read_csv',
           'summary_table', 'QUANTITIES', 'CSV_SCHEMA']

log.disable('casimirscope')

CSV_SCHEMA = '# casimirscope-csv v1'

QUANTITIES = ('corr', 'pair', 'pair_parts', 'sym', 'sym_parts', 'regions')

ATOM_FIELDS = ('k_trans', 'mu2')
COORDINATES = ('x', 'y', 'z')


class ConfigError(CasimirError):
    """Invalid scenario file, with the line or field at fault."""


class ScenarioConfig(NamedTuple):
    """Everything a sweep needs."""

    atoms: Tuple[Atom, Atom, Atom]
    t_min: float = 0.
    t_max: float = 1.
    steps: int = 11
    parameter: Optional[str] = None
    """Optional[str]: ``<atom>.<x|y|z|k_trans|mu2>`` swept over ``values``."""

    values: Tuple[float, ...] = ()
    quantities: Tuple[str, ...] = ('pair',)
    spec: QuadratureSpec = DEFAULT_SPEC
    linewidth: float = 0.
    path: Optional[str] = None

    @property
    def times(self):
        return np.linspace(self.t_min, self.t_max, self.steps)

    def points(self):
        """List[Tuple]: ``(parameter value, ct)`` in sweep order."""
        values = self.values if self.parameter else (None,)
        return [(value, float(ct)) for value in values for ct in self.times]

    def atoms_at(self, value):
        if self.parameter is None:
            return self.atoms
        label, field = self.parameter.split('.')
        index = 'ABC'.index(label)
        atom = self.atoms[index]
        if field in COORDINATES:
            position = list(atom.position)
            position[COORDINATES.index(field)] = value
            atom = atom.moved(position)
        else:
            atom = atom._replace(**{field: value})
        atoms = list(self.atoms)
        atoms[index] = atom
        return tuple(atoms)

    def validate(self):
        if self.steps < 1:
            raise ConfigError('[sweep] steps: must be >= 1')
        if self.t_min < 0 or self.t_max < self.t_min:
            raise ConfigError('[sweep] t_min/t_max: need 0 <= t_min <= t_max')
        unknown = set(self.quantities) - set(QUANTITIES)
        if unknown or not self.quantities:
            raise ConfigError(f'[output] quantities: unknown or empty '
                              f'{sorted(unknown)}')
        if self.parameter is not None:
            label, _, field = self.parameter.partition('.')
            if label not in 'ABC' or len(label) != 1 or field not in (
                    COORDINATES + ATOM_FIELDS):
                raise ConfigError(f'[sweep] parameter: cannot sweep '
                                  f'{self.parameter!r}')
            if not self.values or list(self.values) != sorted(self.values):
                raise ConfigError('[sweep] values: must be nonempty and '
                                  'increasing')
        try:
            self.spec.validate()
            build_scene(*self.atoms)
        except CasimirError as err:
            raise ConfigError(str(err)) from err
        return self

    # Text form
    # =========

    @classmethod
    def from_text(cls, text):
        parser = configparser.ConfigParser()
        try:
            parser.read_string(text)
        except configparser.Error as err:
            errors = getattr(err, 'errors', None)
            line = getattr(err, 'lineno', None) or (
                errors[0][0] if errors else '?')
            raise ConfigError(f'line {line}: {err.message}') from err

        def field(section, key, convert, default=None):
            if not parser.has_option(section, key):
                if default is None:
                    raise ConfigError(f'[{section}] {key}: missing '
                                      f'({_locate(text, section)})')
                return default
            raw = parser.get(section, key)
            try:
                return convert(raw)
            except ValueError as err:
                raise ConfigError(f'[{section}] {key}: cannot read {raw!r} '
                                  f'({_locate(text, section, key)})') from err

        atoms = []
        for label in 'ABC':
            section = f'atom.{label}'
            if not parser.has_section(section):
                raise ConfigError(f'[{section}]: missing section')
            atoms.append(Atom(
                position=field(section, 'position', _floats),
                k_trans=field(section, 'k_trans', float, 1.),
                mu2=field(section, 'mu2', float, 1.),
                role=field(section, 'role', str.strip,
                           'excited' if label == 'C' else 'ground')))

        overrides = {}
        if parser.has_section('quadrature'):
            for key in parser.options('quadrature'):
                if key == 'linewidth':
                    continue
                if key not in QuadratureSpec._fields:
                    raise ConfigError(f'[quadrature] {key}: unknown field '
                                      f'({_locate(text, "quadrature", key)})')
                kind = type(getattr(DEFAULT_SPEC, key))
                overrides[key] = field('quadrature', key, kind)

        has_sweep = parser.has_section('sweep')
        has_output = parser.has_section('output')
        parameter = (parser.get('sweep', 'parameter', fallback=None)
                     if has_sweep else None)
        config = cls(
            atoms=tuple(atoms),
            t_min=field('sweep', 't_min', float, 0.) if has_sweep else 0.,
            t_max=field('sweep', 't_max', float, 1.) if has_sweep else 1.,
            steps=field('sweep', 'steps', int, 11) if has_sweep else 11,
            parameter=parameter.strip() if parameter else None,
            values=(field('sweep', 'values', _floats, ())
                    if parameter else ()),
            quantities=(field('output', 'quantities', _names, ('pair',))
                        if has_output else ('pair',)),
            spec=DEFAULT_SPEC._replace(**overrides),
            linewidth=(field('quadrature', 'linewidth', float, 0.)
                       if parser.has_section('quadrature') else 0.),
            path=(parser.get('output', 'path', fallback=None)
                  if has_output else None))
        return config.validate()

    @classmethod
    def from_file(cls, path):
        try:
            text = Path(path).expanduser().read_text()
        except OSError as err:
            raise ConfigError(f'cannot read {path}: {err}') from err
        return cls.from_text(text)

    def to_text(self):
        parser = configparser.ConfigParser()
        for label, atom in zip('ABC', self.atoms):
            parser[f'atom.{label}'] = {
                'position': ', '.join(repr(float(x)) for x in atom.position),
                'k_trans': repr(float(atom.k_trans)),
                'mu2': repr(float(atom.mu2)),
                'role': atom.role}
        parser['sweep'] = {'t_min': repr(float(self.t_min)),
                           't_max': repr(float(self.t_max)),
                           'steps': str(self.steps)}
        if self.parameter:
            parser['sweep']['parameter'] = self.parameter
            parser['sweep']['values'] = ', '.join(repr(float(value))
                                                  for value in self.values)
        parser['output'] = {'quantities': ', '.join(self.quantities)}
        if self.path:
            parser['output']['path'] = self.path
        parser['quadrature'] = {name: repr(value) for name, value
                                in self.spec._asdict().items()}
        parser['quadrature']['linewidth'] = repr(float(self.linewidth))
        buffer = io.StringIO()
        parser.write(buffer)
        return buffer.getvalue()


def _floats(raw):
    return tuple(float(item) for item in raw.split(',') if item.strip())


def _names(raw):
    return tuple(item.strip() for item in raw.split(',') if item.strip())


def _locate(text, section, key=None):
    """str: ``line N`` of ``key`` (or of the section header)."""
    current = None
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if stripped.startswith('[') and stripped.endswith(']'):
            current = stripped[1:-1].strip()
            if key is None and current == section:
                return f'line {number}'
        elif (current == section and key is not None
              and stripped.split('=')[0].strip() == key):
            return f'line {number}'
    return 'line ?'


# Sweeps
# ======

def _row(config, value, ct):
    row = {'ct': ct}
    if config.parameter:
        row[config.parameter] = value
    row.update(error='', converged=True, imag_residual=0., is_real=True)
    try:
        scene = build_scene(*config.atoms_at(value))
        region = classify_region(scene.geometry, ct)
        row['region'] = region.label
        row['on_light_cone'] = region.on_light_cone
        quantities = config.quantities
        if 'regions' in quantities:
            row.update(region.flags)
        if 'corr' in quantities:
            tensor = correlations.correlation(scene, ct, spec=config.spec)
            for (l, m), component in np.ndenumerate(tensor.components):
                row[f'corr_{l}{m}'] = component
            row['converged'] &= tensor.converged
        if {'pair', 'pair_parts'} & set(quantities):
            pair = potentials.delta_e_pair(scene, ct, config.spec,
                                           config.linewidth)
            row['pair'] = pair.total
            if 'pair_parts' in quantities:
                row.update(de_nr=pair.de_nr, de_r=pair.de_r)
            row['converged'] &= pair.converged
            row['imag_residual'] = max(row['imag_residual'],
                                       pair.imag_residual)
            row['is_real'] &= pair.is_real
        if {'sym', 'sym_parts'} & set(quantities):
            sym = potentials.delta_e_sym_total(scene, ct, config.spec,
                                               config.linewidth)
            row['sym'] = sym.total
            if 'sym_parts' in quantities:
                row.update(de_I=sym.de_I, de_II=sym.de_II,
                           de_r_sym=sym.de_r_sym)
            row['converged'] &= sym.converged
            row['imag_residual'] = max(row['imag_residual'],
                                       sym.imag_residual)
            row['is_real'] &= sym.is_real
        if not row['is_real']:
            log.warning(f'ct={ct}: dropped an imaginary residual of '
                        f'{row["imag_residual"]:.3g}')
    except CasimirError as err:
        log.warning(f'ct={ct}: {type(err).__name__}: {err}')
        row['error'] = f'{type(err).__name__}: {err}'
    return row


def _row_star(arguments):
    return _row(*arguments)


def run(config, workers=1):
    """Evaluate every sweep point, rows in sweep order.

    Evaluation errors are recorded in the ``error`` column and the sweep
    goes on.
    """
    points = config.points()
    log.info(f'sweeping {len(points)} points with {workers} worker(s)')
    arguments = [(config, value, ct) for value, ct in points]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            rows = list(executor.map(_row_star, arguments))
    else:
        rows = [_row_star(argument) for argument in arguments]
    return pd.DataFrame(rows)


def write_csv(frame, path):
    """Write ``frame`` after the schema line."""
    path = Path(path).expanduser()
    with path.open('w', newline='') as handle:
        handle.write(CSV_SCHEMA + '\n')
        frame.to_csv(handle, index=False)
    log.info(f'wrote {len(frame.index)} rows to {path}')
    return path


def read_csv(path):
    path = Path(path).expanduser()
    with path.open() as handle:
        schema = handle.readline().strip()
        if schema != CSV_SCHEMA:
            raise ConfigError(f'{path}: unknown schema line {schema!r}')
        return pd.read_csv(handle, keep_default_na=False,
                           na_values=['', 'nan'])


def summary_table(frame):
    """rich Table: Regions traversed, flagged and failed points."""
    table = Table(title='sweep summary')
    table.add_column('region')
    table.add_column('points', justify='right')
    table.add_column('not converged', justify='right')
    table.add_column('not real', justify='right')
    table.add_column('errors', justify='right')
    failed = frame['error'].astype(bool)
    labels = frame['region'] if 'region' in frame else pd.Series(
        ['?'] * len(frame.index))
    for label in pd.unique(labels.fillna('?')):
        selected = labels.fillna('?') == label
        table.add_row(str(label), str(int(selected.sum())),
                      str(int((~frame['converged'][selected]).sum())),
                      str(int((~frame['is_real'][selected]).sum())),
                      str(int(failed[selected].sum())))
    return table
