"""Command line entry point: sweep a scenario or validate it."""
import argparse
import sys

from loguru import logger as log
from rich.console import Console
from rich.logging import RichHandler

from casimirscope.three_body import oracle, scenario, validation
from casimirscope.three_body.scene import CasimirError

log.enable('casimirscope')
log.configure(handlers=[{"sink": RichHandler(markup=True),
                         "format": "[red]{function}[/red] {message}"}])

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_EVALUATION = 2
EXIT_VALIDATION = 3

DEFAULT_OUT = 'casimirscope.csv'
BOX_SIDES = (20, 30, 40)
"""Box sides of the validation oracle, in units of ``1/k0``."""


def parser():
    arguments = argparse.ArgumentParser(
        prog='casimirscope',
        description='Dynamical Casimir-Polder correlations and energies '
                    'of one excited and two ground-state atoms.')
    arguments.add_argument('--config', required=True,
                           help='scenario INI file')
    arguments.add_argument('--out', default=None,
                           help=f'CSV output, overrides [output] path '
                                f'(default {DEFAULT_OUT})')
    arguments.add_argument('--mode', choices=('run', 'validate'),
                           default='run')
    arguments.add_argument('--tol', type=float, default=None,
                           help='relative quadrature tolerance')
    arguments.add_argument('--threads', type=int, default=1,
                           help='worker processes for the sweep')
    arguments.add_argument('--seed', type=int, default=0,
                           help='seed of the oracle polarization bases')
    return arguments


def load(args):
    config = scenario.ScenarioConfig.from_file(args.config)
    if args.tol is not None:
        config = config._replace(spec=config.spec._replace(rel_tol=args.tol))
    if args.threads < 1:
        raise scenario.ConfigError('--threads: must be >= 1')
    return config.validate()


def boxes(config, seed):
    k0 = config.atoms[2].k_trans
    return [oracle.BoxSpec(side=side / k0, k_max=20 * k0, regulator=1 / k0,
                           seed=seed)
            for side in BOX_SIDES]


def run(config, args, console):
    frame = scenario.run(config, workers=args.threads)
    scenario.write_csv(frame, args.out or config.path or DEFAULT_OUT)
    console.print(scenario.summary_table(frame))
    failed = int(frame['error'].astype(bool).sum())
    if failed:
        log.error(f'{failed} point(s) failed to evaluate')
        return EXIT_EVALUATION
    return EXIT_OK


def validate(config, args, console):
    findings = validation.validate(config, boxes(config, args.seed))
    frame = validation.findings_frame(findings)
    if args.out:
        frame.to_csv(args.out, index=False)
    console.print(validation.findings_table(findings))
    if any(finding.strict and not finding.passed for finding in findings):
        return EXIT_VALIDATION
    return EXIT_OK


def main(argv=None):
    try:
        args = parser().parse_args(argv)
    except SystemExit as stop:
        return EXIT_CONFIG if stop.code else EXIT_OK
    console = Console()
    try:
        config = load(args)
    except (OSError, CasimirError) as err:
        log.error(f'{err}')
        return EXIT_CONFIG
    try:
        if args.mode == 'validate':
            return validate(config, args, console)
        return run(config, args, console)
    except CasimirError as err:
        log.error(f'{type(err).__name__}: {err}')
        return EXIT_EVALUATION


if __name__ == '__main__':
    sys.exit(main())
