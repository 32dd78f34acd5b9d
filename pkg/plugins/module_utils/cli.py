# -*- coding: utf-8 -*-

# Copyright (c) 2024 Numerics Ansible SIG
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

"""Command-line front-end of the quadrature modules.

    python -m ansible_collections.numerics.quadrature.plugins.module_utils.cli \\
        study --example periodic-real --D 0,2,4 --N 2:20

Each subcommand runs the module of the same name outside of Ansible. The
result table goes to --out or standard output, diagnostics to standard
error. Exit codes are 0 on success, 2 for invalid parameters and 3 for
numeric failures.
"""

import argparse
import logging
import sys

from ansible_collections.numerics.quadrature.plugins.module_utils.quadrature import (
    DEFAULT_DIGITS,
    DEFAULT_MAX_ORDER,
    DEFAULT_MAX_SYSTEM,
    DEFAULT_PRECISION,
    EXIT_OK,
    ModuleExit,
    ModuleFailure,
)
from ansible_collections.numerics.quadrature.plugins.module_utils.output import (
    write_table)


def _commands():
    from ansible_collections.numerics.quadrature.plugins.modules.coeffs import CoeffsModule
    from ansible_collections.numerics.quadrature.plugins.modules.integrate import IntegrateModule
    from ansible_collections.numerics.quadrature.plugins.modules.study import StudyModule
    return dict(coeffs=CoeffsModule, integrate=IntegrateModule, study=StudyModule)


def comma_list(value):
    return [item.strip() for item in value.split(',') if item.strip()]


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--precision', type=int, default=DEFAULT_PRECISION,
                        help='working precision in bits (default: %(default)s)')
    common.add_argument('--format', dest='output_format', choices=['csv', 'json'],
                        default='csv')
    common.add_argument('--out', dest='output_path',
                        help='write the table here instead of standard output')
    common.add_argument('--digits', type=int, default=DEFAULT_DIGITS,
                        help='significant digits of decimal values')
    common.add_argument('--max-order', dest='max_order', type=int,
                        default=DEFAULT_MAX_ORDER)
    common.add_argument('--max-system', dest='max_system', type=int,
                        default=DEFAULT_MAX_SYSTEM)
    common.add_argument('--log-path', dest='log_path')
    common.add_argument('--log-level', dest='log_level', choices=['INFO', 'DEBUG'])

    parser = argparse.ArgumentParser(
        prog='quadrature',
        description='Derivative corrected trapezoidal rules')
    subparsers = parser.add_subparsers(dest='command', metavar='COMMAND')
    subparsers.required = True

    coeffs = subparsers.add_parser('coeffs', parents=[common],
                                   help='generate coefficient tables')
    coeffs.add_argument('--family', required=True,
                        choices=['A', 'B', 'B-limit', 'G-taylor', 'G-hermite'])
    coeffs.add_argument('--D', type=int, required=True)
    coeffs.add_argument('--N', type=comma_list,
                        help='stencil half-widths, e.g. 1:4,6,8')
    coeffs.add_argument('--method', choices=['reduced', 'full'])

    study = subparsers.add_parser('study', parents=[common],
                                  help='run a convergence study')
    study.add_argument('--example', required=True,
                       choices=['periodic-complex', 'periodic-real',
                                'realline-sharpness', 'realline-gaussian'])
    study.add_argument('--D', type=comma_list, required=True,
                       help='derivative orders, e.g. 0,2,4')
    study.add_argument('--N', type=comma_list, help='node counts, e.g. 2:20')
    study.add_argument('--h', type=comma_list, help='steps, e.g. 2,1,1/2')
    study.add_argument('--m', type=int)
    study.add_argument('--b-exp', dest='b_exp')
    study.add_argument('--L')

    integrate = subparsers.add_parser('integrate', parents=[common],
                                      help='evaluate a single rule')
    source = integrate.add_mutually_exclusive_group(required=True)
    source.add_argument('--example',
                        choices=['periodic-complex', 'periodic-real',
                                 'realline-sharpness', 'realline-gaussian'])
    source.add_argument('--user-series', dest='user_series')
    integrate.add_argument('--rule', required=True,
                           choices=['periodic', 'realline', 'bailey'])
    integrate.add_argument('--N', type=int)
    integrate.add_argument('--h')
    integrate.add_argument('--D', type=int)
    integrate.add_argument('--m', type=int)
    integrate.add_argument('--family', choices=['A', 'B'])
    integrate.add_argument('--M')
    integrate.add_argument('--a')
    integrate.add_argument('--b-exp', dest='b_exp')
    integrate.add_argument('--L')
    return parser


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    params = dict((k, v) for k, v in vars(args).items()
                  if k != 'command' and v is not None)

    logger = logging.getLogger('ansible_collections.numerics.quadrature')
    if not params.get('log_path') and not logger.handlers:
        handler = logging.StreamHandler(stderr)
        handler.setLevel(logging.WARNING)
        handler.setFormatter(logging.Formatter('%(levelname)s: %(message)s'))
        logger.addHandler(handler)

    module_class = _commands()[args.command]
    try:
        module = module_class(params=params)
        module()
    except ModuleExit as e:
        results = e.results
        if 'rows' in results and not results.get('output_path'):
            write_table(stdout, results['columns'], results['rows'],
                        params.get('output_format', 'csv'))
        return EXIT_OK
    except ModuleFailure as e:
        stderr.write('error: {0}\n'.format(e.msg))
        for key, value in sorted(e.results.get('extra_data', {}).items()):
            stderr.write('  {0}: {1}\n'.format(key, value))
        return e.rc
    return EXIT_OK


if __name__ == '__main__':
    sys.exit(main())
