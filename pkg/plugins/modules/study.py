#!/usr/bin/python
# -*- coding: utf-8 -*-

# Copyright (c) 2024 Numerics Ansible SIG
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

DOCUMENTATION = '''
---
module: study
short_description: Run a convergence study of the corrected trapezoidal rules
author: Numerics Ansible SIG
description:
  - Apply the corrected rule of a built-in example for every combination of
    derivative order I(D) and node count I(N) or step I(h).
  - Each row reports the approximation, the reference value, the actual
    error, the exact-form bound at the optimal analyticity parameter and
    the leading asymptotic term of the bound.
  - Rows whose error exceeds the bound above the precision floor are
    reported in C(violations).
options:
  example:
    description:
      - Built-in example to study.
      - C(periodic-complex) is 1/(e^b + e^(i theta)), C(periodic-real) is
        e^(cos theta), C(realline-sharpness) is
        cos(2 pi (D/2+1) x/h)/(x^2+L^2) and C(realline-gaussian) is e^(-x^2).
    required: true
    choices: [periodic-complex, periodic-real, realline-sharpness, realline-gaussian]
    type: str
  D:
    description:
      - Derivative orders to study.
    required: true
    type: list
    elements: int
  N:
    description:
      - Node counts for periodic examples. Each entry is an integer or an
        inclusive range C(lo:hi[:step]).
    type: list
    elements: str
  h:
    description:
      - Steps for real-line examples, as decimals or fractions like C(1/2).
    type: list
    elements: str
  m:
    description:
      - Study the single correction of order 2m instead of the full rule.
      - Real-line examples only.
    type: int
  b_exp:
    description:
      - Value of e^b for C(periodic-complex).
    type: str
    default: '2'
  L:
    description:
      - Pole distance L of C(realline-sharpness).
    type: str
    default: '1'
extends_documentation_fragment:
- numerics.quadrature.quadrature
'''

EXAMPLES = '''
- name: Convergence of the half-plane rule
  numerics.quadrature.study:
    example: periodic-complex
    b_exp: 2
    D: [0, 1, 2, 3]
    N: ['1:30']
    precision: 512
    output_path: /tmp/periodic-complex.csv

- name: Sharpness of the real-line bound
  numerics.quadrature.study:
    example: realline-sharpness
    D: [2, 4]
    h: ['2', '1', '1/2']
'''

RETURN = '''
columns:
  description: Column names of I(rows), in output order.
  returned: always
  type: list
  elements: str
rows:
  description: One row per (D, N or h), sorted by D and then by N or h.
  returned: always
  type: list
  elements: dict
slopes:
  description: Least-squares slope of the log error against N or h for
    every D, over rows with error between 1e-60 and 1e-3.
  returned: always
  type: dict
violations:
  description: Number of rows whose error exceeds the exact-form bound.
  returned: always
  type: int
  sample: 0
output_path:
  description: File the table was written to.
  returned: when I(output_path) is set
  type: str
'''

from ansible_collections.numerics.quadrature.plugins.module_utils.quadrature import (
    QuadratureModule, DomainError, expand_ranges, to_rational)
from ansible_collections.numerics.quadrature.plugins.module_utils.harness import (
    PERIODIC_COMPLEX, PERIODIC_REAL, REALLINE_SHARPNESS, ConvergenceRow,
    example_periodic_complex, example_periodic_real, example_realline_gaussian,
    example_realline_sharpness, fit_log_slope, run_convergence_study)
from ansible_collections.numerics.quadrature.plugins.module_utils.output import (
    format_decimal, format_param)


def build_case(params, orders, first_param):
    """Instantiates the example named in `params` at the working precision."""
    example = params['example']
    precision = params['precision']
    max_order = max(orders + [2 * params['m'] if params.get('m') else 0])
    if example == PERIODIC_COMPLEX:
        return example_periodic_complex(b_exp=params['b_exp'], max_order=max_order,
                                        precision=precision)
    if example == PERIODIC_REAL:
        return example_periodic_real(max_order=max_order, precision=precision)
    if example == REALLINE_SHARPNESS:
        return example_realline_sharpness(D=orders[0], h=first_param,
                                          L=params['L'], max_order=max_order,
                                          precision=precision)
    return example_realline_gaussian(max_order=max_order, precision=precision)


def render_row(row, digits):
    return dict(
        example=row.example,
        theorem=row.theorem,
        D=str(row.D),
        N_or_h=format_param(row.param),
        approx_re=format_decimal(row.approx.real, digits),
        approx_im=format_decimal(row.approx.imag, digits),
        reference=format_decimal(getattr(row.reference, 'real', row.reference), digits),
        abs_error=format_decimal(row.abs_error, digits),
        bound_exact=format_decimal(row.bound_exact, digits),
        bound_asymptotic=format_decimal(row.bound_asymptotic, digits),
        a_opt=format_decimal(row.a_opt, digits),
        precision_bits=str(row.precision),
    )


class StudyModule(QuadratureModule):
    argument_spec = dict(
        example=dict(required=True,
                     choices=['periodic-complex', 'periodic-real',
                              'realline-sharpness', 'realline-gaussian']),
        D=dict(type='list', elements='int', required=True),
        N=dict(type='list', elements='str'),
        h=dict(type='list', elements='str'),
        m=dict(type='int'),
        b_exp=dict(default='2'),
        L=dict(default='1'),
    )
    module_kwargs = dict(
        mutually_exclusive=[('N', 'h')],
        required_if=[
            ('example', 'periodic-complex', ['N']),
            ('example', 'periodic-real', ['N']),
            ('example', 'realline-sharpness', ['h']),
            ('example', 'realline-gaussian', ['h']),
        ],
        supports_check_mode=True
    )

    def run(self):
        orders = sorted(set(self.params['D']))
        if any(D < 0 or D > self.params['max_order'] for D in orders):
            raise DomainError(
                "Every D must lie in 0..{0}".format(self.params['max_order']))
        if self.params['example'].startswith('periodic'):
            if self.params['m'] is not None:
                raise DomainError("m applies to real-line examples only")
            values = expand_ranges(self.params['N'], 'N')
            if not values:
                raise DomainError("The N range is empty")
            if min(values) < 1:
                raise DomainError("N must be positive")
        else:
            values = [to_rational(h) for h in self.params['h'] if str(h).strip()]
            if not values:
                raise DomainError("The h list is empty")
        if not orders:
            raise DomainError("The D list is empty")

        case = build_case(self.params, orders, values[0])
        self.log("Studying {0} for D={1} over {2} values".format(
            case.name, orders, len(values)))
        rows = run_convergence_study(case, orders, values,
                                     precision=self.params['precision'],
                                     m=self.params['m'])

        digits = self.params['digits']
        slopes = {}
        for D in orders:
            slope = fit_log_slope([row for row in rows if row.D == D])
            slopes[str(D)] = None if slope is None else format_decimal(slope, digits)
        violations = sum(1 for row in rows if row.violation)
        if violations:
            self.warn("{0} rows exceed the exact-form bound".format(violations))

        self.exit_json(
            changed=False,
            columns=list(ConvergenceRow.COLUMNS),
            rows=[render_row(row, digits) for row in rows],
            slopes=slopes,
            violations=violations)


def main():
    module = StudyModule()
    module()


if __name__ == '__main__':
    main()
