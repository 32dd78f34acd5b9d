#!/usr/bin/python
# -*- coding: utf-8 -*-

# Copyright (c) 2024 Numerics Ansible SIG
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

DOCUMENTATION = '''
---
module: coeffs
short_description: Generate derivative correction coefficients
author: Numerics Ansible SIG
description:
  - Generate, in exact rational arithmetic, the derivative weights of the
    corrected trapezoidal rules.
  - Family C(A) gives the half-plane coefficients, family C(B) the strip
    coefficients, C(B-limit) their large-D limits, C(G-taylor) the Taylor
    truncation weights and C(G-hermite) the Hermite interpolation weights.
options:
  family:
    description:
      - Coefficient family to generate.
    required: true
    choices: [A, B, B-limit, G-taylor, G-hermite]
    type: str
  D:
    description:
      - Highest derivative order.
      - Must be even for the C(B), C(B-limit) families.
    required: true
    type: int
  N:
    description:
      - Stencil half-widths for C(G-hermite). Each entry is an integer or an
        inclusive range C(lo:hi[:step]).
      - Defaults to 1, 2, 3, 4, 6, 8, 10, 15 and 20.
    type: list
    elements: str
  method:
    description:
      - Elimination route of the Hermite solve. C(reduced) solves the even
        moment equations only, C(full) solves all of them and checks the
        parity of the weights.
    choices: [reduced, full]
    default: reduced
    type: str
extends_documentation_fragment:
- numerics.quadrature.quadrature
'''

EXAMPLES = '''
- name: Strip coefficients of order 4
  numerics.quadrature.coeffs:
    family: B
    D: 4

- name: Hermite weights in the layout of the reference table
  numerics.quadrature.coeffs:
    family: G-hermite
    D: 4
    N: ['1:4', 6, 8, 10, 15, 20]
    output_path: /tmp/hermite.csv
'''

RETURN = '''
columns:
  description: Column names of I(rows), in output order.
  returned: always
  type: list
  elements: str
rows:
  description: One row per non-zero coefficient C(k >= 1).
  returned: always
  type: list
  elements: dict
  contains:
    family:
      description: Coefficient family.
      type: str
      sample: B
    D:
      description: Order of the coefficient set.
      type: str
      sample: "4"
    N:
      description: Stencil half-width, C(inf) for the limit row, empty
        outside C(G-hermite).
      type: str
    k:
      description: Derivative order of the coefficient.
      type: str
      sample: "2"
    exact:
      description: Exact value, for instance C(5/4) or C(-i/6).
      type: str
      sample: 5/4
    decimal_re:
      description: Decimal rendering of the real part.
      type: str
      sample: 1.2500000000000000E+0
coefficients:
  description: Exact export of every coefficient set, rationals as
    C(num)/C(den) strings and complex values as C(re)/C(im) pairs.
  returned: always
  type: list
  elements: dict
output_path:
  description: File the table was written to.
  returned: when I(output_path) is set
  type: str
'''

from fractions import Fraction

from ansible_collections.numerics.quadrature.plugins.module_utils.quadrature import (
    QuadratureModule, DomainError, expand_ranges)
from ansible_collections.numerics.quadrature.plugins.module_utils.coefficients import (
    ComplexRational, coeff_A, coeff_B, coeff_B_limit)
from ansible_collections.numerics.quadrature.plugins.module_utils.hermite import (
    TABLE_N_VALUES, HermiteSolveSpec, g_limit_reference, hermite_interp_coeffs,
    taylor_truncation_coeffs)
from ansible_collections.numerics.quadrature.plugins.module_utils.output import (
    format_decimal, format_exact)

COLUMNS = ('family', 'D', 'N', 'k', 'exact', 're_num', 're_den', 'im_num',
           'im_den', 'decimal_re', 'decimal_im')


class CoeffsModule(QuadratureModule):
    argument_spec = dict(
        family=dict(required=True,
                    choices=['A', 'B', 'B-limit', 'G-taylor', 'G-hermite']),
        D=dict(type='int', required=True),
        N=dict(type='list', elements='str'),
        method=dict(default='reduced', choices=['reduced', 'full']),
    )
    module_kwargs = dict(
        supports_check_mode=True
    )

    def run(self):
        family = self.params['family']
        D = self.params['D']
        if D > self.params['max_order']:
            raise DomainError(
                "D={0} exceeds the configured maximum order {1}"
                .format(D, self.params['max_order']))

        if family == 'A':
            sets = [coeff_A(D, self.params['max_order'])]
        elif family == 'B':
            sets = [coeff_B(D, self.params['max_order'])]
        elif family == 'G-taylor':
            sets = [taylor_truncation_coeffs(D)]
        elif family == 'G-hermite':
            sets = self._hermite(D)
        else:
            return self._limits(D)

        rows = []
        for coeffs in sets:
            for k, value in enumerate(coeffs):
                if k and value != 0:
                    rows.append(self._exact_row(family, D, coeffs.stencil, k, value))
        if family == 'G-hermite' and D >= 2 and D % 2 == 0:
            limits = g_limit_reference(D, self.params['precision'])
            for k in range(2, D + 1, 2):
                rows.append(self._decimal_row(family, D, 'inf', k, limits[k]))

        self.debug("Generated {0} {1} coefficients".format(len(rows), family))
        self.exit_json(
            changed=False,
            columns=list(COLUMNS),
            rows=rows,
            coefficients=[c.to_dict(self.params['digits']) for c in sets])

    def _hermite(self, D):
        if self.params['N'] is None:
            stencils = list(TABLE_N_VALUES)
        else:
            stencils = expand_ranges(self.params['N'], 'N')
            if not stencils:
                raise DomainError("No stencil half-width N given")
        sets = []
        for N in stencils:
            spec = HermiteSolveSpec(N, D, self.params['max_system'])
            self.debug("Solving Hermite system of size {0}".format(spec.size))
            sets.append(hermite_interp_coeffs(spec, self.params['method']))
        return sets

    def _limits(self, D):
        if D < 2 or D % 2:
            raise DomainError(
                "B-limit needs an even D >= 2, got {0}".format(D))
        rows = []
        for m in range(1, D // 2 + 1):
            value = coeff_B_limit(m, self.params['precision'])
            rows.append(self._decimal_row('B-limit', D, '', 2 * m, value))
        self.exit_json(changed=False, columns=list(COLUMNS), rows=rows,
                       coefficients=[])

    def _exact_row(self, family, D, N, k, value):
        digits = self.params['digits']
        if isinstance(value, ComplexRational):
            re, im = value.re, value.im
        else:
            re, im = Fraction(value), Fraction(0)
        return dict(
            family=family, D=str(D), N='' if N is None else str(N), k=str(k),
            exact=format_exact(re, im),
            re_num=str(re.numerator), re_den=str(re.denominator),
            im_num=str(im.numerator), im_den=str(im.denominator),
            decimal_re=format_decimal(re, digits),
            decimal_im=format_decimal(im, digits))

    def _decimal_row(self, family, D, N, k, value):
        return dict(
            family=family, D=str(D), N=N, k=str(k), exact='',
            re_num='', re_den='', im_num='', im_den='',
            decimal_re=format_decimal(value, self.params['digits']),
            decimal_im='0')


def main():
    module = CoeffsModule()
    module()


if __name__ == '__main__':
    main()
