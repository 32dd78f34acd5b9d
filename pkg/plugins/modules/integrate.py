#!/usr/bin/python
# -*- coding: utf-8 -*-

# Copyright (c) 2024 Numerics Ansible SIG
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

DOCUMENTATION = '''
---
module: integrate
short_description: Evaluate one corrected trapezoidal rule
author: Numerics Ansible SIG
description:
  - Apply the periodic rule, the real-line rule or the real-line single
    correction to a built-in example or to a user supplied Fourier series.
  - Reports the approximation, the reference value when it is known, the
    error, the exact error series when available and the error bound.
options:
  example:
    description:
      - Built-in example to integrate.
      - Mutually exclusive with I(user_series).
    choices: [periodic-complex, periodic-real, realline-sharpness, realline-gaussian]
    type: str
  user_series:
    description:
      - JSON file holding a periodic integrand as an array of Fourier terms
        C({"ell": int, "c_re": string, "c_im": string}).
      - Only the C(periodic) rule applies.
    type: path
  rule:
    description:
      - Rule to apply.
    required: true
    choices: [periodic, realline, bailey]
    type: str
  N:
    description:
      - Number of nodes of the periodic rule.
    type: int
  h:
    description:
      - Step of the real-line rules, as a decimal or a fraction like C(1/2).
    type: str
  D:
    description:
      - Highest derivative order of the rule. Must be even for strip
        coefficients and on the real line.
      - For C(realline-sharpness) it also selects the integrand.
    type: int
    default: 0
  m:
    description:
      - Order 2m of the single correction of the C(bailey) rule.
    type: int
  family:
    description:
      - Coefficients applied to I(user_series), C(A) for integrands analytic
        in the upper half-plane and C(B) for integrands analytic in a strip.
    choices: [A, B]
    default: B
    type: str
  M:
    description:
      - Analyticity bound of I(user_series), used together with I(a) for the
        error bound.
    type: str
  a:
    description:
      - Half-plane depth or strip half-width of I(user_series).
    type: str
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
- name: Strip rule with N=4, D=4 on e^(cos theta)
  numerics.quadrature.integrate:
    example: periodic-real
    rule: periodic
    N: 4
    D: 4

- name: Single correction of order 2 on the sharpness integrand
  numerics.quadrature.integrate:
    example: realline-sharpness
    rule: bailey
    D: 2
    h: '1/2'
    m: 1

- name: Own Fourier series with a fixed bound
  numerics.quadrature.integrate:
    user_series: /tmp/series.json
    rule: periodic
    family: B
    N: 8
    D: 2
    M: '3'
    a: '0.5'
'''

RETURN = '''
columns:
  description: Column names of I(rows), in output order.
  returned: always
  type: list
  elements: str
rows:
  description: A single result record.
  returned: always
  type: list
  elements: dict
  contains:
    approx_re:
      description: Real part of the approximation.
      type: str
      sample: 7.9549265210781354E+0
    reference:
      description: Real part of the exact integral, empty when no reference
        is known.
      type: str
    reference_im:
      description: Imaginary part of the exact integral. Set for user series,
        whose constant term may be complex, empty for the built-in examples.
      type: str
    abs_error:
      description: Distance to the reference value, empty when no reference
        is known.
      type: str
    bound:
      description: Error bound, empty when no analyticity data is known.
      type: str
    window:
      description: Node indices summed, or C(extrapolated).
      type: str
      sample: 1..4
result:
  description: The result record.
  returned: always
  type: dict
output_path:
  description: File the table was written to.
  returned: when I(output_path) is set
  type: str
'''

import json

import mpmath

from ansible_collections.numerics.quadrature.plugins.module_utils.quadrature import (
    QuadratureModule, PERIODIC_HALFPLANE, PERIODIC_STRIP, DomainError, to_mpf,
    to_rational)
from ansible_collections.numerics.quadrature.plugins.module_utils.coefficients import (
    coeff_A, coeff_B, unit_coeffs)
from ansible_collections.numerics.quadrature.plugins.module_utils.bounds import (
    BoundSpec, compute_bound)
from ansible_collections.numerics.quadrature.plugins.module_utils.rules import (
    PERIODIC, FourierSeriesIntegrand, trapezoid_periodic)
from ansible_collections.numerics.quadrature.plugins.module_utils.harness import (
    PERIODIC_COMPLEX, PERIODIC_REAL, REALLINE_SHARPNESS, example_periodic_complex,
    example_periodic_real, example_realline_gaussian, example_realline_sharpness)
from ansible_collections.numerics.quadrature.plugins.module_utils.output import (
    format_decimal, format_param)

COLUMNS = ('example', 'rule', 'D', 'm', 'N_or_h', 'approx_re', 'approx_im',
           'reference', 'reference_im', 'abs_error', 'exact_error', 'bound',
           'a_opt', 'window', 'precision_bits')


def load_series(path, precision):
    """Reads Fourier terms [{"ell", "c_re", "c_im"}] from a JSON file."""
    try:
        with open(path) as fp:
            data = json.load(fp)
    except (IOError, OSError, ValueError) as e:
        raise DomainError("Cannot read Fourier series {0}: {1}".format(path, e))
    if not isinstance(data, list) or not data:
        raise DomainError("Fourier series must be a non-empty JSON array")
    terms = []
    with mpmath.workprec(precision):
        for item in data:
            try:
                ell = item['ell']
                re = to_mpf(item.get('c_re', '0'))
                im = to_mpf(item.get('c_im', '0'))
            except (KeyError, TypeError, AttributeError):
                raise DomainError(
                    "Invalid Fourier term {0!r}, expected ell, c_re and c_im"
                    .format(item))
            if not isinstance(ell, int) or isinstance(ell, bool):
                raise DomainError("Fourier frequency must be an integer: %r" % (ell,))
            terms.append((ell, mpmath.mpc(re, im)))
    return terms


class IntegrateModule(QuadratureModule):
    argument_spec = dict(
        example=dict(choices=['periodic-complex', 'periodic-real',
                              'realline-sharpness', 'realline-gaussian']),
        user_series=dict(type='path'),
        rule=dict(required=True, choices=['periodic', 'realline', 'bailey']),
        N=dict(type='int'),
        h=dict(),
        D=dict(type='int', default=0),
        m=dict(type='int'),
        family=dict(default='B', choices=['A', 'B']),
        M=dict(),
        a=dict(),
        b_exp=dict(default='2'),
        L=dict(default='1'),
    )
    module_kwargs = dict(
        mutually_exclusive=[('example', 'user_series')],
        required_one_of=[('example', 'user_series')],
        required_together=[('M', 'a')],
        required_if=[
            ('rule', 'periodic', ['N']),
            ('rule', 'realline', ['h']),
            ('rule', 'bailey', ['h', 'm']),
        ],
        supports_check_mode=True
    )

    def run(self):
        D = self.params['D']
        if D < 0 or D > self.params['max_order']:
            raise DomainError(
                "D must lie in 0..{0}, got {1}".format(self.params['max_order'], D))
        if self.params['user_series']:
            record = self._user_series()
        else:
            record = self._example()
        self.exit_json(changed=False, columns=list(COLUMNS), rows=[record],
                       result=record)

    def _record(self, name, param, value, reference=None, exact_error=None,
                bound=None, a_opt=None, window=''):
        digits = self.params['digits']
        precision = self.params['precision']
        error = reference_im = None
        if reference is not None:
            with mpmath.workprec(precision):
                error = abs(value - reference)
            if isinstance(reference, mpmath.mpc):
                reference, reference_im = reference.real, reference.imag
        return dict(
            example=name,
            rule=self.params['rule'],
            D=str(self.params['D']),
            m='' if self.params['m'] is None else str(self.params['m']),
            N_or_h=format_param(param),
            approx_re=format_decimal(value.real, digits),
            approx_im=format_decimal(value.imag, digits),
            reference=format_decimal(reference, digits),
            reference_im=format_decimal(reference_im, digits),
            abs_error=format_decimal(error, digits),
            exact_error=format_decimal(
                None if exact_error is None else getattr(exact_error, 'real', exact_error),
                digits),
            bound=format_decimal(bound, digits),
            a_opt=format_decimal(a_opt, digits),
            window=window,
            precision_bits=str(precision))

    def _user_series(self):
        if self.params['rule'] != 'periodic':
            raise DomainError("A user series is integrated with the periodic rule only")
        D, N = self.params['D'], self.params['N']
        precision = self.params['precision']
        terms = load_series(self.params['user_series'], precision)
        family = self.params['family']
        with mpmath.workprec(precision):
            integrand = FourierSeriesIntegrand(terms, D, name='user-series')
            reference = 2 * mpmath.pi * sum(c for ell, c in terms if ell == 0)
        if D == 0:
            coeffs = unit_coeffs()
        elif family == 'A':
            coeffs = coeff_A(D, self.params['max_order'])
        else:
            coeffs = coeff_B(D, self.params['max_order'])
        value = trapezoid_periodic(integrand, N, D, coeffs, precision)
        bound = None
        if self.params['M'] is not None:
            theorem = PERIODIC_HALFPLANE if family == 'A' else PERIODIC_STRIP
            spec = BoundSpec(theorem, self.params['M'], self.params['a'], D, N=N)
            bound = compute_bound(spec, precision=precision)
        self.debug("User series with {0} terms integrated".format(len(terms)))
        return self._record('user-series', N, value, reference, bound=bound,
                            window='1..{0}'.format(N))

    def _example(self):
        example = self.params['example']
        rule = self.params['rule']
        D, m = self.params['D'], self.params['m']
        precision = self.params['precision']
        max_order = max(D, 2 * m if m else 0)

        if example.startswith('periodic'):
            if rule != 'periodic':
                raise DomainError(
                    "Example {0} needs the periodic rule".format(example))
            if m is not None:
                raise DomainError("m applies to the bailey rule only")
            param = self.params['N']
            if param < 1:
                raise DomainError("N must be positive")
            if example == PERIODIC_COMPLEX:
                case = example_periodic_complex(
                    b_exp=self.params['b_exp'], max_order=max_order,
                    precision=precision)
            else:
                case = example_periodic_real(max_order=max_order,
                                             precision=precision)
        else:
            if rule == 'periodic':
                raise DomainError(
                    "Example {0} needs a real-line rule".format(example))
            if rule == 'realline':
                m = None
            param = to_rational(self.params['h'])
            if example == REALLINE_SHARPNESS:
                case = example_realline_sharpness(
                    D=D, h=param, L=self.params['L'], max_order=max_order,
                    precision=precision)
            else:
                case = example_realline_gaussian(max_order=max_order,
                                                 precision=precision)

        result = case.approximate(D, param, m=m, precision=precision)
        optimum = case.optimized_bound(D, param, m=m, precision=precision)
        exact_error = None
        if m is None and case.exact_error is not None:
            exact_error = case.exact_error(D, param)
        if case.kind == PERIODIC or result.lower is not None:
            window = '{0}..{1}'.format(result.lower, result.upper)
        else:
            window = 'extrapolated'
        if example == PERIODIC_REAL:
            self.debug("Asymptotic optimum e^a = (D+2)N = {0}".format((D + 2) * param))
        return self._record(example, param, result.value, case.reference,
                            exact_error=exact_error, bound=optimum.bound,
                            a_opt=optimum.a_opt, window=window)


def main():
    module = IntegrateModule()
    module()


if __name__ == '__main__':
    main()
