# -*- coding: utf-8 -*-

# Copyright (c) 2024 Numerics Ansible SIG
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

"""Example integrands, reference oracles and convergence studies.

Every example carries a closed-form derivative oracle, its exact
integral, the analyticity data M(a) on 0 < a < a_max used by the bounds,
and where available the exact error series of the rule.
"""

import logging
import math
import random
from fractions import Fraction

import mpmath

from ansible_collections.numerics.quadrature.plugins.module_utils.quadrature import (
    BAILEY,
    DEFAULT_PRECISION,
    PERIODIC_HALFPLANE,
    PERIODIC_STRIP,
    REALLINE_STRIP,
    DomainError,
    OracleError,
    check_precision,
    to_mpf,
    to_rational,
)
from ansible_collections.numerics.quadrature.plugins.module_utils.coefficients import (
    E_poly,
    F_poly,
    coeff_A,
    coeff_B,
    unit_coeffs,
)
from ansible_collections.numerics.quadrature.plugins.module_utils.bounds import (
    FORM_ASYMPTOTIC,
    compute_bound,
    make_spec,
    optimize_bound,
    series_cutoff,
)
from ansible_collections.numerics.quadrature.plugins.module_utils.rules import (
    PERIODIC,
    REAL_LINE,
    TRUNCATION_ADAPTIVE,
    TRUNCATION_EXTRAPOLATED,
    FourierSeriesIntegrand,
    Integrand,
    TruncatedSum,
    TruncationPolicy,
    bailey_corrected_trapezoid,
    trapezoid_periodic,
    trapezoid_realline,
)

LOG = logging.getLogger(__name__)

PROVENANCE_CLOSED_FORM = 'closed-form'
PROVENANCE_ORACLE = 'oracle'

PERIODIC_COMPLEX = 'periodic-complex'
PERIODIC_REAL = 'periodic-real'
REALLINE_SHARPNESS = 'realline-sharpness'
REALLINE_GAUSSIAN = 'realline-gaussian'

DEFAULT_EXAMPLE_ORDER = 8
ORACLE_NODES = 256


class ExampleCase(object):
    """An example integrand with its reference value and bound data.

    `a_max` is either a number or a callable of (D, param). `exact_error`
    is a callable of (D, param) returning I_{.,D} - I, or None. `builder`
    and `options` rebuild the case at another precision; with
    `specialize` set, the integrand itself depends on (D, param) and
    :meth:`at` rebuilds it.
    """

    def __init__(self, name, integrand, reference, theorem, M_of_a, a_max,
                 exact_error=None, truncation=None,
                 provenance=PROVENANCE_CLOSED_FORM, precision=DEFAULT_PRECISION,
                 builder=None, options=None, specialize=False):
        self.name = name
        self.integrand = integrand
        self.reference = reference
        self.theorem = theorem
        self.M_of_a = M_of_a
        self.a_max = a_max
        self.exact_error = exact_error
        self.truncation = truncation
        self.provenance = provenance
        self.precision = precision
        self.builder = builder
        self.options = dict(options or {})
        self.specialize = specialize

    def __repr__(self):
        return 'ExampleCase({0!r}, theorem={1}, precision={2})'.format(
            self.name, self.theorem, self.precision)

    @property
    def kind(self):
        return self.integrand.kind

    def rebuild(self, precision):
        if self.builder is None:
            raise DomainError("Example {0} cannot be rebuilt".format(self.name))
        return self.builder(precision=precision, **self.options)

    def at(self, D, param):
        """The case specialized to order D and rule parameter N or h."""
        if not self.specialize:
            return self
        if self.options.get('D') == D and self.options.get('h') == param:
            return self
        options = dict(self.options, D=D, h=param)
        return self.builder(precision=self.precision, **options)

    def a_limit(self, D, param):
        if callable(self.a_max):
            return self.a_max(D, param)
        return self.a_max

    def coefficients(self, D):
        if D == 0:
            return unit_coeffs()
        if self.theorem == PERIODIC_HALFPLANE:
            return coeff_A(D)
        return coeff_B(D)

    def approximate(self, D, param, m=None, precision=None):
        """Applies the rule matching the example's theorem.

        Returns a TruncatedSum; periodic rules report the window 1..N.
        With `m` the real-line single correction of order 2m is used.
        """
        precision = precision or self.precision
        if self.kind == PERIODIC:
            if m is not None:
                raise DomainError("The single correction rule is real-line only")
            value = trapezoid_periodic(self.integrand, param, D,
                                       self.coefficients(D), precision)
            return TruncatedSum(value, 1, param)
        if m is not None:
            return bailey_corrected_trapezoid(self.integrand, param, m,
                                              self.truncation, precision)
        return trapezoid_realline(self.integrand, param, D, self.coefficients(D),
                                  self.truncation, precision)

    def optimized_bound(self, D, param, m=None, precision=None):
        theorem = BAILEY if m is not None else self.theorem
        return optimize_bound(theorem, D, param, self.M_of_a,
                              self.a_limit(D, param), m=m,
                              precision=precision or self.precision)

    def asymptotic_bound(self, D, param, a, m=None, precision=None):
        precision = precision or self.precision
        theorem = BAILEY if m is not None else self.theorem
        with mpmath.workprec(precision):
            spec = make_spec(theorem, self.M_of_a(a), a, D, param, m)
        return compute_bound(spec, FORM_ASYMPTOTIC, m, precision)


def _check_positive(value, name):
    value = to_mpf(value)
    if not value > 0:
        raise DomainError("{0} must be positive, got {1}".format(
            name, mpmath.nstr(value, 10)))
    return value


def _tail_sum(term, start, tolerance, term_bound):
    """sum_{l >= start} term(l), cut where the bound tail is below tolerance."""
    last = series_cutoff(term_bound, tolerance, start=start)
    total = mpmath.mpf(0)
    for ell in range(start, last + 1):
        total += term(ell)
    return total


def example_periodic_complex(b=None, b_exp=None, max_order=DEFAULT_EXAMPLE_ORDER,
                             precision=DEFAULT_PRECISION):
    """v(theta) = 1 / (e^b + e^{i theta}), poles in the lower half-plane.

    Fourier coefficients c_l = (-1)^l e^{-b(l+1)} for l >= 0. The pole
    depth is given either as b or as e^b (`b_exp`); the default is e^b = 2.
    """
    precision = check_precision(precision)
    options = dict(b=b, b_exp=b_exp, max_order=max_order)
    with mpmath.workprec(precision):
        if b is None:
            b_exp = _check_positive(2 if b_exp is None else b_exp, 'b_exp')
            if not b_exp > 1:
                raise DomainError("e^b must exceed 1")
            b = mpmath.log(b_exp)
        b = _check_positive(b, 'b')
        tolerance = mpmath.ldexp(1, -precision - 10)
        last = series_cutoff(
            lambda ell: mpmath.mpf(ell) ** max_order * mpmath.exp(-b * (ell + 1)),
            tolerance, start=1)
        terms = [(ell, (-1) ** ell * mpmath.exp(-b * (ell + 1)))
                 for ell in range(last + 1)]
        LOG.debug("periodic-complex series uses %d terms", len(terms))
        integrand = FourierSeriesIntegrand(terms, max_order, name=PERIODIC_COMPLEX)
        reference = 2 * mpmath.pi * mpmath.exp(-b)
        eb = mpmath.exp(b)

    def M_of_a(a):
        return 1 / (eb - mpmath.exp(a))

    def exact_error(D, N):
        with mpmath.workprec(precision):
            tol = mpmath.ldexp(1, -precision - 10)

            def term(ell):
                coefficient = (-1) ** (ell * N) * mpmath.exp(-b * (ell * N + 1))
                value = E_poly(ell, D)
                return coefficient * value.numerator / value.denominator

            def bound(ell):
                return mpmath.exp(-b * (ell * N + 1)) * math.comb(ell - 1, D)

            return 2 * mpmath.pi * _tail_sum(term, D + 1, tol, bound)

    return ExampleCase(
        PERIODIC_COMPLEX, integrand, reference, PERIODIC_HALFPLANE,
        M_of_a, b, exact_error=exact_error, precision=precision,
        builder=example_periodic_complex,
        options=options)


def example_periodic_real(max_order=DEFAULT_EXAMPLE_ORDER,
                          precision=DEFAULT_PRECISION):
    """v(theta) = e^{cos theta} = sum_l I_|l|(1) e^{i l theta}."""
    precision = check_precision(precision)
    with mpmath.workprec(precision):
        tolerance = mpmath.ldexp(1, -precision - 10)
        quarter = mpmath.exp(mpmath.mpf(1) / 4)
        # I_l(1) <= e^{1/4} (1/2)^l / l!
        last = series_cutoff(
            lambda ell: 2 * mpmath.mpf(ell) ** max_order * quarter
            * mpmath.ldexp(1, -ell) / mpmath.factorial(ell),
            tolerance, start=1)
        bessel = [mpmath.besseli(ell, 1) for ell in range(last + 1)]
        terms = [(ell, bessel[abs(ell)]) for ell in range(-last, last + 1)]
        integrand = FourierSeriesIntegrand(terms, max_order, name=PERIODIC_REAL)
        reference = 2 * mpmath.pi * bessel[0]

    def M_of_a(a):
        return mpmath.exp(mpmath.cosh(a))

    def a_max(D, N):
        return mpmath.log(4 * (D + 2) * N)

    def exact_error(D, N):
        with mpmath.workprec(precision):
            tol = mpmath.ldexp(1, -precision - 10)

            def term(ell):
                value = F_poly(ell, D)
                return mpmath.besseli(ell * N, 1) * value.numerator / value.denominator

            def bound(ell):
                n = ell * N
                return (quarter * mpmath.ldexp(1, -n) / mpmath.factorial(n)
                        * math.comb(ell + D // 2, D // 2) * math.comb(ell - 1, D // 2))

            return 4 * mpmath.pi * _tail_sum(term, D // 2 + 1, tol, bound)

    return ExampleCase(
        PERIODIC_REAL, integrand, reference, PERIODIC_STRIP, M_of_a, a_max,
        exact_error=exact_error, precision=precision,
        builder=example_periodic_real, options=dict(max_order=max_order))


def _leibniz(left, right, order):
    result = []
    for k in range(order + 1):
        total = 0
        for j in range(k + 1):
            total += math.comb(k, j) * left[j] * right[k - j]
        result.append(total)
    return result


def sharpness_J(a, L):
    """J(a) = int |(x + ia)^2 + L^2|^{-1} dx for 0 <= a < L."""
    return 2 / (L + a) * mpmath.ellipk(1 - ((L - a) / (L + a)) ** 2)


def example_realline_sharpness(D=2, h=1, L=1, max_order=None,
                               precision=DEFAULT_PRECISION):
    """w(x) = cos(c x) / (x^2 + L^2) with c = 2 pi (D/2 + 1) / h.

    The node values decay like 1/x^2 without oscillating, so the node sum
    is extrapolated.
    """
    precision = check_precision(precision)
    if not isinstance(D, int) or D < 0 or D % 2:
        raise DomainError("Sharpness example needs even D >= 0, got %r" % (D,))
    max_order = max(D, max_order or DEFAULT_EXAMPLE_ORDER)
    with mpmath.workprec(precision):
        h_value = _check_positive(h, 'h')
        L_value = _check_positive(L, 'L')
        frequency = 2 * (D // 2 + 1) / h_value
        c = mpmath.pi * frequency
        reference = mpmath.pi / L_value * mpmath.exp(-c * L_value)
        iL = mpmath.mpc(0, L_value)

    def batch(x, order):
        # cos(c x) = cospi(frequency * x) is exact at the nodes
        cos_x = mpmath.cospi(frequency * x)
        sin_x = mpmath.sinpi(frequency * x)
        cycle = (cos_x, -sin_x, -cos_x, sin_x)
        wave = [c ** j * cycle[j % 4] for j in range(order + 1)]
        poles = []
        left, right = 1 / (x - iL), 1 / (x + iL)
        pl, pr = left, right
        for n in range(order + 1):
            value = (-1) ** n * mpmath.factorial(n) * (pl - pr) / (2 * iL)
            poles.append(value.real)
            pl *= left
            pr *= right
        return _leibniz(wave, poles, order)

    def function(x, k):
        return batch(x, k)[k]

    integrand = Integrand(function, max_order, REAL_LINE,
                          name=REALLINE_SHARPNESS, concurrent_safe=True,
                          batch=batch)

    def M_of_a(a):
        return mpmath.cosh(c * a) * sharpness_J(a, L_value)

    def exact_error(rule_D, rule_h):
        if rule_D != D or to_rational(rule_h) != to_rational(h):
            return None
        with mpmath.workprec(precision):
            tol = mpmath.ldexp(1, -precision - 10)
            q = 2 * mpmath.pi * L_value / h_value

            def term(ell):
                value = F_poly(ell, D)
                return mpmath.exp(-q * ell) * value.numerator / value.denominator

            def bound(ell):
                return (mpmath.exp(-q * ell) * math.comb(ell + D // 2, D // 2)
                        * math.comb(ell - 1, D // 2))

            return (2 * mpmath.pi / L_value * mpmath.cosh(c * L_value)
                    * _tail_sum(term, D // 2 + 1, tol, bound))

    return ExampleCase(
        REALLINE_SHARPNESS, integrand, reference, REALLINE_STRIP, M_of_a,
        L_value, exact_error=exact_error,
        truncation=TruncationPolicy(TRUNCATION_EXTRAPOLATED),
        precision=precision, builder=example_realline_sharpness,
        options=dict(D=D, h=h, L=L, max_order=max_order), specialize=True)


def example_realline_gaussian(max_order=DEFAULT_EXAMPLE_ORDER,
                              precision=DEFAULT_PRECISION):
    """w(x) = e^{-x^2}, derivatives (-1)^k H_k(x) e^{-x^2}."""
    precision = check_precision(precision)

    def batch(x, order):
        gauss = mpmath.exp(-x * x)
        values = [mpmath.mpf(1), 2 * x]
        for n in range(1, order):
            values.append(2 * x * values[n] - 2 * n * values[n - 1])
        return [(-1) ** k * values[k] * gauss for k in range(order + 1)]

    def function(x, k):
        return batch(x, k)[k]

    integrand = Integrand(function, max_order, REAL_LINE,
                          name=REALLINE_GAUSSIAN, concurrent_safe=True,
                          batch=batch)
    with mpmath.workprec(precision):
        reference = mpmath.sqrt(mpmath.pi)
        root_pi = reference

    def M_of_a(a):
        return root_pi * mpmath.exp(a * a)

    def a_max(D, h):
        return 2 * mpmath.pi * (D // 2 + 1) / to_mpf(h) + 1

    def exact_error(D, h):
        with mpmath.workprec(precision):
            tol = mpmath.ldexp(1, -precision - 10)
            s = (mpmath.pi / to_mpf(h)) ** 2

            def term(ell):
                value = F_poly(ell, D)
                return mpmath.exp(-s * ell * ell) * value.numerator / value.denominator

            def bound(ell):
                return (mpmath.exp(-s * ell) * math.comb(ell + D // 2, D // 2)
                        * math.comb(ell - 1, D // 2))

            return 2 * root_pi * _tail_sum(term, D // 2 + 1, tol, bound)

    return ExampleCase(
        REALLINE_GAUSSIAN, integrand, reference, REALLINE_STRIP, M_of_a, a_max,
        exact_error=exact_error,
        truncation=TruncationPolicy(TRUNCATION_ADAPTIVE,
                                    tail_tolerance=mpmath.ldexp(1, -precision)),
        precision=precision, builder=example_realline_gaussian,
        options=dict(max_order=max_order))


EXAMPLES = {
    PERIODIC_COMPLEX: example_periodic_complex,
    PERIODIC_REAL: example_periodic_real,
    REALLINE_SHARPNESS: example_realline_sharpness,
    REALLINE_GAUSSIAN: example_realline_gaussian,
}


def oracle_reference(case, nodes=ORACLE_NODES, precision=None):
    """Reference value from the plain rule with many nodes at doubled precision."""
    if case.kind != PERIODIC:
        raise DomainError(
            "The high-N reference oracle applies to periodic examples only")
    precision = 2 * (precision or case.precision)
    doubled = case.rebuild(precision)
    return trapezoid_periodic(doubled.integrand, nodes, 0, precision=precision)


def validate_derivative_oracle(case, points=None, max_order=4, step='1e-6',
                               rtol='1e-8', count=8, seed=0):
    """Compares the derivative oracle with central finite differences.

    Differences are taken with mpmath.diff at the given step; agreement
    is measured relative to max(|oracle|, 1). Returns the largest
    deviation and raises OracleError beyond `rtol`.
    """
    integrand = case.integrand
    max_order = min(max_order, integrand.max_order)
    if points is None:
        rng = random.Random(seed)
        if case.kind == PERIODIC:
            points = [rng.uniform(0, 2 * math.pi) for _ in range(count)]
        else:
            points = [rng.uniform(-2, 2) for _ in range(count)]
    worst = mpmath.mpf(0)
    with mpmath.workprec(case.precision):
        rtol = to_mpf(rtol)
        step = to_mpf(step)
        for point in points:
            x = to_mpf(point)
            oracle = integrand.derivatives(x, max_order)
            for k in range(1, max_order + 1):
                estimate = mpmath.diff(lambda t: integrand(t, 0), x, k, h=step)
                deviation = abs(estimate - oracle[k]) / max(abs(oracle[k]), 1)
                worst = max(worst, deviation)
                if deviation > rtol:
                    raise OracleError(
                        "Derivative oracle of {0} disagrees with finite"
                        " differences at x={1}, order {2}"
                        .format(case.name, mpmath.nstr(x, 12), k),
                        extra_data=dict(point=mpmath.nstr(x, 20), order=k,
                                        deviation=mpmath.nstr(deviation, 5)))
    return worst


class ConvergenceRow(object):

    COLUMNS = ('example', 'theorem', 'D', 'N_or_h', 'approx_re', 'approx_im',
               'reference', 'abs_error', 'bound_exact', 'bound_asymptotic',
               'a_opt', 'precision_bits')

    def __init__(self, example, theorem, D, param, approx, reference, abs_error,
                 bound_exact, bound_asymptotic, a_opt, precision, violation=False):
        self.example = example
        self.theorem = theorem
        self.D = D
        self.param = param
        self.approx = approx
        self.reference = reference
        self.abs_error = abs_error
        self.bound_exact = bound_exact
        self.bound_asymptotic = bound_asymptotic
        self.a_opt = a_opt
        self.precision = precision
        self.violation = violation

    def __repr__(self):
        return 'ConvergenceRow({0}, D={1}, {2}, error={3})'.format(
            self.example, self.D, self.param, mpmath.nstr(self.abs_error, 5))

    def above_floor(self):
        return self.abs_error > precision_floor(self.precision)


def precision_floor(precision):
    return mpmath.ldexp(1, -precision + 16)


def _param_key(param):
    return to_rational(param)


def run_convergence_study(case, D_list, params, precision=None, m=None):
    """Rows for every (D, N or h), sorted by D then by the rule parameter.

    Rows whose error exceeds the exact-form bound above the precision
    floor are flagged and logged.
    """
    if not D_list or not params:
        return []
    precision = check_precision(precision or case.precision)
    if precision != case.precision:
        case = case.rebuild(precision)
    orders = sorted(set(D_list))
    needed = 2 * m if m is not None else orders[-1]
    if not case.specialize and case.integrand.max_order < needed:
        raise DomainError(
            "Example {0} supplies derivatives up to order {1}, {2} needed"
            .format(case.name, case.integrand.max_order, needed))
    values = sorted(set(params), key=_param_key)
    floor = precision_floor(precision)
    rows = []
    for D in orders:
        for param in values:
            if case.kind == REAL_LINE:
                param = Fraction(to_rational(param))
            specialized = case.at(D, param)
            try:
                result = specialized.approximate(D, param, m=m, precision=precision)
                optimum = specialized.optimized_bound(D, param, m=m, precision=precision)
                asymptotic = specialized.asymptotic_bound(
                    D, param, optimum.a_opt, m=m, precision=precision)
            except OracleError as e:
                e.extra_data.update(example=case.name, D=D, param=str(param))
                raise
            with mpmath.workprec(precision):
                error = abs(result.value - specialized.reference)
                violation = bool(error > floor and error > optimum.bound)
            if violation:
                LOG.warning("Error %s exceeds bound %s for %s at D=%s, %s",
                            mpmath.nstr(error, 8), mpmath.nstr(optimum.bound, 8),
                            case.name, D, param)
            rows.append(ConvergenceRow(
                case.name, BAILEY if m is not None else case.theorem, D, param,
                result.value, specialized.reference, error, optimum.bound,
                asymptotic, optimum.a_opt, precision, violation))
    return rows


def fit_log_slope(rows, lower='1e-60', upper='1e-3'):
    """Least-squares slope of ln|error| against the rule parameter.

    Only rows with lower < |error| < upper take part; returns None with
    fewer than two of them.
    """
    points = []
    with mpmath.workprec(113):
        lower, upper = to_mpf(lower), to_mpf(upper)
        for row in rows:
            if lower < row.abs_error < upper:
                points.append((to_mpf(row.param), mpmath.log(row.abs_error)))
        if len(points) < 2:
            return None
        n = len(points)
        mean_x = sum(x for x, _ in points) / n
        mean_y = sum(y for _, y in points) / n
        sxx = sum((x - mean_x) ** 2 for x, _ in points)
        sxy = sum((x - mean_x) * (y - mean_y) for x, y in points)
        return sxy / sxx
