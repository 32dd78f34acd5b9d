# -*- coding: utf-8 -*-

# Copyright (c) 2024 Numerics Ansible SIG
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

from fractions import Fraction

import mpmath
import pytest

from ansible_collections.numerics.quadrature.plugins.module_utils.harness import (
    ConvergenceRow,
    ExampleCase,
    example_periodic_complex,
    example_periodic_real,
    example_realline_gaussian,
    example_realline_sharpness,
    fit_log_slope,
    oracle_reference,
    precision_floor,
    run_convergence_study,
    sharpness_J,
    validate_derivative_oracle,
)
from ansible_collections.numerics.quadrature.plugins.module_utils.quadrature import (
    BAILEY,
    PERIODIC_HALFPLANE,
    REALLINE_STRIP,
    DomainError,
    OracleError,
)
from ansible_collections.numerics.quadrature.plugins.module_utils.rules import (
    REAL_LINE,
    Integrand,
)

PRECISION = 128


@pytest.fixture(scope='module')
def periodic_real():
    return example_periodic_real(precision=256)


@pytest.fixture(scope='module')
def gaussian():
    return example_realline_gaussian(precision=PRECISION)


def test_periodic_real_closed_form(periodic_real):
    # nodes at multiples of pi/2 make the corrected sum elementary
    value = periodic_real.approximate(4, 4).value
    with mpmath.workprec(256):
        e = mpmath.e
        expected = mpmath.pi / 1024 * (1101 + 553 / e + 474 * e)
        assert abs(value - expected) < mpmath.mpf(10) ** -60
        relative = abs(value - periodic_real.reference) / periodic_real.reference
        assert relative <= mpmath.mpf('2e-11')


@pytest.mark.parametrize('D, N', [(0, 3), (2, 3), (4, 2)])
def test_periodic_real_exact_error(periodic_real, D, N):
    value = periodic_real.approximate(D, N).value
    with mpmath.workprec(256):
        error = value - periodic_real.reference
        assert abs(error - periodic_real.exact_error(D, N)) < mpmath.mpf(10) ** -60


def test_periodic_complex_exact_error():
    case = example_periodic_complex(precision=PRECISION)
    value = case.approximate(2, 5).value
    with mpmath.workprec(PRECISION):
        assert abs(value - case.reference - case.exact_error(2, 5)) < mpmath.mpf(10) ** -30


def test_periodic_complex_convergence_rates():
    case = example_periodic_complex(b_exp=2, max_order=3, precision=256)
    rows = run_convergence_study(case, [3, 0, 2, 1], list(range(6, 21, 2)))
    assert [row.D for row in rows[:8]] == [0] * 8
    assert not any(row.violation for row in rows)
    assert all(row.theorem == PERIODIC_HALFPLANE for row in rows)
    for D in range(4):
        slope = fit_log_slope([row for row in rows if row.D == D])
        with mpmath.workprec(113):
            expected = -(D + 1) * mpmath.log(2)
            assert abs(slope / expected - 1) < mpmath.mpf('0.05')


def test_periodic_complex_bound_overestimate():
    # at the optimal depth the bound exceeds the error by about (n+1) e
    case = example_periodic_complex(precision=PRECISION)
    D, N = 1, 30
    value = case.approximate(D, N).value
    optimum = case.optimized_bound(D, N)
    with mpmath.workprec(PRECISION):
        n = (D + 1) * N
        ratio = optimum.bound / abs(value - case.reference)
        assert mpmath.mpf('0.9') <= ratio / ((n + 1) * mpmath.e) <= mpmath.mpf('1.2')


def test_periodic_real_bound_dominates(periodic_real):
    rows = run_convergence_study(periodic_real, [0, 2, 4], [2, 4, 8, 12])
    assert len(rows) == 12
    assert not any(row.violation for row in rows)
    for row in rows:
        if row.above_floor():
            with mpmath.workprec(256):
                assert row.abs_error <= row.bound_exact


def test_sharpness_bound_dominates():
    case = example_realline_sharpness(precision=PRECISION)
    rows = run_convergence_study(case, [2, 4], ['2', '1', '1/2'])
    assert [(row.D, row.param) for row in rows[:3]] == [
        (2, Fraction(1, 2)), (2, Fraction(1)), (2, Fraction(2))]
    assert all(row.theorem == REALLINE_STRIP for row in rows)
    assert not any(row.violation for row in rows)


def test_sharpness_exact_error():
    case = example_realline_sharpness(D=2, h=1, precision=PRECISION)
    value = case.approximate(2, Fraction(1)).value
    with mpmath.workprec(PRECISION):
        error = value - case.reference
        assert abs(error - case.exact_error(2, 1)) < mpmath.mpf(10) ** -10
    assert case.exact_error(4, 1) is None


def test_sharpness_error_does_not_vanish():
    h = Fraction(1, 4)
    case = example_realline_sharpness(D=2, h=h, precision=PRECISION)
    value = case.approximate(2, h).value
    with mpmath.workprec(PRECISION):
        error = value - case.reference
        assert abs(error / (-3 * mpmath.pi) - 1) < mpmath.mpf('0.01')


def test_sharpness_case_specializes():
    case = example_realline_sharpness(D=2, h=1, precision=PRECISION)
    assert case.at(2, 1) is case
    other = case.at(4, Fraction(1, 2))
    assert other.options['D'] == 4
    assert other.options['h'] == Fraction(1, 2)
    with pytest.raises(DomainError):
        example_realline_sharpness(D=3)


def test_sharpness_J_at_the_axis():
    with mpmath.workprec(PRECISION):
        L = mpmath.mpf(2)
        assert abs(sharpness_J(0, L) - mpmath.pi / L) < mpmath.mpf(10) ** -35


@pytest.mark.parametrize('builder', [example_realline_sharpness,
                                     example_realline_gaussian])
@pytest.mark.parametrize('m', [1, 2, 3])
def test_single_correction_below_bound(builder, m):
    rows = run_convergence_study(builder(precision=PRECISION), [2], ['1', '1/2'], m=m)
    assert all(row.theorem == BAILEY for row in rows)
    assert not any(row.violation for row in rows)
    # errors under the precision floor are roundoff, not truncation
    for row in rows:
        if row.above_floor():
            with mpmath.workprec(PRECISION):
                assert row.abs_error <= row.bound_exact


def test_gaussian_exact_error(gaussian):
    value = gaussian.approximate(2, Fraction(1)).value
    with mpmath.workprec(PRECISION):
        error = value - gaussian.reference
        assert abs(error - gaussian.exact_error(2, 1)) < mpmath.mpf(10) ** -30
        assert error.real < 0
        assert abs(error.imag) < precision_floor(PRECISION)


def test_oracle_reference_matches_closed_form():
    for case in (example_periodic_complex(precision=256),
                 example_periodic_real(precision=256)):
        value = oracle_reference(case)
        with mpmath.workprec(256):
            assert abs(value - case.reference) < mpmath.mpf(10) ** -20


def test_oracle_reference_periodic_only(gaussian):
    with pytest.raises(DomainError):
        oracle_reference(gaussian)


@pytest.mark.parametrize('builder', [example_periodic_complex, example_periodic_real,
                                     example_realline_gaussian,
                                     example_realline_sharpness])
def test_derivative_oracles_agree_with_differences(builder):
    worst = validate_derivative_oracle(builder(precision=PRECISION))
    assert worst < mpmath.mpf('1e-8')


def test_broken_derivative_oracle_is_reported():
    def function(x, k):
        g = mpmath.exp(-x * x)
        return (g, 2 * x * g)[k]

    integrand = Integrand(function, 1, REAL_LINE, name='sign-flipped')
    case = ExampleCase('sign-flipped', integrand, mpmath.sqrt(mpmath.pi),
                       REALLINE_STRIP, lambda a: 1, 1, precision=PRECISION)
    with pytest.raises(OracleError) as ctx:
        validate_derivative_oracle(case, points=['0.5'])
    assert ctx.value.extra_data['order'] == 1


def test_study_edge_cases(gaussian):
    assert run_convergence_study(gaussian, [2], []) == []
    assert run_convergence_study(gaussian, [], ['1']) == []
    case = example_periodic_complex(max_order=2, precision=PRECISION)
    with pytest.raises(DomainError):
        run_convergence_study(case, [4], [4])
    with pytest.raises(DomainError):
        run_convergence_study(case, [2], [4], m=1)


def test_study_rebuilds_at_requested_precision(gaussian):
    rows = run_convergence_study(gaussian, [2], ['1'], precision=192)
    assert rows[0].precision == 192
    assert rows[0].above_floor()


def test_example_validation():
    with pytest.raises(DomainError):
        example_periodic_complex(b_exp='0.5')
    with pytest.raises(DomainError):
        example_periodic_complex(b=-1)


def test_precision_floor():
    assert precision_floor(128) == mpmath.ldexp(1, -112)


def _row(param, error):
    return ConvergenceRow('demo', PERIODIC_HALFPLANE, 1, param, 0, 0, error,
                          None, None, None, PRECISION)


def test_fit_log_slope():
    with mpmath.workprec(PRECISION):
        rows = [_row(N, mpmath.exp(-2 * N)) for N in (2, 4, 6, 8)]
        rows.append(_row(1, mpmath.mpf('0.5')))
    slope = fit_log_slope(rows)
    assert abs(slope + 2) < mpmath.mpf('1e-20')
    assert fit_log_slope(rows[:1]) is None


@pytest.mark.parametrize('D', [0, 2, 4])
@pytest.mark.parametrize('N', [4, 8, 16])
def test_periodic_real_optimal_depth(periodic_real, D, N):
    # cosh(a) - (D/2 + 1) N a is smallest where sinh(a) = (D + 2) N / 2
    optimum = periodic_real.optimized_bound(D, N)
    with mpmath.workprec(256):
        assert abs(optimum.a_opt - mpmath.asinh(mpmath.mpf((D + 2) * N) / 2)) \
            < mpmath.mpf('1e-8')
        ratio = mpmath.exp(optimum.a_opt) / ((D + 2) * N)
        assert abs(ratio - 1) < mpmath.mpf('0.02')


@pytest.mark.parametrize('builder, D, param', [
    (example_periodic_complex, 2, 6),
    (example_realline_gaussian, 2, Fraction(1)),
])
def test_doubling_precision_keeps_the_value(builder, D, param):
    case = builder(precision=PRECISION)
    low = case.approximate(D, param).value
    high = case.rebuild(256).approximate(D, param).value
    bound = case.optimized_bound(D, param).bound
    with mpmath.workprec(256):
        difference = abs(high - low)
        assert difference < mpmath.ldexp(1, -100)
        assert difference < bound
