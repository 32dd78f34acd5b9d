# -*- coding: utf-8 -*-

# Copyright (c) 2024 Numerics Ansible SIG
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

import math
from fractions import Fraction

import mpmath
import pytest

from ansible_collections.numerics.quadrature.plugins.module_utils import coefficients
from ansible_collections.numerics.quadrature.plugins.module_utils.coefficients import (
    FAMILY_A,
    CoeffSet,
    ComplexRational,
    E_binomial,
    E_poly,
    F_binomial,
    F_poly,
    coeff_A,
    coeff_A_recurrence,
    coeff_B,
    coeff_B_limit,
    coeff_B_vandermonde,
    coeff_bailey,
    solve_rational,
    solve_rational_scaled,
    stirling_first,
    stirling_row,
    unit_coeffs,
)
from ansible_collections.numerics.quadrature.plugins.module_utils.quadrature import (
    DomainError,
    SingularSystemError,
)

I = ComplexRational(0, 1)


def test_halfplane_table():
    assert coeff_A(1).values == [1, I]
    assert coeff_A(2).values == [1, Fraction(3, 2) * I, Fraction(-1, 2)]
    assert coeff_A(3).values == [1, Fraction(11, 6) * I, -1, Fraction(-1, 6) * I]


def test_halfplane_metadata():
    coeffs = coeff_A(3)
    assert coeffs.family == FAMILY_A
    assert coeffs.theorem == 'periodic-halfplane'
    assert coeffs.is_complex()
    assert str(coeffs[1]) == '11i/6'


def test_strip_table():
    assert coeff_B(2).values == [1, 0, 1]
    assert coeff_B(4).values == [1, 0, Fraction(5, 4), 0, Fraction(1, 4)]
    assert coeff_B(6).values == [1, 0, Fraction(49, 36), 0, Fraction(7, 18), 0,
                                 Fraction(1, 36)]


@pytest.mark.parametrize('D', range(1, 13))
def test_halfplane_routes_agree(D):
    assert coeff_A(D) == coeff_A_recurrence(D)


@pytest.mark.parametrize('D', range(2, 13, 2))
def test_strip_routes_agree(D):
    assert coeff_B(D) == coeff_B_vandermonde(D)


@pytest.mark.parametrize('D', range(1, 13))
def test_halfplane_nullifies_low_frequencies(D):
    coeffs = coeff_A(D)
    for ell in range(1, D + 1):
        total = ComplexRational(0)
        for k, value in enumerate(coeffs):
            total = total + value * ComplexRational.i_power(k) * ell ** k
        assert total == 0


@pytest.mark.parametrize('D', range(2, 13, 2))
def test_strip_nullifies_low_frequencies(D):
    coeffs = coeff_B(D)
    for ell in range(1, D // 2 + 1):
        total = sum((-1) ** m * coeffs[2 * m] * ell ** (2 * m)
                    for m in range(D // 2 + 1))
        assert total == 0


@pytest.mark.parametrize('D', range(2, 13, 2))
def test_strip_top_coefficient(D):
    assert coeff_B(D)[D] == Fraction(1, math.factorial(D // 2) ** 2)


@pytest.mark.parametrize('D', range(2, 13, 2))
def test_strip_matches_F_generating_polynomial(D):
    coeffs = coeff_B(D)
    for ell in range(D // 2 + 1, 3 * D + 1):
        total = sum((-1) ** m * coeffs[2 * m] * ell ** (2 * m)
                    for m in range(D // 2 + 1))
        assert total == F_poly(ell, D)


def test_stirling_numbers():
    assert stirling_row(4) == [0, -6, 11, -6, 1]
    assert stirling_first(4, 2) == 11
    assert stirling_first(0, 0) == 1
    with pytest.raises(DomainError):
        stirling_first(3, 4)


@pytest.mark.parametrize('D', range(0, 8))
def test_E_closed_form(D):
    for ell in range(1, D + 1):
        assert E_poly(ell, D) == 0
    for ell in range(D + 1, 3 * D + 2):
        assert E_poly(ell, D) == E_binomial(ell, D)


@pytest.mark.parametrize('D', range(0, 14, 2))
def test_F_closed_form(D):
    for ell in range(1, D // 2 + 1):
        assert F_poly(ell, D) == 0
    for ell in range(D // 2 + 1, 3 * D + 2):
        assert F_poly(ell, D) == F_binomial(ell, D)


@pytest.mark.parametrize('ell, D, expected', [(2, 2, -3), (3, 4, 10), (4, 6, -35)])
def test_F_first_nonzero(ell, D, expected):
    assert F_poly(ell, D) == expected
    assert F_binomial(ell, D) == (-1) ** (D // 2) * math.comb(D + 1, D // 2)


def test_binomial_forms_need_high_frequency():
    with pytest.raises(DomainError):
        E_binomial(2, 3)
    with pytest.raises(DomainError):
        F_binomial(1, 4)
    with pytest.raises(DomainError):
        F_poly(2, 3)


def test_large_order_limits():
    with mpmath.workprec(128):
        zeta2 = mpmath.pi ** 2 / 6
        assert abs(coeff_B_limit(1, 128) - zeta2) < mpmath.mpf(10) ** -35
        limit4 = coeff_B_limit(2, 128)
        assert abs(limit4 - mpmath.pi ** 4 / 120) < mpmath.mpf(10) ** -35
        previous = mpmath.mpf(0)
        for D in range(2, 41, 2):
            coeffs = coeff_B(D)
            b2 = mpmath.mpf(coeffs[2].numerator) / coeffs[2].denominator
            assert abs(b2 - zeta2) <= mpmath.mpf(2) / D
            if D >= 4:
                b4 = mpmath.mpf(coeffs[4].numerator) / coeffs[4].denominator
                assert previous < b4 < limit4
                previous = b4


@pytest.mark.parametrize('D, minimum', [(0, 'A'), (3, 'B'), (42, 'B'), (-2, 'B')])
def test_invalid_orders(D, minimum):
    builder = coeff_A if minimum == 'A' else coeff_B
    with pytest.raises(DomainError):
        builder(D)


def test_bailey_sets():
    assert coeff_bailey(1).values == [1, 0, 1]
    assert coeff_bailey(2).values == [1, 0, 0, 0, -1]
    assert coeff_bailey(3)[6] == 1
    with pytest.raises(DomainError):
        coeff_bailey(0)


def test_unit_coeffs():
    unit = unit_coeffs()
    assert unit.order == 0
    assert unit.values == [1]


def test_coeff_set_length_checked():
    with pytest.raises(DomainError):
        CoeffSet('B', 2, [1, 0])


def test_coeff_set_export():
    data = coeff_A(2).to_dict(digits=5)
    assert data['family'] == 'A'
    assert data['D'] == 2
    first = data['values'][1]
    assert first['value'] == {'re': {'num': '0', 'den': '1'},
                              'im': {'num': '3', 'den': '2'}}
    assert first['exact'] == '3i/2'
    assert first['decimal_im'] == '1.5000E+0'
    strip = coeff_B(4).to_dict()
    assert strip['values'][2]['value'] == {'num': '5', 'den': '4'}


def test_mp_values_follow_precision():
    with mpmath.workprec(200):
        values = coeff_B(6).mp_values()
        assert abs(values[2] - mpmath.mpf(49) / 36) < mpmath.mpf(2) ** -195
    with mpmath.workprec(64):
        values = coeff_A(1).mp_values()
        assert values[1] == mpmath.mpc(0, 1)


def test_complex_rational_arithmetic():
    a = ComplexRational(1, 2)
    b = ComplexRational(3, -1)
    assert a * b == ComplexRational(5, 5)
    assert (a * b) / b == a
    assert a + 1 == ComplexRational(2, 2)
    assert 1 - a == ComplexRational(0, -2)
    assert -a == ComplexRational(-1, -2)
    assert ComplexRational.i_power(-1) == ComplexRational(0, -1)
    assert ComplexRational.i_power(6) == -1


def test_solve_rational():
    assert solve_rational([[2, 1], [1, 3]], [3, 5]) == [Fraction(4, 5), Fraction(7, 5)]
    rational = [[Fraction(1, 2), Fraction(1, 3)], [Fraction(1, 4), 1]]
    x = solve_rational(rational, [1, 2])
    assert [sum(a * b for a, b in zip(row, x)) for row in rational] == [1, 2]


def test_solve_rational_needs_pivoting():
    assert solve_rational([[0, 1], [1, 0]], [2, 3]) == [3, 2]


def test_solve_rational_scaled_returns_integers():
    numerators, denominator = solve_rational_scaled([[2, 1], [1, 3]], [3, 5])
    assert all(isinstance(x, int) for x in numerators)
    assert Fraction(numerators[0], denominator) == Fraction(4, 5)


def test_solve_rational_without_gmpy2(monkeypatch):
    monkeypatch.setattr(coefficients, 'HAS_GMPY2', False)
    assert solve_rational([[4, -2], [1, 1]], [2, 3]) == [Fraction(4, 3), Fraction(5, 3)]


def test_solve_rational_singular():
    with pytest.raises(SingularSystemError) as ctx:
        solve_rational([[1, 2], [2, 4]], [1, 2])
    assert ctx.value.extra_data == dict(size=2, column=1)
    assert ctx.value.exit_code == 3


def test_solve_rational_shape():
    with pytest.raises(DomainError):
        solve_rational([[1, 2]], [1])
