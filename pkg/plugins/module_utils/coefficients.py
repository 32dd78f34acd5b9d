# -*- coding: utf-8 -*-

# Copyright (c) 2024 Numerics Ansible SIG
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

"""Exact rational coefficient families of the derivative corrected rules.

A-type coefficients correct integrands analytic in a half-plane, B-type
coefficients integrands analytic in a strip. Everything here is computed
with :class:`fractions.Fraction`; conversion to mpmath happens only in
:meth:`CoeffSet.mp_values`.
"""

import logging
import math
from fractions import Fraction
from functools import reduce

from ansible_collections.numerics.quadrature.plugins.module_utils.quadrature import (
    DEFAULT_MAX_ORDER,
    DEFAULT_PRECISION,
    BAILEY,
    PERIODIC_HALFPLANE,
    PERIODIC_STRIP,
    DomainError,
    SingularSystemError,
    check_precision,
)
from ansible_collections.numerics.quadrature.plugins.module_utils.output import (
    format_decimal,
    format_exact,
    rational_to_json,
)

try:
    import gmpy2
    HAS_GMPY2 = True
except ImportError:
    HAS_GMPY2 = False

LOG = logging.getLogger(__name__)

FAMILY_A = 'A'
FAMILY_B = 'B'
FAMILY_G = 'G'
FAMILY_BAILEY = 'bailey'
FAMILY_UNIT = 'unit'

Rational = Fraction


def _big(value):
    if HAS_GMPY2:
        return gmpy2.mpz(value)
    return int(value)


class ComplexRational(object):
    """Exact complex number with rational parts."""

    __slots__ = ('re', 'im')

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def i_power(cls, k):
        return cls(*((1, 0), (0, 1), (-1, 0), (0, -1))[k % 4])

    @staticmethod
    def _coerce(other):
        if isinstance(other, ComplexRational):
            return other
        if isinstance(other, (int, Fraction)):
            return ComplexRational(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return ComplexRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return ComplexRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return ComplexRational(self.re * other.re - self.im * other.im,
                               self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return ComplexRational(self.re / other, self.im / other)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        norm = other.re * other.re + other.im * other.im
        num = self * ComplexRational(other.re, -other.im)
        return ComplexRational(num.re / norm, num.im / norm)

    def __neg__(self):
        return ComplexRational(-self.re, -self.im)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return 'ComplexRational({0!r}, {1!r})'.format(self.re, self.im)

    def __str__(self):
        return format_exact(self.re, self.im)

    def is_real(self):
        return self.im == 0

    def is_imaginary(self):
        return self.re == 0

    def to_mp(self):
        import mpmath
        re = mpmath.mpf(self.re.numerator) / self.re.denominator
        if self.im == 0:
            return mpmath.mpc(re, 0)
        return mpmath.mpc(re, mpmath.mpf(self.im.numerator) / self.im.denominator)


class CoeffSet(object):
    """Coefficient vector C_0..C_D of one rule family and order.

    `values` hold Fractions (real families) or ComplexRationals (A family).
    `theorem` records which error theorem the set was designed for and
    `stencil` the Hermite stencil half-width for the G family.
    """

    def __init__(self, family, order, values, theorem=None, stencil=None,
                 provenance=None):
        if len(values) != order + 1:
            raise DomainError(
                "Coefficient set of order {0} needs {1} values, got {2}"
                .format(order, order + 1, len(values)))
        self.family = family
        self.order = order
        self.values = list(values)
        self.theorem = theorem
        self.stencil = stencil
        self.provenance = provenance

    def __len__(self):
        return len(self.values)

    def __getitem__(self, k):
        return self.values[k]

    def __iter__(self):
        return iter(self.values)

    def __eq__(self, other):
        if not isinstance(other, CoeffSet):
            return NotImplemented
        return (self.family, self.order, self.values) == \
            (other.family, other.order, other.values)

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __repr__(self):
        return 'CoeffSet({0!r}, D={1}, [{2}])'.format(
            self.family, self.order, ', '.join(str(v) for v in self.values))

    def is_complex(self):
        return any(isinstance(v, ComplexRational) and not v.is_real()
                   for v in self.values)

    def mp_values(self):
        """Values as mpmath numbers at the current working precision."""
        import mpmath
        result = []
        for value in self.values:
            if isinstance(value, ComplexRational):
                result.append(value.to_mp())
            else:
                value = Fraction(value)
                result.append(mpmath.mpf(value.numerator) / value.denominator)
        return result

    def to_dict(self, digits=17):
        values = []
        for k, value in enumerate(self.values):
            if isinstance(value, ComplexRational):
                re, im = value.re, value.im
                exact = {'re': rational_to_json(re), 'im': rational_to_json(im)}
            else:
                re, im = Fraction(value), Fraction(0)
                exact = rational_to_json(re)
            values.append(dict(
                k=k,
                value=exact,
                exact=format_exact(re, im),
                decimal_re=format_decimal(re, digits),
                decimal_im=format_decimal(im, digits),
            ))
        return dict(
            family=self.family,
            D=self.order,
            N=self.stencil,
            theorem=self.theorem,
            provenance=self.provenance,
            precision=digits,
            values=values,
        )


def _check_order(D, minimum, max_order, name='D'):
    if not isinstance(D, int) or isinstance(D, bool):
        raise DomainError("{0} must be an integer, got {1!r}".format(name, D))
    if D < minimum:
        raise DomainError(
            "{0} must be at least {1}, got {2}".format(name, minimum, D))
    if max_order is not None and D > max_order:
        raise DomainError(
            "{0}={1} exceeds the configured maximum order {2}"
            .format(name, D, max_order))


def _check_even(D):
    if D % 2:
        raise DomainError(
            "Strip coefficients are only defined for even D, got {0}".format(D))


def stirling_row(n):
    """Signed Stirling numbers of the first kind s(n, 0..n)."""
    _check_order(n, 0, None, 'n')
    row = [1]
    for m in range(n):
        row = [(row[k - 1] if k >= 1 else 0) - (m * row[k] if k <= m else 0)
               for k in range(m + 2)]
    return row


def stirling_first(n, k):
    _check_order(n, 0, None, 'n')
    if not isinstance(k, int) or k < 0 or k > n:
        raise DomainError(
            "Stirling number s({0}, {1}) needs 0 <= k <= n".format(n, k))
    return stirling_row(n)[k]


def unit_coeffs():
    return CoeffSet(FAMILY_UNIT, 0, [Fraction(1)], provenance='trapezoid')


def coeff_A(D, max_order=DEFAULT_MAX_ORDER):
    """Half-plane coefficients A_{k,D}, k = 0..D, from Stirling numbers.

    i^k A_{k,D} = (-1)^D / D! * s(D+1, k+1).
    """
    _check_order(D, 1, max_order)
    row = stirling_row(D + 1)
    scale = Fraction((-1) ** D, math.factorial(D))
    values = [ComplexRational.i_power(-k) * (scale * row[k + 1])
              for k in range(D + 1)]
    return CoeffSet(FAMILY_A, D, values, theorem=PERIODIC_HALFPLANE,
                    provenance='stirling')


def coeff_A_recurrence(D, max_order=DEFAULT_MAX_ORDER):
    _check_order(D, 1, max_order)
    # r[k] = i^k A_{k,d}
    r = [Fraction(1)]
    for d in range(1, D + 1):
        r = [(r[k] if k < d else 0) - (r[k - 1] / d if k >= 1 else 0)
             for k in range(d + 1)]
    values = [ComplexRational.i_power(-k) * r[k] for k in range(D + 1)]
    return CoeffSet(FAMILY_A, D, values, theorem=PERIODIC_HALFPLANE,
                    provenance='recurrence')


def coeff_B(D, max_order=DEFAULT_MAX_ORDER):
    """Strip coefficients B_{k,D}, k = 0..D, by the recurrence in D.

    B_{2m,D} = B_{2m,D-2} + (2/D)^2 B_{2m-2,D-2}; odd entries are zero.
    """
    _check_order(D, 2, max_order)
    _check_even(D)
    b = [Fraction(1)]
    for d in range(2, D + 1, 2):
        f = Fraction(2, d) ** 2
        b = [(b[m] if m < len(b) else 0) + (f * b[m - 1] if m >= 1 else 0)
             for m in range(d // 2 + 1)]
    values = [Fraction(0)] * (D + 1)
    for m, value in enumerate(b):
        values[2 * m] = value
    return CoeffSet(FAMILY_B, D, values, theorem=PERIODIC_STRIP,
                    provenance='recurrence')


def coeff_B_vandermonde(D, max_order=DEFAULT_MAX_ORDER):
    """B_{k,D} from the Vandermonde system sum_m (-1)^m l^2m B_2m = -1."""
    _check_order(D, 2, max_order)
    _check_even(D)
    half = D // 2
    matrix = [[(-1) ** m * ell ** (2 * m) for m in range(1, half + 1)]
              for ell in range(1, half + 1)]
    solution = solve_rational(matrix, [-1] * half)
    values = [Fraction(0)] * (D + 1)
    values[0] = Fraction(1)
    for m, value in enumerate(solution, start=1):
        values[2 * m] = value
    return CoeffSet(FAMILY_B, D, values, theorem=PERIODIC_STRIP,
                    provenance='vandermonde')


def coeff_B_limit(m, precision=DEFAULT_PRECISION):
    """Large-D limit pi^2m / (2m+1)! of B_{2m,D}."""
    import mpmath
    _check_order(m, 0, None, 'm')
    with mpmath.workprec(check_precision(precision)):
        return mpmath.pi ** (2 * m) / mpmath.factorial(2 * m + 1)


def coeff_bailey(m):
    """Single correction set B_0 = 1, B_2m = (-1)^(m+1)."""
    _check_order(m, 1, None, 'm')
    values = [Fraction(0)] * (2 * m + 1)
    values[0] = Fraction(1)
    values[2 * m] = Fraction((-1) ** (m + 1))
    return CoeffSet(FAMILY_BAILEY, 2 * m, values, theorem=BAILEY,
                    provenance='bailey')


def E_poly(ell, D):
    """E_{l,D} = prod_{k=1}^{D} (1 - l/k)."""
    _check_order(ell, 0, None, 'ell')
    _check_order(D, 0, None)
    result = Fraction(1)
    for k in range(1, D + 1):
        result *= 1 - Fraction(ell, k)
    return result


def E_binomial(ell, D):
    _check_order(D, 0, None)
    if ell <= D:
        raise DomainError(
            "Binomial form of E needs ell > D, got ell={0}, D={1}".format(ell, D))
    return Fraction((-1) ** D * math.comb(ell - 1, D))


def F_poly(ell, D):
    """F_{l,D} = prod_{m=1}^{D/2} (1 - (l/m)^2)."""
    _check_order(ell, 0, None, 'ell')
    _check_order(D, 0, None)
    _check_even(D)
    result = Fraction(1)
    for m in range(1, D // 2 + 1):
        result *= 1 - Fraction(ell, m) ** 2
    return result


def F_binomial(ell, D):
    _check_order(D, 0, None)
    _check_even(D)
    half = D // 2
    if ell <= half:
        raise DomainError(
            "Binomial form of F needs ell > D/2, got ell={0}, D={1}".format(ell, D))
    return Fraction((-1) ** half * math.comb(ell + half, half)
                    * math.comb(ell - 1, half))


def _lcm(a, b):
    return a * b // math.gcd(a, b)


def _integer_rows(matrix, rhs):
    rows = []
    for row, b in zip(matrix, rhs):
        entries = [Fraction(x) for x in row] + [Fraction(b)]
        scale = reduce(_lcm, (x.denominator for x in entries), 1)
        rows.append([_big(x.numerator * (scale // x.denominator))
                     for x in entries])
    return rows


def solve_rational_scaled(matrix, rhs):
    """Solves matrix * x = rhs exactly by fraction-free elimination.

    Returns ``(numerators, denominator)`` with x_i = numerators[i] /
    denominator; both are integers and the fraction is not reduced.
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix) or len(rhs) != n:
        raise DomainError("solve_rational needs a square system")
    if n == 0:
        return [], 1
    M = _integer_rows(matrix, rhs)
    prev = _big(1)
    for k in range(n):
        pivot = max(range(k, n), key=lambda r: abs(M[r][k]))
        if M[pivot][k] == 0:
            raise SingularSystemError(
                "Exact elimination found no pivot in column {0} of a"
                " {1}x{1} system".format(k, n),
                extra_data=dict(size=n, column=k))
        if pivot != k:
            M[k], M[pivot] = M[pivot], M[k]
        Mk = M[k]
        pk = Mk[k]
        for i in range(k + 1, n):
            Mi = M[i]
            f = Mi[k]
            for j in range(k + 1, n + 1):
                Mi[j] = (Mi[j] * pk - f * Mk[j]) // prev
            Mi[k] = 0
        prev = pk
    det = M[n - 1][n - 1]
    X = [0] * n
    for i in range(n - 1, -1, -1):
        acc = M[i][n] * det
        for j in range(i + 1, n):
            acc -= M[i][j] * X[j]
        X[i] = acc // M[i][i]
    LOG.debug("Solved %dx%d system exactly, determinant has %d bits",
              n, n, int(abs(det)).bit_length())
    return [int(x) for x in X], int(det)


def solve_rational(matrix, rhs):
    numerators, denominator = solve_rational_scaled(matrix, rhs)
    return [Fraction(x, denominator) for x in numerators]
