# -*- coding: utf-8 -*-

# Copyright (c) 2024 Numerics Ansible SIG
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

"""Derivative weights G_k from Taylor truncation and Hermite interpolation.

The composite rule reads h * sum_j sum_k G_k h^k w^(k)(jh). The Hermite
weights come from the polynomial of degree P = 2N(D+1) - 1 matching
values and derivatives up to order D at the 2N nodes +-(2i-1)h/2,
i = 1..N, integrated over the central cell [-h/2, h/2].
"""

import logging
import math
from fractions import Fraction

import mpmath

from ansible_collections.numerics.quadrature.plugins.module_utils.quadrature import (
    DEFAULT_MAX_SYSTEM,
    DEFAULT_PRECISION,
    DomainError,
    QuadratureError,
    check_precision,
)
from ansible_collections.numerics.quadrature.plugins.module_utils.coefficients import (
    FAMILY_G,
    CoeffSet,
    coeff_B,
    solve_rational,
    solve_rational_scaled,
)

LOG = logging.getLogger(__name__)

METHOD_REDUCED = 'reduced'
METHOD_FULL = 'full'
METHODS = (METHOD_REDUCED, METHOD_FULL)

TABLE_N_VALUES = (1, 2, 3, 4, 6, 8, 10, 15, 20)


class HermiteSolveSpec(object):

    def __init__(self, N, D, max_system=DEFAULT_MAX_SYSTEM):
        if not isinstance(N, int) or N < 1:
            raise DomainError("Stencil half-width N must be >= 1, got %r" % (N,))
        if not isinstance(D, int) or D < 0:
            raise DomainError("D must be a non-negative integer, got %r" % (D,))
        if max_system is not None and N * (D + 1) > max_system:
            raise DomainError(
                "Hermite system of size N(D+1)={0} exceeds the configured"
                " maximum {1}".format(N * (D + 1), max_system),
                extra_data=dict(N=N, D=D, max_system=max_system))
        self.N = N
        self.D = D

    @property
    def size(self):
        return self.N * (self.D + 1)

    @property
    def degree(self):
        return 2 * self.N * (self.D + 1) - 1

    def __repr__(self):
        return 'HermiteSolveSpec(N={0}, D={1})'.format(self.N, self.D)


def _falling(p, k):
    """p! / (p-k)!, zero when k > p."""
    if k > p:
        return 0
    return math.perm(p, k)


def _reduced_system(spec):
    # Even moments only, unknowns g+_{ik} at index i*(D+1)+k. Rows are
    # scaled by (p+1) so the right-hand side is 1.
    N, D = spec.N, spec.D
    matrix, rhs = [], []
    for p in range(0, spec.degree + 1, 2):
        row = []
        for i in range(1, N + 1):
            for k in range(D + 1):
                row.append(2 * (p + 1) * _falling(p, k)
                           * (2 * i - 1) ** (p - k) * 2 ** k if k <= p else 0)
        matrix.append(row)
        rhs.append(1)
    return matrix, rhs


def _full_system(spec):
    # All moments, unknowns g-_{ik} then g+_{ik}.
    N, D = spec.N, spec.D
    matrix, rhs = [], []
    for p in range(spec.degree + 1):
        minus, plus = [], []
        for i in range(1, N + 1):
            for k in range(D + 1):
                base = _falling(p, k) * 2 ** k * (p + 1)
                plus.append(base * (2 * i - 1) ** (p - k) if k <= p else 0)
                minus.append(base * (1 - 2 * i) ** (p - k) if k <= p else 0)
        matrix.append(minus + plus)
        rhs.append(1 if p % 2 == 0 else 0)
    return matrix, rhs


def hermite_stencil(spec, method=METHOD_REDUCED):
    """Stencil weights g+_{ik}, i = 1..N, k = 0..D, as nested lists.

    With method `full` both g- and g+ are solved for and the parity
    relation g-_{ik} = (-1)^k g+_{ik} is checked.
    """
    if method not in METHODS:
        raise DomainError("Unknown Hermite method {0!r}".format(method))
    N, D = spec.N, spec.D
    if method == METHOD_REDUCED:
        matrix, rhs = _reduced_system(spec)
        plus = solve_rational(matrix, rhs)
    else:
        matrix, rhs = _full_system(spec)
        solution = solve_rational(matrix, rhs)
        half = spec.size
        minus, plus = solution[:half], solution[half:]
        for index, (gm, gp) in enumerate(zip(minus, plus)):
            if gm != (-1) ** (index % (D + 1)) * gp:
                raise QuadratureError(
                    "Hermite weights violate the parity relation at"
                    " i={0}, k={1}".format(index // (D + 1) + 1, index % (D + 1)),
                    extra_data=dict(N=N, D=D))
    return [plus[i * (D + 1):(i + 1) * (D + 1)] for i in range(N)]


def hermite_interp_coeffs(spec, method=METHOD_REDUCED):
    """Composite weights G_k = sum_i (g-_{ik} + g+_{ik}), k = 0..D."""
    N, D = spec.N, spec.D
    if method == METHOD_REDUCED:
        numerators, denominator = solve_rational_scaled(*_reduced_system(spec))
        values = []
        for k in range(D + 1):
            if k % 2:
                values.append(Fraction(0))
            else:
                total = sum(numerators[i * (D + 1) + k] for i in range(N))
                values.append(Fraction(2 * total, denominator))
    else:
        stencil = hermite_stencil(spec, method)
        values = [Fraction(0) if k % 2 else 2 * sum(row[k] for row in stencil)
                  for k in range(D + 1)]
    LOG.debug("Hermite weights for N=%d, D=%d: %s", N, D,
              ', '.join(str(v) for v in values))
    return CoeffSet(FAMILY_G, D, values, stencil=N, provenance='hermite')


def taylor_truncation_coeffs(D):
    """G_k = 1 / (2^k (k+1)!) for even k, 0 for odd k."""
    if not isinstance(D, int) or D < 0:
        raise DomainError("D must be a non-negative integer, got %r" % (D,))
    values = [Fraction(0) if k % 2 else Fraction(1, 2 ** k * math.factorial(k + 1))
              for k in range(D + 1)]
    return CoeffSet(FAMILY_G, D, values, provenance='taylor')


def g_limit_reference(D, precision=DEFAULT_PRECISION):
    """B_{k,D} / (2 pi)^k, the large-N limit of the Hermite weights."""
    coeffs = coeff_B(D, max_order=None)
    with mpmath.workprec(check_precision(precision)):
        scale = 2 * mpmath.pi
        return [mpmath.mpf(value.numerator) / value.denominator / scale ** k
                for k, value in enumerate(coeffs)]


def g_table(N_values, D, method=METHOD_REDUCED, max_system=DEFAULT_MAX_SYSTEM,
            precision=DEFAULT_PRECISION):
    """Hermite weights for every N followed by the limit row.

    Returns a list of (N, values) pairs; the limit row has N = None and
    mpmath values, the others Fractions.
    """
    rows = []
    for N in N_values:
        spec = HermiteSolveSpec(N, D, max_system)
        rows.append((N, hermite_interp_coeffs(spec, method).values))
    if D >= 2 and D % 2 == 0:
        rows.append((None, g_limit_reference(D, precision)))
    return rows
