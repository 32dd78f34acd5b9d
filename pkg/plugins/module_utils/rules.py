# -*- coding: utf-8 -*-

# Copyright (c) 2024 Numerics Ansible SIG
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

"""Derivative corrected trapezoidal rules.

Periodic rule on [0, 2 pi) with nodes 2 pi j / N, j = 1..N:

    I_{N,D} = 2 pi / N * sum_j sum_{k=0}^{D} N^{-k} C_k v^(k)(2 pi j / N)

Real-line rule with step h:

    I_{h,D} = h * sum_j sum_{k=0}^{D} (h / 2 pi)^k C_k w^(k)(j h)
"""

import collections
import logging

import mpmath

from ansible_collections.numerics.quadrature.plugins.module_utils.quadrature import (
    DEFAULT_PRECISION,
    ConfigurationError,
    DomainError,
    OracleError,
    QuadratureError,
    TruncationError,
    check_precision,
    to_mpf,
)
from ansible_collections.numerics.quadrature.plugins.module_utils.coefficients import (
    coeff_bailey,
    unit_coeffs,
)

LOG = logging.getLogger(__name__)

PERIODIC = 'periodic'
REAL_LINE = 'real-line'
KINDS = (PERIODIC, REAL_LINE)

TRUNCATION_FIXED = 'fixed'
TRUNCATION_ADAPTIVE = 'adaptive'
TRUNCATION_EXTRAPOLATED = 'extrapolated'
TRUNCATION_MODES = (TRUNCATION_FIXED, TRUNCATION_ADAPTIVE,
                    TRUNCATION_EXTRAPOLATED)

# Extra bits used while synthesizing Fourier series
SERIES_GUARD_BITS = 16

TruncatedSum = collections.namedtuple('TruncatedSum', ['value', 'lower', 'upper'])


class Integrand(object):
    """A function with a derivative oracle.

    `function(x, k)` returns the k-th derivative at x for 0 <= k <= max_order.
    The optional `batch(x, order)` returns all derivatives 0..order at
    once. Any exception raised by the oracle, other than a
    QuadratureError, is reported as an OracleError carrying the point and
    the order.
    """

    def __init__(self, function, max_order, kind=PERIODIC, name=None,
                 concurrent_safe=False, batch=None):
        if kind not in KINDS:
            raise DomainError(
                "Integrand kind must be one of {0}, got {1!r}"
                .format(', '.join(KINDS), kind))
        if not isinstance(max_order, int) or max_order < 0:
            raise DomainError("max_order must be a non-negative integer")
        self.function = function
        self.max_order = max_order
        self.kind = kind
        self.name = name or getattr(function, '__name__', 'integrand')
        self.concurrent_safe = concurrent_safe
        self.batch = batch

    def __repr__(self):
        return 'Integrand({0!r}, kind={1}, max_order={2})'.format(
            self.name, self.kind, self.max_order)

    def check_order(self, order):
        if order < 0 or order > self.max_order:
            raise DomainError(
                "Derivative order {0} outside 0..{1} supported by {2}"
                .format(order, self.max_order, self.name))

    def _oracle_failure(self, x, order, error):
        return OracleError(
            "Derivative oracle of {0} failed at x={1} for order {2}: {3}"
            .format(self.name, mpmath.nstr(x, 15), order, error),
            extra_data=dict(integrand=self.name, point=mpmath.nstr(x, 30),
                            order=order))

    def __call__(self, x, k=0):
        self.check_order(k)
        try:
            return self.function(x, k)
        except QuadratureError:
            raise
        except Exception as e:
            raise self._oracle_failure(x, k, e)

    def derivatives(self, x, order):
        """All derivatives 0..order at x."""
        self.check_order(order)
        if self.batch is None:
            return [self(x, k) for k in range(order + 1)]
        try:
            return list(self.batch(x, order))
        except QuadratureError:
            raise
        except Exception as e:
            raise self._oracle_failure(x, order, e)


class FourierSeriesIntegrand(Integrand):
    """Periodic integrand sum_l c_l e^{i l theta} given by finitely many terms.

    Derivative weights c_l (i l)^k are formed once, at the working precision
    in effect when the integrand is built.
    """

    def __init__(self, terms, max_order, name='fourier-series'):
        super(FourierSeriesIntegrand, self).__init__(
            self._evaluate, max_order, PERIODIC, name, concurrent_safe=True)
        combined = {}
        for ell, coefficient in terms:
            if not isinstance(ell, int):
                raise DomainError(
                    "Fourier frequencies must be integers, got {0!r}".format(ell))
            combined[ell] = combined.get(ell, 0) + mpmath.mpmathify(coefficient)
        self.terms = sorted(combined.items())
        self.weights = []
        for ell, coefficient in self.terms:
            factor = mpmath.mpc(0, ell)
            row = [mpmath.mpc(coefficient)]
            for k in range(max_order):
                row.append(row[-1] * factor)
            self.weights.append((ell, row))

    def __len__(self):
        return len(self.terms)

    def _evaluate(self, theta, k):
        return self._series(theta, k)[k]

    def _phases(self, theta):
        """e^{i l theta} for every frequency, by stepping through sorted l."""
        phases = {}
        z = mpmath.expj(theta)
        for sign, frequencies in ((1, [ell for ell, _ in self.terms if ell >= 0]),
                                  (-1, [-ell for ell, _ in reversed(self.terms)
                                        if ell < 0])):
            step = z if sign > 0 else 1 / z
            current, position = mpmath.mpc(1), 0
            for ell in frequencies:
                if ell - position == 1:
                    current *= step
                elif ell != position:
                    current *= step ** (ell - position)
                position = ell
                phases[sign * ell] = current
        return phases

    def _series(self, theta, order):
        prec = mpmath.mp.prec
        with mpmath.workprec(prec + SERIES_GUARD_BITS):
            phases = self._phases(theta)
            sums = [mpmath.mpc(0)] * (order + 1)
            for ell, row in self.weights:
                phase = phases[ell]
                for k in range(order + 1):
                    sums[k] += row[k] * phase
        with mpmath.workprec(prec):
            return [+s for s in sums]

    def derivatives(self, theta, order):
        self.check_order(order)
        try:
            return self._series(theta, order)
        except QuadratureError:
            raise
        except Exception as e:
            raise self._oracle_failure(theta, order, e)


class TruncationPolicy(object):
    """How the doubly infinite real-line node sum is truncated.

    fixed: nodes with |x| <= window.
    adaptive: each side stops after `consecutive_below` successive node
    contributions fall below `tail_tolerance`, within `max_terms` nodes.
    extrapolated: Richardson extrapolation of the partial sums, for
    integrands whose node values decay algebraically.
    """

    def __init__(self, mode=TRUNCATION_ADAPTIVE, window=None,
                 tail_tolerance='1e-30', consecutive_below=8, max_terms=100000):
        if mode not in TRUNCATION_MODES:
            raise ConfigurationError(
                "Truncation mode must be one of {0}, got {1!r}"
                .format(', '.join(TRUNCATION_MODES), mode))
        if mode == TRUNCATION_FIXED and (window is None or not to_mpf(window) > 0):
            raise ConfigurationError("Fixed truncation needs a positive window")
        if not isinstance(consecutive_below, int) or consecutive_below < 1:
            raise ConfigurationError("consecutive_below must be a positive integer")
        if not isinstance(max_terms, int) or max_terms < 1:
            raise ConfigurationError("max_terms must be a positive integer")
        self.mode = mode
        self.window = window
        self.tail_tolerance = tail_tolerance
        self.consecutive_below = consecutive_below
        self.max_terms = max_terms

    def __repr__(self):
        return ('TruncationPolicy(mode={0!r}, window={1!r}, tail_tolerance={2!r},'
                ' consecutive_below={3})'.format(self.mode, self.window,
                                                 self.tail_tolerance,
                                                 self.consecutive_below))


def _check_rule(integrand, kind, D, coeffs):
    if integrand.kind != kind:
        raise DomainError(
            "{0} rule needs a {0} integrand, got {1}".format(kind, integrand.kind))
    if not isinstance(D, int) or D < 0:
        raise DomainError("D must be a non-negative integer, got %r" % (D,))
    if integrand.max_order < D:
        raise DomainError(
            "Integrand {0} supplies derivatives up to order {1}, D={2} requested"
            .format(integrand.name, integrand.max_order, D))
    if coeffs is None:
        if D:
            raise DomainError("Coefficients are required for D={0}".format(D))
        coeffs = unit_coeffs()
    if coeffs.order != D:
        raise DomainError(
            "Coefficient set has order {0}, rule order is {1}".format(coeffs.order, D))
    return coeffs


def _weights(values, scale):
    """[(k, C_k * scale^k)] for the non-zero coefficients with k >= 1."""
    weights = []
    power = mpmath.mpf(1)
    for k, value in enumerate(values):
        if k:
            power *= scale
            if value != 0:
                weights.append((k, value * power))
    return weights


def _node_value(derivs, first, weights):
    value = derivs[0] if first is None else first * derivs[0]
    for k, weight in weights:
        value += weight * derivs[k]
    return value


def trapezoid_periodic(v, N, D, coeffs=None, precision=DEFAULT_PRECISION):
    """The corrected periodic rule I_{N,D}; returns an mpc."""
    precision = check_precision(precision)
    if not isinstance(N, int) or N < 1:
        raise DomainError("N must be a positive integer, got %r" % (N,))
    coeffs = _check_rule(v, PERIODIC, D, coeffs)
    with mpmath.workprec(precision):
        values = coeffs.mp_values()
        first = None if values[0] == 1 else values[0]
        weights = _weights(values, 1 / mpmath.mpf(N))
        total = mpmath.mpc(0)
        for j in range(1, N + 1):
            theta = 2 * mpmath.pi * j / N
            total += _node_value(v.derivatives(theta, D), first, weights)
        return 2 * mpmath.pi / N * total


def trapezoid_realline(w, h, D, coeffs=None, trunc=None,
                       precision=DEFAULT_PRECISION):
    """The corrected real-line rule I_{h,D}.

    Returns a TruncatedSum with the node index window actually summed;
    the window bounds are None when the sum was extrapolated.
    """
    precision = check_precision(precision)
    coeffs = _check_rule(w, REAL_LINE, D, coeffs)
    if D % 2:
        raise DomainError("Real-line rules need even D, got {0}".format(D))
    if coeffs.is_complex():
        raise DomainError("Real-line rules need real coefficients")
    trunc = trunc or TruncationPolicy()
    with mpmath.workprec(precision):
        h = to_mpf(h)
        if not h > 0:
            raise DomainError("Step h must be positive")
        values = coeffs.mp_values()
        first = None if values[0] == 1 else values[0]
        weights = _weights(values, h / (2 * mpmath.pi))

        def node(j):
            return _node_value(w.derivatives(j * h, D), first, weights)

        if trunc.mode == TRUNCATION_EXTRAPOLATED:
            total = mpmath.nsum(lambda j: node(int(j)), [-mpmath.inf, mpmath.inf],
                                method='richardson')
            LOG.debug("Extrapolated real-line sum for %s at h=%s",
                      w.name, mpmath.nstr(h, 10))
            return TruncatedSum(h * total, None, None)

        if trunc.mode == TRUNCATION_FIXED:
            J = int(mpmath.floor(to_mpf(trunc.window) / h))
            positive = [node(j) for j in range(1, J + 1)]
            negative = [node(-j) for j in range(1, J + 1)]
        else:
            tolerance = to_mpf(trunc.tail_tolerance)
            positive = _adaptive_side(node, 1, tolerance, trunc, w)
            negative = _adaptive_side(node, -1, tolerance, trunc, w)

        total = mpmath.mpc(node(0))
        common = min(len(positive), len(negative))
        for j in range(common):
            total += positive[j] + negative[j]
        for value in positive[common:] + negative[common:]:
            total += value
        LOG.debug("Real-line sum for %s used nodes %d..%d",
                  w.name, -len(negative), len(positive))
        return TruncatedSum(h * total, -len(negative), len(positive))


def _adaptive_side(node, sign, tolerance, trunc, w):
    values = []
    below = 0
    j = 0
    while below < trunc.consecutive_below:
        j += 1
        if j > trunc.max_terms:
            raise TruncationError(
                "Real-line sum of {0} did not decay below {1} within {2} nodes"
                .format(w.name, mpmath.nstr(tolerance, 5), trunc.max_terms),
                extra_data=dict(side=sign, window=trunc.max_terms,
                                last_terms=','.join(mpmath.nstr(abs(v), 5)
                                                    for v in values[-3:])))
        value = node(sign * j)
        values.append(value)
        below = below + 1 if abs(value) < tolerance else 0
    return values


def bailey_corrected_trapezoid(w, h, m, trunc=None, precision=DEFAULT_PRECISION):
    """Trapezoid plus the single derivative correction of order 2m."""
    if not isinstance(m, int) or m < 1:
        raise DomainError("Correction order m must be >= 1, got %r" % (m,))
    coeffs = coeff_bailey(m)
    return trapezoid_realline(w, h, 2 * m, coeffs, trunc, precision)
