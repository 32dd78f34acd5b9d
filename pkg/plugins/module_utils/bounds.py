# -*- coding: utf-8 -*-

# Copyright (c) 2024 Numerics Ansible SIG
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

"""Derivative-free error bounds of the corrected trapezoidal rules.

Every bound depends on the analyticity data (M, a), the rule parameter
(N for periodic rules, h on the real line) and the order D. The decay
parameter q is aN for periodic rules and 2*pi*a/h on the real line; all
strip bounds share the factor

    |sum_{l=D/2+1}^{D+1} (-1)^l C(D+1, l) e^{-lq}| / (1 - e^{-q})^{D+1}.

Values are mpmath numbers computed at the requested precision.
"""

import collections
import logging
import math

import mpmath

from ansible_collections.numerics.quadrature.plugins.module_utils.quadrature import (
    BAILEY,
    DEFAULT_PRECISION,
    PERIODIC_HALFPLANE,
    PERIODIC_STRIP,
    REALLINE_HALFPLANE,
    REALLINE_STRIP,
    THEOREMS,
    DomainError,
    TruncationError,
    check_precision,
    to_mpf,
    to_rational,
)
from ansible_collections.numerics.quadrature.plugins.module_utils.coefficients import (
    coeff_B,
    unit_coeffs,
)

LOG = logging.getLogger(__name__)

FORM_EXACT = 'exact'
FORM_ASYMPTOTIC = 'asymptotic'
FORM_POLYLOG = 'polylog'
FORMS = (FORM_EXACT, FORM_ASYMPTOTIC, FORM_POLYLOG)

STRIP_THEOREMS = (PERIODIC_STRIP, REALLINE_STRIP)
PERIODIC_THEOREMS = (PERIODIC_HALFPLANE, PERIODIC_STRIP)

DEFAULT_MAX_TERMS = 1000000

OptimizedBound = collections.namedtuple(
    'OptimizedBound', ['a_opt', 'bound', 'leading', 'shrunk'])


def _positive(value, name):
    if isinstance(value, str):
        value = to_rational(value)
    try:
        ok = value > 0
    except TypeError:
        ok = False
    if not ok:
        raise DomainError(
            "{0} must be a positive real number, got {1!r}".format(name, value))
    return value


class BoundSpec(object):
    """Analyticity and rule parameters from which a bound is computed."""

    def __init__(self, theorem, M, a, D=0, N=None, h=None):
        if theorem not in THEOREMS:
            raise DomainError(
                "Unknown theorem {0!r}, expected one of {1}"
                .format(theorem, ', '.join(THEOREMS)))
        if not isinstance(D, int) or D < 0:
            raise DomainError("D must be a non-negative integer, got %r" % (D,))
        if theorem in STRIP_THEOREMS and D % 2:
            raise DomainError(
                "Strip bounds need even D, got {0}".format(D))
        self.theorem = theorem
        self.M = _positive(M, 'M')
        self.a = _positive(a, 'a')
        self.D = D
        if theorem in PERIODIC_THEOREMS:
            if not isinstance(N, int) or N < 1:
                raise DomainError(
                    "Periodic bounds need a positive integer N, got %r" % (N,))
            self.N, self.h = N, None
        else:
            self.N, self.h = None, _positive(h, 'h')

    def __repr__(self):
        return ('BoundSpec(theorem={0!r}, M={1}, a={2}, D={3}, N={4}, h={5})'
                .format(self.theorem, self.M, self.a, self.D, self.N, self.h))

    def decay(self):
        """The decay parameter q at the current working precision."""
        if self.N is not None:
            return to_mpf(self.a) * self.N
        return 2 * mpmath.pi * to_mpf(self.a) / to_mpf(self.h)


def _require(spec, *theorems):
    if spec.theorem not in theorems:
        raise DomainError(
            "Bound needs a {0} spec, got {1}"
            .format(' or '.join(theorems), spec.theorem))


def series_cutoff(term_bound, tolerance, start=1, max_terms=DEFAULT_MAX_TERMS):
    """Smallest L >= start with sum_{l > L} term_bound(l) <= tolerance.

    The tail is bounded geometrically by t(L+1) / (1 - t(L+2)/t(L+1)),
    which requires the term ratios to be non-increasing past L.
    """
    L = start
    while True:
        t1 = term_bound(L + 1)
        if t1 == 0:
            return L
        ratio = term_bound(L + 2) / t1
        if ratio < 1 and t1 / (1 - ratio) <= tolerance:
            return L
        L += 1
        if L - start > max_terms:
            raise TruncationError(
                "Series tail did not fall below {0} within {1} terms"
                .format(mpmath.nstr(tolerance, 5), max_terms),
                extra_data=dict(start=start, reached=L,
                                last_term=mpmath.nstr(t1, 5)))


def polylog_neg(k, z, precision=DEFAULT_PRECISION):
    """Li_{-k}(z) = sum_{l>=1} l^k z^l for 0 < z < 1."""
    precision = check_precision(precision)
    if not isinstance(k, int) or k < 0:
        raise DomainError("polylog order k must be a non-negative integer")
    return polylog_combination([0] * k + [1], z, precision)


def polylog_combination(weights, z, precision=DEFAULT_PRECISION):
    """|sum_{l>=1} p(l) z^l| with p(l) = sum_k weights[k] l^k, summed as one series.

    The leading power z^{l0} of the first non-vanishing term is factored
    out, so the result keeps its relative accuracy when z is far below
    2^-precision.
    """
    precision = check_precision(precision)
    weights = [to_rational(w) for w in weights]
    degree = len(weights) - 1

    def p(ell):
        return sum(w * ell ** k for k, w in enumerate(weights))

    # a non-zero polynomial of this degree cannot vanish at degree + 1 points
    ell0 = next((ell for ell in range(1, degree + 2) if p(ell) != 0), None)
    if ell0 is None:
        return mpmath.mpf(0)
    with mpmath.workprec(precision + 20):
        z = to_mpf(z)
        if not 0 < z < 1:
            raise DomainError(
                "polylog_combination needs 0 < z < 1, got {0}".format(mpmath.nstr(z, 10)))
        scale = to_mpf(sum(abs(w) for w in weights))
        head = abs(to_mpf(p(ell0)))

        def term_bound(ell):
            return scale * mpmath.mpf(ell) ** degree * z ** (ell - ell0)

        L = series_cutoff(term_bound, mpmath.ldexp(head, -precision), start=ell0)
        total = mpmath.mpf(0)
        power = mpmath.mpf(1)
        for ell in range(ell0, L + 1):
            total += to_mpf(p(ell)) * power
            power *= z
        result = abs(total) * z ** ell0
    with mpmath.workprec(precision):
        return +result


def binomial_tail_sum(D, q):
    """|sum_{l=D/2+1}^{D+1} (-1)^l C(D+1, l) e^{-lq}| at the current precision."""
    total = mpmath.mpf(0)
    for ell in range(D // 2 + 1, D + 2):
        total += (-1) ** ell * math.comb(D + 1, ell) * mpmath.exp(-ell * q)
    return abs(total)


def kress_estimate(D, q):
    """The looser 2^D e^{-(D/2+1)q} estimate of binomial_tail_sum."""
    return mpmath.mpf(2) ** D * mpmath.exp(-(D // 2 + 1) * q)


def _strip_factor(D, q, form, precision):
    if form == FORM_EXACT:
        return binomial_tail_sum(D, q) / (-mpmath.expm1(-q)) ** (D + 1)
    if form == FORM_ASYMPTOTIC:
        return math.comb(D + 1, D // 2) * mpmath.exp(-(D // 2 + 1) * q)
    if form == FORM_POLYLOG:
        coeffs = coeff_B(D, max_order=None) if D else unit_coeffs()
        weights = [(-1) ** (k // 2) * coeffs[k] if k % 2 == 0 else 0
                   for k in range(D + 1)]
        return polylog_combination(weights, mpmath.exp(-q), precision)
    raise DomainError(
        "Unknown bound form {0!r}, expected one of {1}".format(form, ', '.join(FORMS)))


def bound_periodic_halfplane(spec, precision=DEFAULT_PRECISION):
    """2 pi M / (e^{aN} - 1)^{D+1}."""
    _require(spec, PERIODIC_HALFPLANE)
    with mpmath.workprec(check_precision(precision)):
        q = spec.decay()
        return 2 * mpmath.pi * to_mpf(spec.M) / mpmath.expm1(q) ** (spec.D + 1)


def bound_periodic_strip(spec, form=FORM_EXACT, precision=DEFAULT_PRECISION):
    _require(spec, PERIODIC_STRIP)
    with mpmath.workprec(check_precision(precision)):
        q = spec.decay()
        return 4 * mpmath.pi * to_mpf(spec.M) * _strip_factor(spec.D, q, form, precision)


def bound_realline_strip(spec, form=FORM_EXACT, precision=DEFAULT_PRECISION):
    _require(spec, REALLINE_STRIP)
    with mpmath.workprec(check_precision(precision)):
        q = spec.decay()
        return 2 * to_mpf(spec.M) * _strip_factor(spec.D, q, form, precision)


def bound_realline_halfplane(spec, precision=DEFAULT_PRECISION):
    """M / (e^{2 pi a/h} - 1)^{D+1}."""
    _require(spec, REALLINE_HALFPLANE)
    with mpmath.workprec(check_precision(precision)):
        q = spec.decay()
        return to_mpf(spec.M) / mpmath.expm1(q) ** (spec.D + 1)


def bound_bailey(spec, m, form=FORM_POLYLOG, precision=DEFAULT_PRECISION):
    """Bound for the single correction of order 2m on the real line.

    The correction multiplies the frequency-l aliasing term by 1 - l^2m,
    so the polylog form is 2M |Li_0(z) - Li_{-2m}(z)| with z = e^{-2 pi a/h}.
    """
    _require(spec, BAILEY)
    if not isinstance(m, int) or m < 1:
        raise DomainError("Bailey correction order m must be >= 1, got %r" % (m,))
    precision = check_precision(precision)
    with mpmath.workprec(precision):
        q = spec.decay()
        M = to_mpf(spec.M)
        if form == FORM_ASYMPTOTIC:
            return 2 * M * (4 ** m - 1) * mpmath.exp(-2 * q)
        if form in (FORM_POLYLOG, FORM_EXACT):
            weights = [1] + [0] * (2 * m - 1) + [-1]
            return 2 * M * polylog_combination(weights, mpmath.exp(-q), precision)
        raise DomainError(
            "Unknown Bailey bound form {0!r}".format(form))


def leading_bound(spec, m=None, precision=DEFAULT_PRECISION):
    """Leading geometric term of the bound, the quantity optimized over a."""
    D = spec.D
    with mpmath.workprec(check_precision(precision)):
        q = spec.decay()
        M = to_mpf(spec.M)
        if spec.theorem == PERIODIC_HALFPLANE:
            return 2 * mpmath.pi * M * mpmath.exp(-(D + 1) * q)
        if spec.theorem == PERIODIC_STRIP:
            return 4 * mpmath.pi * M * _strip_factor(D, q, FORM_ASYMPTOTIC, precision)
        if spec.theorem == REALLINE_STRIP:
            return 2 * M * _strip_factor(D, q, FORM_ASYMPTOTIC, precision)
        if spec.theorem == REALLINE_HALFPLANE:
            return M * mpmath.exp(-(D + 1) * q)
        return bound_bailey(spec, m, FORM_ASYMPTOTIC, precision)


def compute_bound(spec, form=FORM_EXACT, m=None, precision=DEFAULT_PRECISION):
    """Dispatches to the bound of `spec.theorem` in the requested form."""
    if spec.theorem == PERIODIC_HALFPLANE:
        if form == FORM_ASYMPTOTIC:
            return leading_bound(spec, precision=precision)
        return bound_periodic_halfplane(spec, precision)
    if spec.theorem == PERIODIC_STRIP:
        return bound_periodic_strip(spec, form, precision)
    if spec.theorem == REALLINE_STRIP:
        return bound_realline_strip(spec, form, precision)
    if spec.theorem == REALLINE_HALFPLANE:
        if form == FORM_ASYMPTOTIC:
            return leading_bound(spec, precision=precision)
        return bound_realline_halfplane(spec, precision)
    return bound_bailey(spec, m, form, precision)


def make_spec(theorem, M, a, D, param, m=None):
    if theorem == BAILEY:
        D = 2 * m
    if theorem in PERIODIC_THEOREMS:
        return BoundSpec(theorem, M, a, D, N=param)
    return BoundSpec(theorem, M, a, D, h=param)


def large_d_threshold_N(a, precision=DEFAULT_PRECISION):
    """Smallest N for which periodic strip bounds still vanish as D grows."""
    with mpmath.workprec(check_precision(precision)):
        return 2 * mpmath.log(2) / to_mpf(_positive(a, 'a'))


def large_d_threshold_h(a, precision=DEFAULT_PRECISION):
    """Largest h for which real-line strip bounds still vanish as D grows."""
    with mpmath.workprec(check_precision(precision)):
        return mpmath.pi * to_mpf(_positive(a, 'a')) / mpmath.log(2)


def optimize_bound(theorem, D, param, M_of_a, a_max, m=None,
                   precision=DEFAULT_PRECISION):
    """Minimizes the leading bound term over the analyticity parameter a.

    Golden-section search on the log of the leading term over
    (eps, a_max - eps) with eps = 1e-6 * a_max. The returned bound is the
    exact form evaluated at the optimum.
    """
    precision = check_precision(precision)
    if theorem not in THEOREMS:
        raise DomainError("Unknown theorem {0!r}".format(theorem))
    if theorem == BAILEY and not m:
        raise DomainError("Bailey bounds need the correction order m")
    with mpmath.workprec(precision):
        a_max = to_mpf(_positive(a_max, 'a_max'))
        eps = a_max * mpmath.mpf('1e-6')
        lo, hi = eps, a_max - eps

        def M(a):
            try:
                value = M_of_a(a)
            except (ZeroDivisionError, ValueError, OverflowError):
                return None
            if not mpmath.isfinite(value) or not value > 0:
                return None
            return value

        shrunk = False
        while M(hi) is None:
            hi = lo + (hi - lo) / 2
            shrunk = True
            if hi - lo < eps:
                raise DomainError(
                    "M(a) is not finite anywhere in (0, {0})"
                    .format(mpmath.nstr(a_max, 10)))
        if shrunk:
            LOG.warning("Bound search interval shrunk to (%s, %s) because M(a)"
                        " is not finite near a_max=%s",
                        mpmath.nstr(lo, 8), mpmath.nstr(hi, 8),
                        mpmath.nstr(a_max, 8))

        def objective(a):
            value = M(a)
            if value is None:
                return mpmath.inf
            spec = make_spec(theorem, value, a, D, param, m)
            return mpmath.log(leading_bound(spec, m, precision))

        invphi = (mpmath.sqrt(5) - 1) / 2
        tol = a_max * mpmath.mpf('1e-12')
        x1 = hi - invphi * (hi - lo)
        x2 = lo + invphi * (hi - lo)
        f1, f2 = objective(x1), objective(x2)
        while hi - lo > tol:
            if f1 < f2:
                hi, x2, f2 = x2, x1, f1
                x1 = hi - invphi * (hi - lo)
                f1 = objective(x1)
            else:
                lo, x1, f1 = x1, x2, f2
                x2 = lo + invphi * (hi - lo)
                f2 = objective(x2)
        a_opt = (lo + hi) / 2
        LOG.debug("Optimized %s bound for D=%s at a=%s", theorem, D,
                  mpmath.nstr(a_opt, 12))
        spec = make_spec(theorem, M(a_opt), a_opt, D, param, m)
        return OptimizedBound(
            a_opt,
            compute_bound(spec, FORM_EXACT, m, precision),
            leading_bound(spec, m, precision),
            shrunk)
