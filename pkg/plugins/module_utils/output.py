# -*- coding: utf-8 -*-

# Copyright (c) 2024 Numerics Ansible SIG
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

"""Rendering of exact and multiprecision values and result tables."""

import csv
import io
import json
from decimal import Decimal, ROUND_HALF_EVEN, localcontext
from fractions import Fraction


def to_fraction(value):
    """Exact rational value of an int, Fraction or finite mpf."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    man, exp = value.man_exp
    if exp >= 0:
        return Fraction(int(man) * 2 ** int(exp))
    return Fraction(int(man), 2 ** int(-exp))


def _is_special(value):
    try:
        import mpmath
    except ImportError:
        return False
    if isinstance(value, mpmath.mpf):
        return mpmath.isinf(value) or mpmath.isnan(value)
    return False


def format_decimal(value, digits=17):
    """Renders a real value with `digits` significant digits.

    Conversion is exact and the only rounding is round-half-even at the
    last printed digit.
    """
    if value is None:
        return ''
    if _is_special(value):
        return str(value)
    q = to_fraction(value)
    if q == 0:
        return '0'
    with localcontext() as ctx:
        ctx.prec = digits
        ctx.rounding = ROUND_HALF_EVEN
        d = Decimal(q.numerator) / Decimal(q.denominator)
        return '{0:.{1}E}'.format(d, digits - 1)


def format_rational(q):
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return '{0}/{1}'.format(q.numerator, q.denominator)


def format_imaginary(q):
    q = Fraction(q)
    sign = '-' if q < 0 else ''
    num, den = abs(q.numerator), q.denominator
    head = 'i' if num == 1 else '{0}i'.format(num)
    if den == 1:
        return sign + head
    return '{0}{1}/{2}'.format(sign, head, den)


def format_exact(re, im=0):
    """Exact text of re + i*im, e.g. '5/4', '-i/6' or '1/2+3i/4'."""
    re, im = Fraction(re), Fraction(im)
    if im == 0:
        return format_rational(re)
    if re == 0:
        return format_imaginary(im)
    imag = format_imaginary(im)
    if not imag.startswith('-'):
        imag = '+' + imag
    return format_rational(re) + imag


def format_param(value):
    """Text of a rule parameter: an integer N or a rational step h."""
    if value is None:
        return ''
    if isinstance(value, (int, Fraction)):
        return format_rational(value)
    return str(value)


def rational_to_json(q):
    q = Fraction(q)
    return {'num': str(q.numerator), 'den': str(q.denominator)}


def rational_from_json(data):
    return Fraction(int(data['num']), int(data['den']))


def render_table(columns, rows, output_format='csv'):
    fp = io.StringIO()
    write_table(fp, columns, rows, output_format)
    return fp.getvalue()


def write_table(fp, columns, rows, output_format='csv'):
    """Writes rows of strings keyed by column name as CSV or JSON."""
    if output_format == 'json':
        ordered = [dict((c, row.get(c, '')) for c in columns)
                   for row in rows]
        json.dump(ordered, fp, indent=2)
        fp.write('\n')
        return
    writer = csv.DictWriter(fp, fieldnames=list(columns),
                            lineterminator='\n', extrasaction='ignore')
    writer.writeheader()
    for row in rows:
        writer.writerow(row)


def read_table(fp, output_format='csv'):
    if output_format == 'json':
        return json.load(fp)
    return [dict(row) for row in csv.DictReader(fp)]
