#!/usr/bin/env python
# -*- coding: utf-8 -*-

# Copyright: (c) 2024, Numerics Ansible SIG
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)


class ModuleDocFragment(object):

    # Standard quadrature documentation fragment
    DOCUMENTATION = r'''
options:
  precision:
    description:
      - Working precision of all extended-precision arithmetic, in bits.
      - Must be at least 53.
    type: int
    default: 256
  digits:
    description:
      - Significant digits of decimal renderings. Rounding is
        round-half-even at the last printed digit.
    type: int
    default: 17
  max_order:
    description:
      - Largest derivative order I(D) accepted when generating coefficients.
    type: int
    default: 40
  max_system:
    description:
      - Largest exact linear system, N(D+1) unknowns, solved for Hermite
        interpolation weights.
    type: int
    default: 200
  output_format:
    description:
      - Encoding of the result table written to I(output_path).
      - The JSON encoding is a list of objects keyed by column name.
    type: str
    choices: [csv, json]
    default: csv
  output_path:
    description:
      - File the result table is written to. When unset the table is only
        returned in C(rows).
    type: path
  log_path:
    description:
      - Path to a logfile receiving the library log. If empty no log is written.
    type: path
  log_level:
    description: Log level of the library log.
    type: str
    default: INFO
    choices: [INFO, DEBUG]
requirements:
  - "python >= 3.8"
  - "mpmath >= 1.1.0"
notes:
  - Installing gmpy2 speeds up exact rational elimination considerably;
    pure Python integers are used otherwise.
  - Every module can also be run from the command line through
    C(python -m ansible_collections.numerics.quadrature.plugins.module_utils.cli).
'''
