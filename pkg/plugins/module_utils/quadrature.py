#!/usr/bin/env python
# -*- coding: utf-8 -*-

# This code is part of Ansible, but is an independent component.
# This particular file snippet, and this file snippet only, is BSD licensed.
# Modules you write using this snippet, which is embedded dynamically by Ansible
# still belong to the author of the module, and may assign their own license
# to the complete work.
#
# Copyright (c) 2024 Numerics Ansible SIG
# All rights reserved.
#
# Redistribution and use in source and binary forms, with or without modification,
# are permitted provided that the following conditions are met:
#
#    * Redistributions of source code must retain the above copyright
#      notice, this list of conditions and the following disclaimer.
#    * Redistributions in binary form must reproduce the above copyright notice,
#      this list of conditions and the following disclaimer in the documentation
#      and/or other materials provided with the distribution.
#
# THIS SOFTWARE IS PROVIDED BY THE COPYRIGHT HOLDERS AND CONTRIBUTORS "AS IS" AND
# ANY EXPRESS OR IMPLIED WARRANTIES, INCLUDING, BUT NOT LIMITED TO, THE IMPLIED
# WARRANTIES OF MERCHANTABILITY AND FITNESS FOR A PARTICULAR PURPOSE ARE DISCLAIMED.
# IN NO EVENT SHALL THE COPYRIGHT HOLDER OR CONTRIBUTORS BE LIABLE FOR ANY DIRECT, INDIRECT,
# INCIDENTAL, SPECIAL, EXEMPLARY, OR CONSEQUENTIAL DAMAGES (INCLUDING, BUT NOT LIMITED TO,
# PROCUREMENT OF SUBSTITUTE GOODS OR SERVICES; LOSS OF USE, DATA, OR PROFITS; OR BUSINESS
# INTERRUPTION) HOWEVER CAUSED AND ON ANY THEORY OF LIABILITY, WHETHER IN CONTRACT, STRICT
# LIABILITY, OR TORT (INCLUDING NEGLIGENCE OR OTHERWISE) ARISING IN ANY WAY OUT OF THE
# USE OF THIS SOFTWARE, EVEN IF ADVISED OF THE POSSIBILITY OF SUCH DAMAGE.

import abc
import copy
import importlib
import logging
from fractions import Fraction

try:
    from ansible.module_utils.compat.version import StrictVersion
except ImportError:
    from distutils.version import StrictVersion

from ansible.module_utils.basic import AnsibleModule
from ansible.module_utils.common.arg_spec import ArgumentSpecValidator

from ansible_collections.numerics.quadrature.plugins.module_utils.output import (
    write_table)

LOGGER_NAME = 'ansible_collections.numerics.quadrature'

MINIMUM_MPMATH_VERSION = '1.1.0'

DEFAULT_PRECISION = 256
MINIMUM_PRECISION = 53
DEFAULT_DIGITS = 17
DEFAULT_MAX_ORDER = 40
DEFAULT_MAX_SYSTEM = 200

# Theorem tags shared by coefficient provenance, bounds and examples
PERIODIC_HALFPLANE = 'periodic-halfplane'
PERIODIC_STRIP = 'periodic-strip'
REALLINE_STRIP = 'realline-strip'
REALLINE_HALFPLANE = 'realline-halfplane'
BAILEY = 'bailey'
THEOREMS = (PERIODIC_HALFPLANE, PERIODIC_STRIP, REALLINE_STRIP,
            REALLINE_HALFPLANE, BAILEY)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3


class QuadratureError(Exception):
    """Base class of all errors raised by the quadrature library.

    Carries a JSON friendly ``extra_data`` dictionary with diagnostics and
    the process exit code used by the command line front-end.
    """

    exit_code = EXIT_NUMERIC

    def __init__(self, message, extra_data=None):
        super(QuadratureError, self).__init__(message)
        self.extra_data = extra_data or {}


class DomainError(QuadratureError, ValueError):
    exit_code = EXIT_USAGE


class ConfigurationError(QuadratureError):
    exit_code = EXIT_USAGE


class TruncationError(QuadratureError):
    pass


class SingularSystemError(QuadratureError):
    pass


class OracleError(QuadratureError):
    pass


class ModuleExit(Exception):
    """Raised by exit_json when a module runs outside of Ansible."""

    def __init__(self, results):
        super(ModuleExit, self).__init__('exit')
        self.results = results


class ModuleFailure(Exception):
    """Raised by fail_json when a module runs outside of Ansible."""

    def __init__(self, msg, rc=EXIT_USAGE, results=None):
        super(ModuleFailure, self).__init__(msg)
        self.msg = msg
        self.rc = rc
        self.results = results or {}


def ensure_compatibility(version):
    """Raises ImportError if mpmath is older than MINIMUM_MPMATH_VERSION."""
    if StrictVersion(version) < StrictVersion(MINIMUM_MPMATH_VERSION):
        raise ImportError(
            "mpmath MUST be >={minimum}, but {version} is smaller than minimum"
            " version {minimum}".format(version=version,
                                        minimum=MINIMUM_MPMATH_VERSION))


def quadrature_full_argument_spec(**kwargs):
    spec = dict(
        precision=dict(type='int', default=DEFAULT_PRECISION),
        digits=dict(type='int', default=DEFAULT_DIGITS),
        max_order=dict(type='int', default=DEFAULT_MAX_ORDER),
        max_system=dict(type='int', default=DEFAULT_MAX_SYSTEM),
        output_format=dict(default='csv', choices=['csv', 'json']),
        output_path=dict(type='path'),
        log_path=dict(type='path'),
        log_level=dict(default='INFO', choices=['INFO', 'DEBUG']),
    )
    spec.update(copy.deepcopy(kwargs))
    return spec


def quadrature_module_kwargs(**kwargs):
    # AnsibleModule options such as supports_check_mode mean nothing to
    # the plain argument validator
    ret = {}
    for key in ('mutually_exclusive', 'required_together', 'required_one_of',
                'required_if', 'required_by'):
        if key in kwargs:
            ret[key] = kwargs[key]
    return ret


def check_precision(precision):
    if precision is None or int(precision) < MINIMUM_PRECISION:
        raise ConfigurationError(
            "Working precision must be at least {minimum} bits, got {value}"
            .format(minimum=MINIMUM_PRECISION, value=precision),
            extra_data=dict(precision=precision))
    return int(precision)


def to_rational(value):
    """Converts an int, Fraction, decimal string or 'p/q' string exactly."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise DomainError("Expected a number, got {0!r}".format(value))
    if isinstance(value, int):
        return Fraction(value)
    try:
        return Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError):
        raise DomainError("Expected a real number, got {0!r}".format(value))


def to_mpf(value):
    """Converts a number to mpmath at the current working precision."""
    import mpmath
    if isinstance(value, (mpmath.mpf, mpmath.mpc)):
        return +value
    if isinstance(value, float):
        return mpmath.mpf(value)
    q = to_rational(value)
    return mpmath.mpf(q.numerator) / q.denominator


def expand_ranges(values, name='N'):
    """Expands 'lo:hi[:step]' strings and plain integers into a list.

    Ranges are inclusive. Order of appearance is preserved and duplicates
    are dropped.
    """
    expanded = []
    for value in values or []:
        text = str(value).strip()
        if not text:
            continue
        try:
            if ':' in text:
                parts = [int(p) for p in text.split(':')]
                if len(parts) == 2:
                    lo, hi, step = parts[0], parts[1], 1
                elif len(parts) == 3:
                    lo, hi, step = parts
                else:
                    raise ValueError(text)
                if step < 1:
                    raise ValueError(text)
                items = range(lo, hi + 1, step)
            else:
                items = [int(text)]
        except ValueError:
            raise DomainError(
                "Invalid value {value!r} for {name}, expected an integer or"
                " a range lo:hi[:step]".format(value=text, name=name))
        for item in items:
            if item not in expanded:
                expanded.append(item)
    return expanded


class QuadratureModule:
    """Quadrature Module is a base class for all quadrature Module classes.

    The class has `run` function that should be overriden in child classes,
    the provided methods include:

    Methods:
        params: Dictionary of module parameters.
        module_name: Module name (i.e. coeffs)
        mpmath_version: Version of used mpmath.
        results: Dictionary for return of the module,
                 must include `changed` keyword.
        exit, exit_json: Exit module and return data inside, must include
                         changed` keyword in a data. Tables given as
                         `columns` and `rows` are written to `output_path`.
        fail, fail_json: Exit module with failure, has `msg` keyword to
                         specify a reason of failure and `rc` for the
                         command line exit code.
        log: Print message to system log.
        debug: Print debug message to system log, prints if Ansible Debug is
               enabled, verbosity is more than 2 or log_level is DEBUG.
        run: method that executes and shall be overriden in inherited classes.

    Args:
        params: When given, the module runs outside of Ansible and these
                parameters are validated against the argument spec
                directly. Exits are then reported as ModuleExit and
                ModuleFailure exceptions.
        argument_spec: Used for construction of quadrature common arguments.
        module_kwargs: Additional arguments for Ansible Module.
    """

    argument_spec = {}
    module_kwargs = {}

    def __init__(self, params=None):
        """Initialize quadrature base class.

        Set up variables, validate parameters and check that the
        arithmetic backend is usable.
        """
        self.logger = logging.getLogger(LOGGER_NAME)
        self.results = {'changed': False}
        self.mpmath_version = None
        if params is None:
            self.ansible = AnsibleModule(
                quadrature_full_argument_spec(**self.argument_spec),
                **self.module_kwargs)
            self.params = self.ansible.params
            self.module_name = self.ansible._name
            self.check_mode = self.ansible.check_mode
            self.warn = self.ansible.warn
        else:
            self.ansible = None
            self.module_name = type(self).__name__
            self.check_mode = False
            self.warn = self.logger.warning
            self.params = self._validate_params(params)
        self.setup_logging()
        self.check_dependencies()
        try:
            check_precision(self.params['precision'])
        except ConfigurationError as e:
            self.fail_json(msg=str(e), rc=e.exit_code)

    def _validate_params(self, params):
        validator = ArgumentSpecValidator(
            quadrature_full_argument_spec(**self.argument_spec),
            **quadrature_module_kwargs(**self.module_kwargs))
        result = validator.validate(
            dict((k, v) for k, v in params.items() if v is not None))
        if result.error_messages:
            raise ModuleFailure(
                '; '.join(result.error_messages), rc=EXIT_USAGE)
        return result.validated_parameters

    def log(self, msg):
        """Prints log message to system log.

        Arguments:
            msg {str} -- Log message
        """
        if self.ansible is not None:
            self.ansible.log(msg)
        self.logger.info(msg)

    def debug(self, msg):
        """Prints debug message to system log

        Arguments:
            msg {str} -- Debug message.
        """
        if self.ansible is not None and (
                self.ansible._debug or self.ansible._verbosity > 2):
            self.ansible.log(
                " ".join(['[DEBUG]', msg]))
        self.logger.debug(msg)

    def setup_logging(self):
        log_path = self.params.get('log_path')
        if log_path is None:
            return
        log_level = self.params.get('log_level')
        level = logging.DEBUG if log_level == 'DEBUG' else logging.INFO
        for handler in self.logger.handlers:
            if getattr(handler, 'baseFilename', None) == log_path:
                break
        else:
            handler = logging.FileHandler(log_path)
            handler.setFormatter(logging.Formatter(
                '%(asctime)s %(name)s %(levelname)s %(message)s'))
            self.logger.addHandler(handler)
        self.logger.setLevel(level)

    def check_dependencies(self):
        """Checks that a supported mpmath release is importable."""
        try:
            mpmath = importlib.import_module('mpmath')
            self.mpmath_version = mpmath.__version__
        except ImportError:
            self.fail_json(msg='mpmath is required for this module',
                           rc=EXIT_USAGE)

        try:
            ensure_compatibility(self.mpmath_version)
        except ImportError as e:
            self.fail_json(
                msg="Incompatible mpmath library found: {error}."
                    .format(error=str(e)),
                rc=EXIT_USAGE)

    def exit_json(self, **kwargs):
        output_path = self.params.get('output_path')
        if output_path and 'rows' in kwargs:
            with open(output_path, 'w') as fp:
                write_table(fp, kwargs.get('columns'), kwargs['rows'],
                            self.params['output_format'])
            kwargs['changed'] = True
            kwargs['output_path'] = output_path
        if 'changed' not in kwargs:
            kwargs['changed'] = False
        if self.ansible is not None:
            self.ansible.exit_json(**kwargs)
        raise ModuleExit(kwargs)

    exit = exit_json

    def fail_json(self, msg, rc=EXIT_USAGE, **kwargs):
        if self.ansible is not None:
            self.ansible.fail_json(msg=msg, rc=rc, **kwargs)
        raise ModuleFailure(msg, rc=rc, results=kwargs)

    fail = fail_json

    @abc.abstractmethod
    def run(self):
        """Function for overriding in inhetired classes, it's executed by default.
        """
        pass

    def __call__(self):
        """Execute `run` function when calling the class.
        """
        try:
            results = self.run()
            if results and isinstance(results, dict):
                self.exit_json(**results)
        except QuadratureError as e:
            self.fail_json(
                msg=str(e),
                rc=e.exit_code,
                extra_data=dict((k, str(v))
                                for k, v in e.extra_data.items()))
        # if we got to this place, modules didn't exit
        self.exit_json(**self.results)
