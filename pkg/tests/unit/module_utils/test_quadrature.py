# -*- coding: utf-8 -*-

# Copyright (c) 2024 Numerics Ansible SIG
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

import logging
from fractions import Fraction

import mpmath
import pytest

from ansible_collections.numerics.quadrature.plugins.module_utils.quadrature import (
    LOGGER_NAME,
    MINIMUM_MPMATH_VERSION,
    ConfigurationError,
    DomainError,
    ModuleExit,
    ModuleFailure,
    QuadratureError,
    QuadratureModule,
    SingularSystemError,
    check_precision,
    ensure_compatibility,
    expand_ranges,
    quadrature_full_argument_spec,
    quadrature_module_kwargs,
    to_mpf,
    to_rational,
)


class EchoModule(QuadratureModule):
    argument_spec = dict(
        value=dict(type='int', required=True),
        mode=dict(default='plain', choices=['plain', 'table', 'broken']),
    )
    module_kwargs = dict(supports_check_mode=True)

    def run(self):
        if self.params['mode'] == 'broken':
            raise SingularSystemError("no pivot", extra_data=dict(column=3))
        if self.params['mode'] == 'table':
            self.exit_json(columns=['value'],
                           rows=[{'value': str(self.params['value'])}])
        self.results['value'] = self.params['value']


@pytest.fixture
def collection_logger():
    logger = logging.getLogger(LOGGER_NAME)
    handlers, level = list(logger.handlers), logger.level
    yield logger
    for handler in logger.handlers:
        if handler not in handlers:
            handler.close()
    logger.handlers = handlers
    logger.setLevel(level)


def test_ensure_compatibility_accepts_current():
    ensure_compatibility('1.3.0')


def test_ensure_compatibility_rejects_old():
    with pytest.raises(ImportError, match='smaller than minimum'):
        ensure_compatibility('0.17.0')


def test_ensure_compatibility_accepts_minimum():
    ensure_compatibility(MINIMUM_MPMATH_VERSION)


def test_full_argument_spec_merges():
    spec = quadrature_full_argument_spec(D=dict(type='int'))
    assert spec['precision']['default'] == 256
    assert spec['output_format']['choices'] == ['csv', 'json']
    assert spec['D'] == dict(type='int')


def test_module_kwargs_drop_ansible_only_options():
    kwargs = quadrature_module_kwargs(supports_check_mode=True,
                                      mutually_exclusive=[('a', 'b')])
    assert kwargs == dict(mutually_exclusive=[('a', 'b')])


def test_check_precision():
    assert check_precision(53) == 53
    with pytest.raises(ConfigurationError) as ctx:
        check_precision(52)
    assert ctx.value.exit_code == 2
    assert ctx.value.extra_data == dict(precision=52)


@pytest.mark.parametrize('value, expected', [
    (3, Fraction(3)),
    ('1/2', Fraction(1, 2)),
    ('0.25', Fraction(1, 4)),
    (Fraction(2, 3), Fraction(2, 3)),
])
def test_to_rational(value, expected):
    assert to_rational(value) == expected


@pytest.mark.parametrize('value', ['x', '1/0', True])
def test_to_rational_rejects(value):
    with pytest.raises(DomainError):
        to_rational(value)


def test_to_mpf_uses_working_precision():
    with mpmath.workprec(200):
        third = to_mpf('1/3')
        assert abs(third * 3 - 1) < mpmath.mpf(2) ** -195


def test_expand_ranges():
    assert expand_ranges(['1:4', '6', 8, '2', '10:20:5']) == [1, 2, 3, 4, 6, 8, 10, 15, 20]
    assert expand_ranges(['5:1']) == []
    assert expand_ranges(None) == []


@pytest.mark.parametrize('value', ['1:2:3:4', 'a:b', '1:5:0', 'x'])
def test_expand_ranges_rejects(value):
    with pytest.raises(DomainError, match='lo:hi'):
        expand_ranges([value], 'N')


def test_error_hierarchy():
    assert issubclass(DomainError, ValueError)
    assert DomainError('x').exit_code == 2
    assert QuadratureError('x').exit_code == 3
    assert SingularSystemError('x').extra_data == {}


def test_module_exit_carries_results():
    with pytest.raises(ModuleExit) as ctx:
        EchoModule(params=dict(value=4))()
    assert ctx.value.results == {'changed': False, 'value': 4}


def test_module_validation_failure():
    with pytest.raises(ModuleFailure) as ctx:
        EchoModule(params=dict(value='four'))
    assert ctx.value.rc == 2


def test_module_precision_failure():
    with pytest.raises(ModuleFailure) as ctx:
        EchoModule(params=dict(value=1, precision=10))
    assert ctx.value.rc == 2
    assert '53' in ctx.value.msg


def test_module_maps_quadrature_errors():
    with pytest.raises(ModuleFailure) as ctx:
        EchoModule(params=dict(value=1, mode='broken'))()
    assert ctx.value.rc == 3
    assert ctx.value.results['extra_data'] == {'column': '3'}


def test_module_writes_table(tmp_path):
    path = tmp_path / 'out.csv'
    with pytest.raises(ModuleExit) as ctx:
        EchoModule(params=dict(value=7, mode='table', output_path=str(path)))()
    assert ctx.value.results['changed']
    assert path.read_text() == 'value\n7\n'


def test_module_log_file(tmp_path, collection_logger):
    path = tmp_path / 'quadrature.log'
    module = EchoModule(params=dict(value=1, log_path=str(path), log_level='DEBUG'))
    module.debug('hello from the module')
    for handler in collection_logger.handlers:
        handler.flush()
    assert 'hello from the module' in path.read_text()
    assert collection_logger.level == logging.DEBUG
