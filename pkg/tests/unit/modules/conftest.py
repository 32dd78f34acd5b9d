# Copyright (c) 2024 Numerics Ansible SIG
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

import pytest

from ansible_collections.numerics.quadrature.plugins.module_utils.quadrature import (
    ModuleExit, ModuleFailure)


@pytest.fixture
def run_module():
    """Runs a module class outside of Ansible and returns its results."""

    def _run(module_class, **params):
        with pytest.raises(ModuleExit) as ctx:
            module_class(params=params)()
        return ctx.value.results

    return _run


@pytest.fixture
def fail_module():

    def _fail(module_class, **params):
        with pytest.raises(ModuleFailure) as ctx:
            module_class(params=params)()
        return ctx.value

    return _fail
