# Copyright (c) 2024 Numerics Ansible SIG
# GNU General Public License v3.0+ (see COPYING or https://www.gnu.org/licenses/gpl-3.0.txt)

# Maps this checkout onto the ansible_collections.numerics.quadrature
# import path so the unit tests run without installing the collection.

import importlib
import os
import sys
import types

ROOT = os.path.dirname(os.path.abspath(__file__))


def _package(name, path=None):
    module = sys.modules.get(name)
    if module is None:
        module = types.ModuleType(name)
        module.__path__ = []
        sys.modules[name] = module
    if path is not None and path not in list(module.__path__):
        module.__path__.append(path)
    parent, _, child = name.rpartition('.')
    if parent:
        setattr(sys.modules[parent], child, module)
    return module


def _alias_collection():
    try:
        importlib.import_module('ansible_collections.numerics.quadrature.plugins')
        return
    except ImportError:
        pass
    try:
        importlib.import_module('ansible_collections')
    except ImportError:
        _package('ansible_collections')
    _package('ansible_collections.numerics')
    _package('ansible_collections.numerics.quadrature', ROOT)


_alias_collection()
