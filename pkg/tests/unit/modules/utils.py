import contextlib
import json
import unittest
from unittest.mock import patch

from ansible.module_utils import basic
from ansible.module_utils._text import to_bytes

try:
    from ansible.module_utils.testing import patch_module_args
except ImportError:
    patch_module_args = None


def _with_internal_args(args):
    args = dict(args)
    if '_ansible_remote_tmp' not in args:
        args['_ansible_remote_tmp'] = '/tmp'
    if '_ansible_keep_remote_files' not in args:
        args['_ansible_keep_remote_files'] = False
    return args


def set_module_args(args):
    args = json.dumps({'ANSIBLE_MODULE_ARGS': _with_internal_args(args)})
    basic._ANSIBLE_ARGS = to_bytes(args)


@contextlib.contextmanager
def module_args(args):
    # Newer ansible-core ships its own helper for injecting module arguments
    if patch_module_args is not None:
        with patch_module_args(_with_internal_args(args)):
            yield
    else:
        set_module_args(args)
        yield


class AnsibleExitJson(Exception):
    pass


class AnsibleFailJson(Exception):
    pass


def exit_json(*args, **kwargs):
    if 'changed' not in kwargs:
        kwargs['changed'] = False
    raise AnsibleExitJson(kwargs)


def fail_json(*args, **kwargs):
    kwargs['failed'] = True
    raise AnsibleFailJson(kwargs)


class ModuleTestCase(unittest.TestCase):

    def setUp(self):
        self.mock_module = patch.multiple(basic.AnsibleModule, exit_json=exit_json, fail_json=fail_json)
        self.mock_module.start()
        self.addCleanup(self.mock_module.stop)

    def run_module(self, module_class, args):
        """Runs an Ansible module class and returns the exit payload."""
        with module_args(args):
            with self.assertRaises(AnsibleExitJson) as ctx:
                module_class()()
        return ctx.exception.args[0]

    def fail_module(self, module_class, args):
        with module_args(args):
            with self.assertRaises(AnsibleFailJson) as ctx:
                module_class()()
        return ctx.exception.args[0]
