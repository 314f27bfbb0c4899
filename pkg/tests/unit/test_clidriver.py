# Copyright (c) 2026 The dualvar authors.
#
# Licensed under the Apache License, Version 2.0 (the "License"). You
# may not use this file except in compliance with the License. A copy of
# the License is located at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# or in the "license" file accompanying this file. This file is
# distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF
# ANY KIND, either express or implied. See the License for the specific
# language governing permissions and limitations under the License.
"""Tests for the driver: exit codes, help pages and output selection."""
import json
import os

import pytest

from dualvar import EXIT_CONFIG_ERROR
from dualvar import EXIT_OK
from dualvar import EXIT_UNEXPECTED
from dualvar.clidriver import CLIDriver


def test_missing_run_file_is_a_config_error(tmp_path, capsys):
    status = CLIDriver().main(['verify-transform',
                               str(tmp_path / 'missing.cfg')])
    assert status == EXIT_CONFIG_ERROR
    assert 'missing.cfg' in capsys.readouterr().err


def test_unknown_key_is_a_config_error(run_file, capsys):
    status = CLIDriver().main(['verify-transform',
                               str(run_file(extra='grid.radius = 4\n'))])
    assert status == EXIT_CONFIG_ERROR
    assert 'radius' in capsys.readouterr().err


def test_invalid_value_is_a_config_error(run_file):
    status = CLIDriver().main(['check-geometry',
                               str(run_file(extra='grid.M = 8\n'))])
    assert status == EXIT_CONFIG_ERROR


def test_help_lists_commands(capsys):
    assert CLIDriver().main(['help']) == EXIT_OK
    out = capsys.readouterr().out
    assert 'AVAILABLE COMMANDS' in out
    for name in ('verify-transform', 'check-geometry', 'ground-state',
                 'multi-solutions', 'check-all'):
        assert 'o %s' % name in out


def test_no_arguments_prints_help(capsys):
    assert CLIDriver().main([]) == EXIT_OK
    assert 'AVAILABLE COMMANDS' in capsys.readouterr().out


def test_command_help(capsys):
    assert CLIDriver().main(['ground-state', 'help']) == EXIT_OK
    out = capsys.readouterr().out
    assert 'dualvar ground-state' in out
    assert 'config' in out


def test_invalid_command_exits():
    with pytest.raises(SystemExit) as raised:
        CLIDriver().main(['ground-stat'])
    assert raised.value.code == 2


def test_invalid_output_choice_exits():
    with pytest.raises(SystemExit):
        CLIDriver().main(['--output', 'yaml', 'help'])


def test_unknown_option(run_file, capsys):
    status = CLIDriver().main(['verify-transform', str(run_file()),
                               '--fast'])
    assert status == EXIT_UNEXPECTED
    assert 'Unknown options: --fast' in capsys.readouterr().err


def test_verify_transform_writes_report(run_file, tmp_path, capsys):
    status = CLIDriver().main(['--output', 'json', 'verify-transform',
                               str(run_file())])
    assert status == EXIT_OK
    summary = json.loads(capsys.readouterr().out)
    assert summary['command'] == 'verify-transform'
    assert summary['passed'] is True
    assert 'failed' not in summary
    assert summary['output_dir'] == str(tmp_path / 'out')

    with open(os.path.join(str(tmp_path / 'out'), 'report.json')) as f:
        report = json.load(f)
    assert report['command'] == 'verify-transform'
    assert report['passed'] is True
    assert report['failed'] == []
    assert report['config']['grid']['M'] == 200
    suites = [suite['suite'] for suite in report['suites']]
    assert 'transform' in suites
    assert 'energy_identity' in suites
    assert 0 < report['delta'] < 1


def test_output_dir_from_environment(run_file, tmp_path, monkeypatch,
                                     capsys):
    target = tmp_path / 'elsewhere'
    monkeypatch.setenv('DUALVAR_OUTPUT', str(target))
    status = CLIDriver().main(['--output', 'text', 'verify-transform',
                               str(run_file())])
    assert status == EXIT_OK
    assert os.path.isfile(str(target / 'report.json'))
    assert capsys.readouterr().out.startswith('verify-transform\t')
