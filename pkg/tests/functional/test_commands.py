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
"""End-to-end runs of the commands on a small grid."""
import csv
import json
import os

import numpy as np
import pytest

from dualvar import EXIT_OK
from dualvar.clidriver import CLIDriver


def _read_csv(path):
    with open(path) as f:
        rows = list(csv.reader(f))
    return rows[0], np.array(rows[1:], dtype=float)


def _report(output_dir):
    with open(os.path.join(output_dir, 'report.json')) as f:
        return json.load(f)


@pytest.mark.slow
def test_ground_state(run_file, tmp_path):
    assert CLIDriver().main(['ground-state', str(run_file())]) == EXIT_OK
    out = str(tmp_path / 'out')
    report = _report(out)
    assert report['passed'] is True
    assert report['hypotheses_passed'] is True
    (solution,) = report['solutions']
    assert solution['distinct_id'] == 'G'
    assert solution['converged'] is True
    assert solution['phi_value'] < 0
    assert solution['grad_norm'] <= 1e-8
    assert solution['min_u'] >= 0
    assert abs(solution['phi_value'] - solution['j_value']) <= \
        1e-8 * (1 + abs(solution['phi_value']))

    header, values = _read_csv(os.path.join(out, 'ground_state.csv'))
    assert header == ['r', 'v', 'u']
    assert values.shape == (200, 3)
    assert np.all(values[:, 2] >= 0)
    # u = f(v) has the sign of v and is no larger in magnitude.
    assert np.all(np.abs(values[:, 2]) <= np.abs(values[:, 1]) + 1e-15)
    for name in ('v.csv', 'u.csv'):
        assert os.path.isfile(os.path.join(out, name))


@pytest.mark.slow
def test_ground_state_tolerance_sweep(run_file, tmp_path):
    status = CLIDriver().main(['ground-state', str(run_file()),
                               '--sweep-tolerances', '1e-4', '1e-6'])
    assert status == EXIT_OK
    out = str(tmp_path / 'out')
    header, rows = _read_csv(os.path.join(out, 'weak_residual_sweep.csv'))
    assert header == ['grad_tol', 'weak_residual', 'grad_norm']
    np.testing.assert_array_equal(rows[:, 0], [1e-4, 1e-6])
    assert np.all(rows[:, 2] <= rows[:, 0])
    assert len(_report(out)['weak_residual_sweep']) == 2


@pytest.mark.slow
def test_check_geometry(run_file, tmp_path):
    assert CLIDriver().main(['check-geometry', str(run_file())]) == EXIT_OK
    out = str(tmp_path / 'out')
    header, rows = _read_csv(os.path.join(out, 'geometry.csv'))
    assert header == ['n', 'vartheta', 'A', 'B', 'rho', 'theta',
                      'max_phi_sampled']
    np.testing.assert_array_equal(rows[:, 0], [1, 2])
    assert np.all(rows[:, 5] < 0)
    assert np.all(rows[:, 6] < 0)
    report = _report(out)
    assert len(report['geometry_certificates']) == 2
    suites = dict((s['suite'], s) for s in report['suites'])
    assert suites['geometry']['passed'] is True
    assert suites['coercivity']['passed'] is True


@pytest.mark.slow
def test_multi_solutions(run_file, tmp_path):
    CLIDriver().main(['multi-solutions', str(run_file())])
    out = str(tmp_path / 'out')
    report = _report(out)
    multi_start = report['multi_start']
    assert multi_start['starts'] == 4
    assert 1 <= multi_start['distinct'] <= multi_start['starts']
    ids = [s['distinct_id'] for s in report['solutions']]
    assert ids[0] == 'S1'
    energies = [s['phi_value'] for s in report['solutions']]
    assert energies == sorted(energies)
    for distinct_id in ids:
        assert os.path.isfile(os.path.join(out,
                                           'solution_%s.csv' % distinct_id))


@pytest.mark.slow
def test_check_all_is_deterministic(run_file, tmp_path):
    """Two runs with the same seed write byte-identical CSV files."""
    first = CLIDriver().main(['check-all', str(run_file('first'))])
    second = CLIDriver().main(['check-all', str(run_file('second'))])
    assert first == second
    first_dir = tmp_path / 'first'
    second_dir = tmp_path / 'second'
    names = sorted(p.name for p in first_dir.iterdir()
                   if p.name.endswith('.csv'))
    assert 'geometry.csv' in names
    assert 'ground_state.csv' in names
    assert names == sorted(p.name for p in second_dir.iterdir()
                           if p.name.endswith('.csv'))
    for name in names:
        assert (first_dir / name).read_bytes() == \
            (second_dir / name).read_bytes(), name
    first_report = _report(str(first_dir))
    second_report = _report(str(second_dir))
    assert first_report['failed'] == second_report['failed']
    assert ([s['phi_value'] for s in first_report['solutions']] ==
            [s['phi_value'] for s in second_report['solutions']])
