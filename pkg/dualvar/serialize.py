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
"""Artifacts of a run: report.json and CSV files.

Floats are written with ``repr`` and JSON keys are sorted, so identical runs
produce byte-identical files.
"""
import csv
import json
import logging
import os

from dualvar.utils import to_plain

LOG = logging.getLogger('dualvar.serialize')

REPORT_FILE = 'report.json'
GEOMETRY_FILE = 'geometry.csv'
GEOMETRY_HEADER = ('n', 'vartheta', 'A', 'B', 'rho', 'theta',
                   'max_phi_sampled')
REPORT_SECTIONS = ('problem', 'grid', 'geometry_certificates', 'solutions',
                   'suites')


def _cell(value):
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _ensure_parent(path):
    parent = os.path.dirname(os.path.abspath(path))
    if not os.path.isdir(parent):
        os.makedirs(parent)


def write_csv(path, header, rows):
    _ensure_parent(path)
    with open(path, 'w', newline='') as fp:
        writer = csv.writer(fp, lineterminator='\n')
        writer.writerow(header)
        for row in rows:
            writer.writerow([_cell(value) for value in row])
    LOG.debug('Wrote %s', path)
    return path


def read_csv(path):
    """Header and float rows of a CSV written by this module."""
    with open(path, newline='') as fp:
        reader = csv.reader(fp)
        header = next(reader)
        rows = [[float(cell) for cell in row] for row in reader]
    return header, rows


def write_field_csv(path, field, name='value'):
    """Two columns: r and the field value."""
    rows = zip(field.grid.nodes.tolist(), field.values.tolist())
    return write_csv(path, ('r', name), rows)


def write_solution_csv(path, report):
    """Columns r, v, u of a solve report."""
    grid = report.v_star.grid
    rows = zip(grid.nodes.tolist(), report.v_star.values.tolist(),
               report.u_star.values.tolist())
    return write_csv(path, ('r', 'v', 'u'), rows)


def write_geometry_csv(path, certificates):
    rows = ([c.level, float(c.vartheta), float(c.A), float(c.B),
             float(c.rho), float(c.theta), float(c.max_phi_sampled)]
            for c in certificates)
    return write_csv(path, GEOMETRY_HEADER, rows)


def dumps(data):
    return json.dumps(to_plain(data), sort_keys=True, indent=2) + '\n'


def write_json(path, data):
    _ensure_parent(path)
    with open(path, 'w') as fp:
        fp.write(dumps(data))
    LOG.debug('Wrote %s', path)
    return path


def build_report(problem=None, grid=None, geometry_certificates=(),
                 solutions=(), suites=(), extra=None):
    """The report.json document.

    :type problem: dualvar.problem.ProblemSpec
    :type grid: dualvar.grid.RadialGrid
    """
    report = {
        'problem': problem.to_dict() if problem is not None else None,
        'grid': grid.describe() if grid is not None else None,
        'geometry_certificates': [c.to_dict() for c in geometry_certificates],
        'solutions': [s.to_dict() for s in solutions],
        'suites': [s.to_dict() for s in suites],
    }
    if extra:
        report.update(extra)
    return report
