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
"""Per-run state shared by the commands.

A :class:`RunContext` builds the grid, the transform evaluator and the energy
functional lazily from a :class:`dualvar.config.RunConfig`, hands out the
random streams, and collects everything that ends up in report.json.
"""
import logging
import os

from dualvar.energy import EnergyFunctional
from dualvar.geometry import GeometryCertifier
from dualvar.problem import check_hypotheses
from dualvar.serialize import build_report
from dualvar.serialize import GEOMETRY_FILE
from dualvar.serialize import REPORT_FILE
from dualvar.serialize import write_csv
from dualvar.serialize import write_field_csv
from dualvar.serialize import write_geometry_csv
from dualvar.serialize import write_json
from dualvar.serialize import write_solution_csv
from dualvar.utils import CachedProperty
from dualvar.utils import make_rng
from dualvar.utils import spawn_rngs

LOG = logging.getLogger('dualvar.context')

# Every consumer of randomness owns one stream. The order is fixed so a
# command sees the same draws whether it runs alone or inside check-all.
RANDOM_STREAMS = ('transform', 'convexity', 'geometry', 'rays',
                  'ground_state', 'multi_start', 'energy_identity',
                  'sweep')


class RunRecord(object):
    """Results gathered while a command runs."""

    def __init__(self):
        self.certificates = []
        self.solutions = []
        self.suites = []
        self.extra = {}
        self.failures = []
        self.files = []

    @property
    def passed(self):
        return not self.failures and all(s.passed for s in self.suites)

    def failed_properties(self):
        names = ['%s/%s' % (check.suite, check.property)
                 for suite in self.suites for check in suite.failed]
        return names + list(self.failures)


class RunContext(object):
    """
    :type config: dualvar.config.RunConfig
    """

    def __init__(self, config):
        self.config = config
        self.record = RunRecord()
        self._streams = None
        self._level_rngs = None

    def __repr__(self):
        return 'RunContext(%r)' % self.config

    @property
    def problem(self):
        return self.config.problem

    @property
    def output_dir(self):
        return self.config.output_dir

    @CachedProperty
    def grid(self):
        return self.config.grid.make(self.problem.dim_N)

    @CachedProperty
    def evaluator(self):
        return self.config.transform.make_evaluator()

    @CachedProperty
    def energy(self):
        return EnergyFunctional(self.problem, self.grid, self.evaluator)

    @CachedProperty
    def hypotheses(self):
        return check_hypotheses(self.problem)

    @CachedProperty
    def certifier(self):
        return GeometryCertifier(
            self.energy, support_level=self.config.geometry.support_level,
            workers=self.config.solver.workers)

    @property
    def solver_options(self):
        return self.config.solver

    def rng(self, stream):
        """The generator of ``stream``, derived from the configured seed."""
        if self._streams is None:
            children = spawn_rngs(make_rng(self.config.seed),
                                  len(RANDOM_STREAMS))
            self._streams = dict(zip(RANDOM_STREAMS, children))
        return self._streams[stream]

    def certificates(self, n_max=None):
        """Geometry certificates for n = 1..n_max, computed once per run."""
        configured = self.config.geometry.n_max
        if n_max is None or n_max > configured:
            n_max = configured
        if self._level_rngs is None:
            # One stream per level, so level n does not depend on n_max.
            self._level_rngs = spawn_rngs(self.rng('geometry'), configured)
        have = len(self.record.certificates)
        if have < n_max:
            delta = self.evaluator.cached_delta
            for n in range(have + 1, n_max + 1):
                self.record.certificates.append(self.certifier.certify_level(
                    n, self.config.geometry.samples,
                    self._level_rngs[n - 1], delta))
        return self.record.certificates[:n_max]

    def path(self, filename):
        return os.path.join(self.output_dir, filename)

    def _track(self, path):
        if path not in self.record.files:
            self.record.files.append(path)
        return path

    def write_field(self, filename, field, name):
        return self._track(write_field_csv(self.path(filename), field, name))

    def write_solution(self, filename, report):
        return self._track(write_solution_csv(self.path(filename), report))

    def write_table(self, filename, header, rows):
        return self._track(write_csv(self.path(filename), header, rows))

    def write_geometry(self):
        return self._track(write_geometry_csv(self.path(GEOMETRY_FILE),
                                              self.record.certificates))

    def build_report(self, command_name):
        record = self.record
        extra = dict(record.extra)
        extra.update({'command': command_name,
                      'hypotheses': self.hypotheses.to_dict(),
                      'config': self.config.to_dict(),
                      'passed': record.passed,
                      'failed': record.failed_properties()})
        return build_report(self.problem, self.grid, record.certificates,
                            record.solutions, record.suites, extra)

    def write_report(self, command_name):
        path = write_json(self.path(REPORT_FILE),
                          self.build_report(command_name))
        LOG.info('Report written to %s', path)
        return self._track(path)
