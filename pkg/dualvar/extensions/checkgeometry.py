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
import logging

import numpy as np

from dualvar.extensions.commands import RunCommand
from dualvar.geometry import THETA_SLACK
from dualvar.utils import spawn_rngs
from dualvar.verify import SuiteReport

LOG = logging.getLogger('dualvar.extensions.checkgeometry')

TINY = np.finfo(float).tiny


def certificate_suite(certificates):
    suite = SuiteReport('geometry')
    levels = [c.level for c in certificates]
    suite.add('A>0', [c.A for c in certificates], levels, threshold=TINY)
    suite.add('theta<0', [-c.theta for c in certificates], levels,
              threshold=TINY)
    suite.add('vartheta*rho<=delta',
              [c.delta - c.vartheta * c.rho for c in certificates], levels,
              threshold=-1e-12)
    suite.add('sphere_negative', [-c.max_phi_sampled for c in certificates],
              levels, threshold=TINY)
    suite.add('max_phi<=theta',
              [c.theta + THETA_SLACK - c.max_phi_sampled
               for c in certificates], levels, threshold=0.0)
    suite.add('chain_bound', [c.chain_margin for c in certificates], levels)
    return suite


def ray_suite(ray):
    suite = SuiteReport('coercivity')
    directions = np.arange(ray.values.shape[0])
    suite.add('phi(t_max w)>0', ray.values[:, -1], directions,
              threshold=TINY)
    growth = np.diff(ray.values[:, ray.t_schedule >= 100.0], axis=1)
    suite.add('increasing', np.min(growth, axis=1), directions,
              threshold=TINY)
    scale = 1.0 + np.abs(ray.values)
    suite.add('embedding_lower_bound',
              np.min((ray.values - ray.lower_bounds) / scale, axis=1),
              directions, threshold=-1e-9)
    return suite


def check_geometry(context):
    """Certificates for n = 1..n_max, geometry.csv and the coercivity rays."""
    options = context.config.geometry
    record = context.record
    certificates = context.certificates()
    context.write_geometry()
    record.suites.append(certificate_suite(certificates))
    direction_rng, embedding_rng = spawn_rngs(context.rng('rays'), 2)
    directions = context.certifier.ray_directions(
        options.ray_count, direction_rng, options.n_max)
    ray = context.certifier.coercivity_ray_check(directions,
                                                 rng=embedding_rng)
    record.extra['coercivity'] = ray.to_dict()
    record.suites.append(ray_suite(ray))
    LOG.info('Certified %d levels and %d rays', len(certificates),
             options.ray_count)


class CheckGeometryCommand(RunCommand):
    NAME = 'check-geometry'
    DESCRIPTION = RunCommand.FROM_FILE('check-geometry', '_description.rst')
    SYNOPSIS = 'dualvar check-geometry [<config>]'

    def run(self, context, parsed_args):
        check_geometry(context)
