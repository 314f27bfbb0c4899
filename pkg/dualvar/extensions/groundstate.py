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
from dualvar.solve import ground_state
from dualvar.verify import add_sign_law
from dualvar.verify import check_residuals
from dualvar.verify import SuiteReport
from dualvar.verify import weak_residual_sweep

LOG = logging.getLogger('dualvar.extensions.groundstate')

SOLUTION_FILE = 'ground_state.csv'
SWEEP_FILE = 'weak_residual_sweep.csv'


def require_hypotheses(context):
    """Record every failed hypothesis on k and h as a failure."""
    report = context.hypotheses
    if 'hypotheses_passed' in context.record.extra:
        return
    context.record.extra['hypotheses_passed'] = report.passed
    for check in report.checks:
        if not check.passed:
            context.record.failures.append('hypothesis/%s' % check.name)


def solution_checks(suite, reports, context, sign_law=True):
    """Convergence, energy sign, residual and identity checks of solutions.

    Residuals are attached to each converged report. With ``sign_law`` false
    the caller applies the sign law itself, over a wider set of reports.
    """
    options = context.config.verify
    energy = context.energy
    ids = [r.distinct_id for r in reports]
    suite.add('converged', [r.grad_tol - r.grad_norm for r in reports], ids,
              threshold=0.0)
    suite.add('phi<0', [-r.phi_value for r in reports], ids,
              threshold=np.finfo(float).tiny)
    suite.add_tolerance('phi=J(u)', [r.phi_value - r.j_value for r in reports],
                        options.identity_tol *
                        (1.0 + np.abs([r.phi_value for r in reports])), ids)
    converged = [r for r in reports if r.converged]
    if not converged:
        return suite
    residuals = [check_residuals(r, energy, options.weak_tests)
                 for r in converged]
    ids = [r.distinct_id for r in converged]
    suite.add_tolerance('weak_residual',
                        [res.weak_residual for res in residuals],
                        options.weak_tol, ids)
    suite.add('weak_residual<=bound',
              [res.bound - res.weak_residual for res in residuals], ids,
              threshold=0.0)
    if sign_law:
        add_sign_law(suite, converged, context.problem, options.sign_tol)
    return suite


def run_ground_state(context, sweep_tolerances=None):
    """Nonnegative ground state from the level-one sphere, with its checks."""
    require_hypotheses(context)
    options = context.config.verify
    certificate = context.certificates(1)[0]
    report = ground_state(context.energy, context.solver_options,
                          context.rng('ground_state'),
                          certificate=certificate)
    report.distinct_id = 'G'
    suite = SuiteReport('ground_state')
    suite.add('u>=0', [float(np.min(report.u_star.values))], ['G'],
              threshold=0.0)
    solution_checks(suite, [report], context)
    context.record.solutions.append(report)
    context.record.suites.append(suite)
    context.write_solution(SOLUTION_FILE, report)
    context.write_field('v.csv', report.v_star, 'v')
    context.write_field('u.csv', report.u_star, 'u')
    if sweep_tolerances:
        rows = weak_residual_sweep(
            context.energy, sweep_tolerances, context.solver_options,
            context.rng('sweep'), test_count=options.weak_tests,
            certificate=certificate)
        context.record.extra['weak_residual_sweep'] = [
            {'grad_tol': tol, 'weak_residual': residual,
             'grad_norm': grad_norm} for tol, residual, grad_norm in rows]
        context.write_table(SWEEP_FILE,
                            ('grad_tol', 'weak_residual', 'grad_norm'), rows)
    return report


class GroundStateCommand(RunCommand):
    NAME = 'ground-state'
    DESCRIPTION = RunCommand.FROM_FILE('ground-state', '_description.rst')
    SYNOPSIS = ('dualvar ground-state [<config>] '
                '[--sweep-tolerances <tol> [<tol>...]]')
    ARG_TABLE = RunCommand.ARG_TABLE + [
        {'name': 'sweep-tolerances', 'nargs': '+',
         'cli_type_name': 'float',
         'help_text': 'Rerun the ground state at each gradient tolerance '
                      'and write the weak residual per tolerance to '
                      'weak_residual_sweep.csv.'},
    ]

    def run(self, context, parsed_args):
        run_ground_state(context, parsed_args.sweep_tolerances)
