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

from dualvar.extensions.commands import RunCommand
from dualvar.extensions.groundstate import require_hypotheses
from dualvar.extensions.groundstate import solution_checks
from dualvar.solve import multi_start
from dualvar.verify import add_sign_law
from dualvar.verify import SuiteReport

LOG = logging.getLogger('dualvar.extensions.multisolutions')


def run_multi_solutions(context):
    """Descents from every certified sphere, clustered into distinct
    solutions. The count is reported, not asserted.
    """
    require_hypotheses(context)
    options = context.config.geometry
    certificates = context.certificates()
    distinct, reports = multi_start(
        context.energy, options.n_max, options.starts_per_level,
        context.solver_options, context.rng('multi_start'),
        support_level=options.support_level, certificates=certificates)
    context.record.extra['multi_start'] = {
        'starts': len(reports),
        'converged': sum(1 for r in reports if r.converged),
        'distinct': len(distinct),
        'energies': [r.phi_value for r in distinct],
    }
    suite = SuiteReport('multi_solutions')
    # Every converged start is a critical point, clustered or not.
    add_sign_law(suite, reports, context.problem,
                 context.config.verify.sign_tol)
    if distinct:
        solution_checks(suite, distinct, context, sign_law=False)
    else:
        context.record.failures.append('multi_solutions/no_solution')
    for report in distinct:
        context.write_solution('solution_%s.csv' % report.distinct_id, report)
    context.record.solutions.extend(distinct)
    context.record.suites.append(suite)
    return distinct


class MultiSolutionsCommand(RunCommand):
    NAME = 'multi-solutions'
    DESCRIPTION = RunCommand.FROM_FILE('multi-solutions', '_description.rst')
    SYNOPSIS = 'dualvar multi-solutions [<config>]'

    def run(self, context, parsed_args):
        run_multi_solutions(context)
