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
from dualvar.utils import spawn_rngs
from dualvar.verify import check_energy_identity
from dualvar.verify import check_eta_convexity
from dualvar.verify import run_transform_properties

LOG = logging.getLogger('dualvar.extensions.verifytransform')


def convexity_exponents(context):
    """Configured exponents plus the problem's own s."""
    exponents = list(context.config.verify.eta_exponent_list)
    if context.problem.s not in exponents:
        exponents.append(context.problem.s)
    return sorted(set(exponents))


def verify_transform(context):
    """Transform properties, convexity of |f|^s and the identity Phi = J(f)."""
    options = context.config.verify
    record = context.record
    record.suites.append(run_transform_properties(
        context.evaluator, options.transform_samples, options.t_range,
        context.rng('transform')))
    exponents = convexity_exponents(context)
    for s, rng in zip(exponents,
                      spawn_rngs(context.rng('convexity'), len(exponents))):
        record.suites.append(check_eta_convexity(
            context.evaluator, s, options.eta_range, options.eta_step,
            rng=rng))
    record.suites.append(check_energy_identity(
        context.energy, options.identity_samples,
        context.rng('energy_identity'), options.identity_tol,
        witness_dir=context.output_dir))
    record.extra['mu'] = context.evaluator.cached_mu
    record.extra['delta'] = context.evaluator.cached_delta
    LOG.info('Transform suites: %d checks, %d failed',
             sum(len(s.checks) for s in record.suites),
             sum(len(s.failed) for s in record.suites))


class VerifyTransformCommand(RunCommand):
    NAME = 'verify-transform'
    DESCRIPTION = RunCommand.FROM_FILE('verify-transform', '_description.rst')
    SYNOPSIS = 'dualvar verify-transform [<config>]'

    def run(self, context, parsed_args):
        verify_transform(context)
