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
from dualvar.extensions.checkgeometry import check_geometry
from dualvar.extensions.commands import RunCommand
from dualvar.extensions.groundstate import run_ground_state
from dualvar.extensions.multisolutions import run_multi_solutions
from dualvar.extensions.verifytransform import verify_transform


class CheckAllCommand(RunCommand):
    NAME = 'check-all'
    DESCRIPTION = RunCommand.FROM_FILE('check-all', '_description.rst')
    SYNOPSIS = 'dualvar check-all [<config>]'

    def run(self, context, parsed_args):
        verify_transform(context)
        check_geometry(context)
        run_ground_state(context)
        run_multi_solutions(context)
