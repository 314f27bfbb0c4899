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
import pytest

from dualvar.energy import EnergyFunctional
from dualvar.grid import make_grid
from dualvar.problem import CoefficientFamily
from dualvar.problem import ProblemSpec
from dualvar.transform import TransformEvaluator

# A run file small enough for the end-to-end commands.
SMALL_RUN = """\
# small grid, two certified levels
grid.R = 10
grid.M = 200
geometry.n_max = 2
geometry.samples = 200
geometry.ray_count = 3
geometry.starts_per_level = 2
verify.transform_samples = 1000
verify.eta_step = 1e-2
verify.identity_samples = 10
verify.weak_tests = 4
solver.grad_tol = 1e-8
"""


@pytest.fixture(autouse=True)
def _no_output_override(monkeypatch):
    monkeypatch.delenv('DUALVAR_OUTPUT', raising=False)


@pytest.fixture
def spec():
    return ProblemSpec()


@pytest.fixture
def grid():
    return make_grid(10.0, 200, 3)


@pytest.fixture
def evaluator():
    return TransformEvaluator()


@pytest.fixture
def energy(spec, grid, evaluator):
    return EnergyFunctional(spec, grid, evaluator)


@pytest.fixture
def energy_without_h(grid, evaluator):
    spec = ProblemSpec(h_family=CoefficientFamily(amplitude=0.0))
    return EnergyFunctional(spec, grid, evaluator)


@pytest.fixture
def run_file(tmp_path):
    """Factory writing a run file whose output goes to ``tmp_path/name``.

    ``extra`` holds further dotted ``section.key = value`` lines.
    """
    def _write(name='out', extra=''):
        path = tmp_path / ('%s.cfg' % name)
        path.write_text(SMALL_RUN + extra +
                        '\n[run]\noutput_dir = %s\n' % (tmp_path / name))
        return path
    return _write
