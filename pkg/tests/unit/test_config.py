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
"""Tests for run files: parsing, coercion, validation and defaults."""
import numpy as np
import pytest

from dualvar.config import GridOptions
from dualvar.config import RunConfig
from dualvar.config import SolveOptions
from dualvar.config import VerifyOptions
from dualvar.configloader import raw_config_parse
from dualvar.exceptions import ConfigNotFound
from dualvar.exceptions import ConfigParseError
from dualvar.exceptions import ConfigurationError
from dualvar.exceptions import DataNotFoundError
from dualvar.exceptions import ParamValidationError
from dualvar.exceptions import UnknownConfigKeyError
from dualvar.loader import Loader
from dualvar.validate import OptionShape
from dualvar.validate import ParamValidator


def test_defaults():
    config = RunConfig.from_dict({}, environ={})
    assert config.problem.q == 1.5
    assert config.problem.s == 14.0
    assert config.problem.dim_N == 3
    assert config.grid.M == 400
    assert config.grid.boundary == 'harmonic'
    assert config.grid.grading == 20.0
    assert config.grid.stretch == 1.0
    assert config.solver.grad_tol == 1e-8
    assert config.solver.enforce_nonnegative is False
    assert config.geometry.n_max == 4
    assert config.geometry.starts_per_level == 4
    assert config.verify.eta_exponent_list == [2.5, 4.0, 14.0]
    assert config.output_dir == 'dualvar-out'
    assert config.seed == 20240501


def test_dotted_and_sectioned_keys(tmp_path):
    path = tmp_path / 'run.cfg'
    path.write_text('# comment\n'
                    'problem.q = 1.25\n'
                    'grid.M = 64  ; inline comment\n'
                    '\n'
                    '[solver]\n'
                    'workers = 3\n'
                    'enforce_nonnegative = yes\n'
                    '[problem]\n'
                    'k_kind = algebraic\n')
    assert raw_config_parse(str(path)) == {
        'problem': {'q': '1.25', 'k_kind': 'algebraic'},
        'grid': {'M': '64'},
        'solver': {'workers': '3', 'enforce_nonnegative': 'yes'},
    }
    config = RunConfig.from_file(str(path), environ={})
    assert config.problem.q == 1.25
    assert config.problem.k_family.kind == 'algebraic'
    assert config.grid.M == 64
    assert config.solver.workers == 3
    assert config.solver.enforce_nonnegative is True
    assert config.source == str(path)


def test_later_definition_wins(tmp_path):
    path = tmp_path / 'run.cfg'
    path.write_text('grid.M = 64\n[grid]\nM = 80\n')
    assert RunConfig.from_file(str(path), environ={}).grid.M == 80


def test_missing_file(tmp_path):
    with pytest.raises(ConfigNotFound):
        raw_config_parse(str(tmp_path / 'absent.cfg'))


def test_flat_key_needs_section(tmp_path):
    path = tmp_path / 'run.cfg'
    path.write_text('q = 1.5\n')
    with pytest.raises(ConfigParseError):
        raw_config_parse(str(path))


def test_unreadable_file(tmp_path):
    path = tmp_path / 'run.cfg'
    path.write_bytes(b'problem.q = \xff\xfe\n')
    with pytest.raises(ConfigParseError):
        raw_config_parse(str(path))


def test_unknown_key():
    with pytest.raises(UnknownConfigKeyError) as e:
        RunConfig.from_dict({'grid': {'N': '4'}}, environ={})
    assert 'grid.N' in str(e.value)
    assert 'grid.M' in str(e.value)
    with pytest.raises(UnknownConfigKeyError):
        RunConfig.from_dict({'plot': {'dpi': '100'}}, environ={})


def test_every_invalid_value_is_reported():
    with pytest.raises(ParamValidationError) as e:
        RunConfig.from_dict({'problem': {'q': '2.0', 'dim_N': '2'},
                             'grid': {'M': '8', 'boundary': 'open'},
                             'solver': {'enforce_nonnegative': 'maybe'}},
                            environ={})
    message = str(e.value)
    for name in ['q', 'dim_N', 'M', 'boundary', 'enforce_nonnegative']:
        assert 'parameter %s' % name in message
    assert isinstance(e.value, ConfigurationError)


def test_integer_options_reject_fractions():
    with pytest.raises(ParamValidationError):
        RunConfig.from_dict({'grid': {'M': '100.5'}}, environ={})
    assert RunConfig.from_dict({'grid': {'M': '1e2'}},
                               environ={}).grid.M == 100


def test_invalid_problem_is_a_configuration_error():
    with pytest.raises(ParamValidationError) as e:
        RunConfig.from_dict({'problem': {'k_amplitude': '0'}}, environ={})
    assert 'k must not vanish' in str(e.value)


def test_eta_exponents():
    options = VerifyOptions(eta_exponents='3, 6.5')
    assert options.eta_exponent_list == [3.0, 6.5]
    with pytest.raises(ParamValidationError):
        VerifyOptions(eta_exponents='2, 4')
    with pytest.raises(ParamValidationError):
        VerifyOptions(eta_exponents='four')


def test_output_directory_from_environment():
    config = RunConfig.from_dict({'run': {'output_dir': 'a'}},
                                 environ={'DUALVAR_OUTPUT': 'b'})
    assert config.output_dir == 'b'
    config = RunConfig.from_dict({'run': {'output_dir': 'a'}}, environ={})
    assert config.output_dir == 'a'


def test_replace_and_merge():
    options = SolveOptions(grad_tol=1e-6, memory=5)
    replaced = options.replace(grad_tol=1e-10)
    assert replaced.grad_tol == 1e-10 and replaced.memory == 5
    assert options.grad_tol == 1e-6
    merged = options.merge(SolveOptions(workers=2))
    assert merged.workers == 2 and merged.memory == 5
    assert merged.user_provided_options == {'grad_tol': 1e-6, 'memory': 5,
                                            'workers': 2}
    assert SolveOptions() == SolveOptions()
    with pytest.raises(ParamValidationError):
        options.replace(grad_tol=0.0)


def test_config_argument_errors():
    with pytest.raises(TypeError):
        SolveOptions(tolerance=1.0)
    with pytest.raises(TypeError):
        GridOptions(10.0, R=5.0)
    with pytest.raises(ParamValidationError):
        SolveOptions(max_iters=True)


def test_grid_options_make_grid():
    grid = GridOptions(R=5.0, M=32, boundary='harmonic').make(4)
    assert grid.dim_N == 4 and grid.M == 32 and grid.boundary == 'harmonic'


@pytest.mark.parametrize('M', [400, 800])
def test_grading_is_fixed_under_refinement(M):
    grid = GridOptions(R=20.0, M=M).make(3)
    np.testing.assert_allclose(grid.gaps.max() / grid.gaps.min(), 20.0,
                               rtol=1e-9)
    assert grid.nodes[-1] == 20.0
    assert grid.boundary == 'harmonic'


def test_stretch_composes_with_grading():
    grid = GridOptions(R=10.0, M=102, stretch=1.01, grading=1.0).make(3)
    np.testing.assert_allclose(grid.gaps[1:] / grid.gaps[:-1], 1.01,
                               rtol=1e-10)
    coarse = GridOptions(R=20.0, M=400).make(3)
    fine = GridOptions(R=20.0, M=800).make(3)
    np.testing.assert_allclose(fine.gaps[0] / coarse.gaps[0], 0.5, rtol=0.02)


def test_to_dict_round_trip():
    config = RunConfig.from_dict({'grid': {'M': '64'}}, environ={})
    data = config.to_dict()
    assert list(data) == ['problem', 'grid', 'solver', 'geometry',
                          'transform', 'verify', 'run']
    assert data['grid']['M'] == 64
    again = RunConfig.from_dict(data, environ={})
    assert again.to_dict() == data


def test_validator_coerce():
    shapes = {'flag': OptionShape('flag', 'boolean'),
              'count': OptionShape('count', 'integer', minimum=1)}
    coerced, errors = ParamValidator().coerce(
        {'flag': 'off', 'count': ' 3 ', 'other': '1'}, shapes)
    assert coerced == {'flag': False, 'count': 3}
    assert 'Unknown parameter "other"' in errors.generate_report()


def test_validator_ranges():
    shapes = {'x': OptionShape('x', 'float', minimum=0.0, maximum=1.0,
                               exclusive=True)}
    validator = ParamValidator()
    assert not validator.validate({'x': 0.5}, shapes).has_errors()
    report = validator.validate({'x': 1.0}, shapes).generate_report()
    assert 'valid range: (0.0, 1.0)' in report
    assert validator.validate({'x': float('nan')}, shapes).has_errors()


def test_loader_reports_missing_data(tmp_path):
    loader = Loader(search_paths=[str(tmp_path)])
    with pytest.raises(DataNotFoundError):
        loader.load_json('cli.json')
    (tmp_path / 'extra.yaml').write_text('b: 1\na: 2\n')
    assert list(loader.load_yaml('extra.yaml')) == ['b', 'a']
    assert loader.load_yaml('extra.yaml') is loader.load_yaml('extra.yaml')
