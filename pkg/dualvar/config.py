# Copyright 2012-2013 Amazon.com, Inc. or its affiliates. All Rights Reserved.
#
# Modifications made by Cloudera are:
#     Copyright (c) 2016 Cloudera, Inc. All rights reserved.
#
# Modifications made by the dualvar authors are:
#     Copyright (c) 2026 The dualvar authors.
#
# Licensed under the Apache License, Version 2.0 (the "License"). You
# may not use this file except in compliance with the License. A copy of
# the License is located at
#
#     http://aws.amazon.com/apache2.0/
#
# or in the "license" file accompanying this file. This file is
# distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF
# ANY KIND, either express or implied. See the License for the specific
# language governing permissions and limitations under the License.

from collections import OrderedDict
import copy
import logging
import os

from dualvar import DEFAULT_CONFIG_SECTIONS
from dualvar import OUTPUT_DIR_ENV_VAR
from dualvar.configloader import raw_config_parse
from dualvar.exceptions import InvalidParameterError
from dualvar.exceptions import ParamValidationError
from dualvar.exceptions import UnknownConfigKeyError
from dualvar.grid import graded_stretch
from dualvar.grid import make_grid
from dualvar.loader import default_loader
from dualvar.problem import CoefficientFamily
from dualvar.problem import ProblemSpec
from dualvar.transform import TransformEvaluator
from dualvar.validate import OptionShape
from dualvar.validate import ParamValidator
from dualvar.validate import validate_parameters

LOG = logging.getLogger('dualvar.config')


def option_shapes(section):
    """OptionShape per key of ``section``, in schema order."""
    schema = default_loader().load_option_schema()
    return OrderedDict((name, OptionShape.from_schema(name, entry))
                       for name, entry in schema[section].items())


def _section_defaults(section):
    return OrderedDict((name, shape.default)
                       for name, shape in option_shapes(section).items())


class Config(object):
    """Options of one section of a run file.

    Subclasses name their ``SECTION``; defaults, types and ranges come from
    the bundled option schema. Values are validated on construction.
    """

    SECTION = None
    OPTION_DEFAULTS = OrderedDict()

    def __init__(self, *args, **kwargs):
        self._user_provided_options = self._record_user_provided_options(
            args, kwargs)

        # Merge the user_provided options onto the default options
        config_vars = copy.copy(self.OPTION_DEFAULTS)
        config_vars.update(self._user_provided_options)
        validate_parameters(config_vars, self.shapes())

        for key, value in config_vars.items():
            setattr(self, key, value)

    def __repr__(self):
        return '%s(%s)' % (self.__class__.__name__, ', '.join(
            '%s=%r' % (key, getattr(self, key))
            for key in self.OPTION_DEFAULTS))

    def __eq__(self, other):
        if not isinstance(other, self.__class__):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    @classmethod
    def shapes(cls):
        return option_shapes(cls.SECTION)

    def _record_user_provided_options(self, args, kwargs):
        option_order = list(self.OPTION_DEFAULTS)
        user_provided_options = {}

        for key, value in kwargs.items():
            if key in self.OPTION_DEFAULTS:
                user_provided_options[key] = value
            else:
                raise TypeError(
                    'Got unexpected keyword argument \'%s\'' % key)

        if len(args) > len(option_order):
            raise TypeError(
                'Takes at most %s arguments (%s given)' % (
                    len(option_order), len(args)))

        for i, arg in enumerate(args):
            if option_order[i] in user_provided_options:
                raise TypeError(
                    'Got multiple values for keyword argument \'%s\'' % (
                        option_order[i]))
            user_provided_options[option_order[i]] = arg

        return user_provided_options

    @property
    def user_provided_options(self):
        return dict(self._user_provided_options)

    def merge(self, other_config):
        """Merges the config object with another config object.

        Values explicitly provided to ``other_config`` take precedence.

        :returns: A new config object of the same class.
        """
        config_options = copy.copy(self._user_provided_options)
        config_options.update(other_config._user_provided_options)
        return self.__class__(**config_options)

    def replace(self, **kwargs):
        """A copy with some options overridden."""
        config_options = copy.copy(self._user_provided_options)
        config_options.update(kwargs)
        return self.__class__(**config_options)

    def to_dict(self):
        return OrderedDict((key, getattr(self, key))
                           for key in self.OPTION_DEFAULTS)


class ProblemOptions(Config):
    SECTION = 'problem'
    OPTION_DEFAULTS = _section_defaults(SECTION)

    def to_spec(self):
        """:rtype: dualvar.problem.ProblemSpec"""
        return ProblemSpec(
            dim_N=self.dim_N, q=self.q, s=self.s,
            k_family=CoefficientFamily(self.k_kind, self.k_amplitude,
                                       self.k_decay),
            h_family=CoefficientFamily(self.h_kind, self.h_amplitude,
                                       self.h_decay))


class GridOptions(Config):
    SECTION = 'grid'
    OPTION_DEFAULTS = _section_defaults(SECTION)

    def make(self, dim_N):
        """Grid of these options; the gap ratio combines ``stretch`` with
        the M-independent ``grading``."""
        stretch = self.stretch * graded_stretch(self.grading, self.M)
        return make_grid(self.R, self.M, dim_N, stretch=stretch,
                         boundary=self.boundary)


class SolveOptions(Config):
    """Settings of the descent solver.

    :type grad_tol: float
    :param grad_tol: Max-norm tolerance on the weighted gradient.
    :type memory: int
    :param memory: Number of stored quasi-Newton pairs; 0 gives preconditioned
        steepest descent.
    :type preconditioner: str
    :param preconditioner: ``weighted`` scales by inverse quadrature weights,
        ``sobolev`` solves with stiffness plus weights.
    """
    SECTION = 'solver'
    OPTION_DEFAULTS = _section_defaults(SECTION)


class GeometryOptions(Config):
    SECTION = 'geometry'
    OPTION_DEFAULTS = _section_defaults(SECTION)


class TransformOptions(Config):
    SECTION = 'transform'
    OPTION_DEFAULTS = _section_defaults(SECTION)

    def make_evaluator(self):
        return TransformEvaluator(self.newton_tol, self.max_newton_iters)


class VerifyOptions(Config):
    SECTION = 'verify'
    OPTION_DEFAULTS = _section_defaults(SECTION)

    def __init__(self, *args, **kwargs):
        super(VerifyOptions, self).__init__(*args, **kwargs)
        try:
            self.eta_exponent_list
        except ValueError:
            raise ParamValidationError(
                report='Invalid value for parameter eta_exponents, value: %s, '
                       'expected: comma separated numbers > 2'
                       % self.eta_exponents)

    @property
    def eta_exponent_list(self):
        exponents = [float(item) for item in self.eta_exponents.split(',')
                     if item.strip()]
        if any(not value > 2 for value in exponents):
            raise ValueError(self.eta_exponents)
        return exponents


class RunOptions(Config):
    SECTION = 'run'
    OPTION_DEFAULTS = _section_defaults(SECTION)


SECTION_CLASSES = OrderedDict([
    ('problem', ProblemOptions),
    ('grid', GridOptions),
    ('solver', SolveOptions),
    ('geometry', GeometryOptions),
    ('transform', TransformOptions),
    ('verify', VerifyOptions),
    ('run', RunOptions),
])


class RunConfig(object):
    """Every option of a run, grouped by section.

    :type source: str
    :param source: Where the options came from, used in error messages.
    """

    def __init__(self, problem=None, grid=None, solver=None, geometry=None,
                 transform=None, verify=None, run=None, source='<defaults>'):
        self.problem_options = problem or ProblemOptions()
        self.grid = grid or GridOptions()
        self.solver = solver or SolveOptions()
        self.geometry = geometry or GeometryOptions()
        self.transform = transform or TransformOptions()
        self.verify = verify or VerifyOptions()
        self.run = run or RunOptions()
        self.source = source
        try:
            self.problem = self.problem_options.to_spec()
        except InvalidParameterError as e:
            raise ParamValidationError(report=str(e))

    def __repr__(self):
        return 'RunConfig(source=%r)' % self.source

    @property
    def output_dir(self):
        return self.run.output_dir

    @property
    def seed(self):
        return self.run.seed

    def section(self, name):
        if name == 'problem':
            return self.problem_options
        return getattr(self, name)

    @classmethod
    def from_dict(cls, mapping, source='<dict>', environ=None):
        """Build from ``{section: {key: value}}``; values may be strings.

        :raises UnknownConfigKeyError: for sections or keys outside the
            schema.
        :raises ParamValidationError: listing every invalid value.
        """
        if environ is None:
            environ = os.environ
        mapping = dict((name, dict(values))
                       for name, values in mapping.items())
        valid_keys = ['%s.%s' % (name, key)
                      for name in DEFAULT_CONFIG_SECTIONS
                      for key in SECTION_CLASSES[name].OPTION_DEFAULTS]
        for name, values in mapping.items():
            for key in values:
                dotted = '%s.%s' % (name, key)
                if dotted not in valid_keys:
                    raise UnknownConfigKeyError(key=dotted, path=source,
                                                valid_keys=', '.join(valid_keys))
        if environ.get(OUTPUT_DIR_ENV_VAR):
            LOG.debug('Output directory overridden by %s', OUTPUT_DIR_ENV_VAR)
            mapping.setdefault('run', {})['output_dir'] = \
                environ[OUTPUT_DIR_ENV_VAR]
        validator = ParamValidator()
        sections = {}
        reports = []
        for name, config_class in SECTION_CLASSES.items():
            coerced, errors = validator.coerce(mapping.get(name, {}),
                                               config_class.shapes())
            if errors.has_errors():
                reports.append(errors.generate_report())
                continue
            try:
                sections[name] = config_class(**coerced)
            except ParamValidationError as e:
                reports.append(e.kwargs['report'])
        if reports:
            raise ParamValidationError(report='\n'.join(reports))
        return cls(source=source, **sections)

    @classmethod
    def from_file(cls, path, environ=None):
        LOG.debug('Loading run configuration from %s', path)
        return cls.from_dict(raw_config_parse(path), source=path,
                             environ=environ)

    def to_dict(self):
        return OrderedDict((name, self.section(name).to_dict())
                           for name in SECTION_CLASSES)
