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


class DualVarError(Exception):
    """
    The base exception class for dualvar exceptions.
    """
    fmt = 'An unspecified error occured'

    def __init__(self, **kwargs):
        msg = self.fmt.format(**kwargs)
        Exception.__init__(self, msg)
        self.kwargs = kwargs


class InvalidParameterError(DualVarError):
    """
    A numerical routine was called outside of its domain.
    """
    fmt = 'Invalid value ({value}) for parameter {param}: {reason}'


class InvalidExponentError(DualVarError):
    """
    The exponent leaves the range in which the conjugate exponent is defined.
    """
    fmt = ('Invalid exponent p={p} for dimension N={dim_N}: '
           'denominator 2N - p(N-2) = {denominator} is not positive')


class TransformInversionError(DualVarError):
    """
    Neither Newton nor the bisection fallback inverted the antiderivative.
    """
    fmt = ('Unable to evaluate f at t={t} (index {index}) within '
           '{max_iters} iterations; residual {residual}')


class LineSearchError(DualVarError):
    """
    No step satisfying the sufficient decrease condition was found.
    """
    fmt = ('Line search failed at iteration {iteration}: no Armijo step '
           'above {min_step} along a direction with slope {slope}')


class DegenerateSubspaceError(DualVarError):
    """
    The subspace bumps miss the support of k.
    """
    fmt = ('Degenerate subspace at level n={level}: A={A} is not above '
           '{threshold}; the basis does not meet the support of k')


class GeometryViolationError(DualVarError):
    """
    A sphere sample reached a nonnegative value of the energy.
    """
    fmt = ('Energy is not negative on the sphere of radius {rho} at level '
           'n={level}: sampled value {value}')


class CoercivityViolationError(DualVarError):
    """
    The energy failed to grow along a ray.
    """
    fmt = 'Energy is not coercive along direction {direction}: {reason}'


class PropertyViolationError(DualVarError):
    """
    A sampled property check failed.
    """
    fmt = ('Property {property} of suite {suite} violated: worst margin '
           '{margin} at witness {witness}')


class PreconditionError(DualVarError):
    """
    A check was requested on an input that does not meet its precondition.
    """
    fmt = 'Precondition of {check} not met: {reason}'


class ConfigurationError(DualVarError):
    """
    Base class for every error caused by the run configuration.
    """


class ConfigNotFound(ConfigurationError):
    """
    The specified configuration file could not be found.
    """
    fmt = 'The specified config file ({path}) could not be found.'


class ConfigParseError(ConfigurationError):
    """
    The configuration file could not be parsed.
    """
    fmt = 'Unable to parse config file: {path}'


class UnknownConfigKeyError(ConfigurationError):
    fmt = ('Unknown configuration key "{key}" in {path}, must be one of: '
           '{valid_keys}')


class ParamValidationError(ConfigurationError):
    fmt = 'Parameter validation failed:\n{report}'


class DataNotFoundError(DualVarError):
    """
    The data associated with a particular path could not be loaded.
    """
    fmt = 'Unable to load data for: {data_path}'
