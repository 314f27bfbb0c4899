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

from dualvar.exceptions import ParamValidationError

TRUE_STRINGS = ('true', 'yes', 'on', '1')
FALSE_STRINGS = ('false', 'no', 'off', '0')


class OptionShape(object):
    """Type and range of one run file option, read from the option schema."""

    def __init__(self, name, type_name, default=None, minimum=None,
                 maximum=None, exclusive=False, exclusive_minimum=False,
                 exclusive_maximum=False, enum=None, help=None):
        self.name = name
        self.type_name = type_name
        self.default = default
        self.minimum = minimum
        self.maximum = maximum
        self.exclusive_minimum = exclusive or exclusive_minimum
        self.exclusive_maximum = exclusive or exclusive_maximum
        self.enum = enum
        self.help = help

    def __repr__(self):
        return 'OptionShape(%r, %r)' % (self.name, self.type_name)

    @classmethod
    def from_schema(cls, name, entry):
        entry = dict(entry)
        return cls(name, entry.pop('type'), **entry)


def validate_parameters(params, shapes):
    """Validates coerced option values against their shapes.

    If there are any validation errors then a ParamValidationError
    will be raised.  If there are no validation errors than no exception
    is raised and a value of None is returned.
    """
    validator = ParamValidator()
    report = validator.validate(params, shapes)
    if report.has_errors():
        raise ParamValidationError(report=report.generate_report())


def type_check(valid_types):
    def _create_type_check_guard(func):
        def _on_passes_type_check(self, param, shape, errors, name):
            if _type_check(param, errors, name):
                return func(self, param, shape, errors, name)

        def _type_check(param, errors, name):
            if isinstance(param, bool) and bool not in valid_types:
                valid_type_names = [t.__name__ for t in valid_types]
                errors.report(name, 'invalid type', param=param,
                              valid_types=valid_type_names)
                return False
            if not isinstance(param, valid_types):
                valid_type_names = [t.__name__ for t in valid_types]
                errors.report(name, 'invalid type', param=param,
                              valid_types=valid_type_names)
                return False
            return True

        return _on_passes_type_check
    return _create_type_check_guard


def range_check(name, value, shape, error_type, errors):
    failed = False
    min_allowed = float('-inf')
    max_allowed = float('inf')
    if shape.minimum is not None:
        min_allowed = shape.minimum
        if value < min_allowed or (shape.exclusive_minimum and
                                   value == min_allowed):
            failed = True
    if shape.maximum is not None:
        max_allowed = shape.maximum
        if value > max_allowed or (shape.exclusive_maximum and
                                   value == max_allowed):
            failed = True
    if value != value:
        failed = True
    if failed:
        errors.report(name, error_type, param=value,
                      valid_range=[min_allowed, max_allowed],
                      open_ends=(shape.exclusive_minimum,
                                 shape.exclusive_maximum))


def enum_check(name, value, shape, error_type, errors):
    if shape.enum and value not in shape.enum:
        errors.report(name, error_type, param=value, valid_values=shape.enum)


class ValidationErrors(object):
    def __init__(self):
        self._errors = []

    def has_errors(self):
        if self._errors:
            return True
        return False

    def generate_report(self):
        error_messages = []
        for error in self._errors:
            error_messages.append(self._format_error(error))
        return '\n'.join(error_messages)

    def _format_error(self, error):
        error_type, name, additional = error
        if error_type == 'unknown field':
            return 'Unknown parameter "%s", must be one of: %s' % (
                name, ', '.join(additional['valid_names']))
        elif error_type == 'invalid type':
            return ('Invalid type for parameter %s, value: %s, type: %s, '
                    'valid types: %s' % (name, additional['param'],
                                         type(additional['param']).__name__,
                                         ', '.join(additional['valid_types'])))
        elif error_type == 'invalid value':
            return 'Invalid value for parameter %s, value: %s, expected: %s' % (
                name, additional['param'], additional['expected'])
        elif error_type == 'invalid enum':
            return ('Invalid value for parameter %s, value: %s, valid values: '
                    '%s' % (name, additional['param'],
                            ', '.join(additional['valid_values'])))
        elif error_type == 'invalid range':
            low_open, high_open = additional['open_ends']
            return ('Invalid range for parameter %s, value: %s, valid range: '
                    '%s%s, %s%s' % (name, additional['param'],
                                    '(' if low_open else '[',
                                    additional['valid_range'][0],
                                    additional['valid_range'][1],
                                    ')' if high_open else ']'))
        return '%s: %s' % (name, error_type)

    def report(self, name, reason, **kwargs):
        self._errors.append((reason, name, kwargs))


class ParamValidator(object):
    """Coerces and validates option values section by section."""

    def validate(self, params, shapes):
        errors = ValidationErrors()
        for name, value in params.items():
            if name not in shapes:
                errors.report(name, 'unknown field',
                              valid_names=list(shapes))
                continue
            self._validate(value, shapes[name], errors, name)
        return errors

    def coerce(self, params, shapes):
        """Turn raw strings into typed values.

        :returns: (coerced dict, ValidationErrors)
        """
        errors = ValidationErrors()
        coerced = {}
        for name, value in params.items():
            if name not in shapes:
                errors.report(name, 'unknown field', valid_names=list(shapes))
                continue
            shape = shapes[name]
            if not isinstance(value, str):
                coerced[name] = value
                continue
            converter = getattr(self, '_coerce_%s' % shape.type_name)
            try:
                coerced[name] = converter(value.strip())
            except ValueError:
                errors.report(name, 'invalid value', param=value,
                              expected=shape.type_name)
        return coerced, errors

    def _coerce_integer(self, value):
        number = float(value)
        if number != int(number):
            raise ValueError(value)
        return int(number)

    def _coerce_float(self, value):
        return float(value)

    def _coerce_string(self, value):
        return value

    def _coerce_boolean(self, value):
        lowered = value.lower()
        if lowered in TRUE_STRINGS:
            return True
        if lowered in FALSE_STRINGS:
            return False
        raise ValueError(value)

    def _validate(self, param, shape, errors, name):
        getattr(self, '_validate_%s' % shape.type_name)(param, shape, errors,
                                                          name)

    @type_check(valid_types=(bool,))
    def _validate_boolean(self, param, shape, errors, name):
        pass

    @type_check(valid_types=(int,))
    def _validate_integer(self, param, shape, errors, name):
        range_check(name, param, shape, 'invalid range', errors)

    @type_check(valid_types=(float, int))
    def _validate_float(self, param, shape, errors, name):
        range_check(name, param, shape, 'invalid range', errors)

    @type_check(valid_types=(str,))
    def _validate_string(self, param, shape, errors, name):
        enum_check(name, param, shape, 'invalid enum', errors)
