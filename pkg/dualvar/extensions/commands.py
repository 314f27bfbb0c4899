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
import logging
import os

import dualvar
from dualvar import EXIT_FAILED_CHECK
from dualvar import EXIT_OK
from dualvar.argparser import ArgTableArgParser
from dualvar.arguments import CustomArgument
from dualvar.clicommand import CLICommand
from dualvar.config import RunConfig
from dualvar.context import RunContext
from dualvar.exceptions import CoercivityViolationError
from dualvar.exceptions import GeometryViolationError
from dualvar.exceptions import PropertyViolationError
from dualvar.formatter import get_formatter
from dualvar.help import HelpCommand

LOG = logging.getLogger('dualvar.extensions.commands')

# Exceptions that mean a property did not hold, as opposed to a broken run.
CHECK_FAILURES = (PropertyViolationError, GeometryViolationError,
                  CoercivityViolationError)

_open = open


class _FromFile(object):

    def __init__(self, *paths, **kwargs):
        """
        ``root_module`` names the package whose ``examples`` directory holds
        the file; it defaults to ``dualvar``.
        """
        self.filename = None
        if paths:
            self.filename = os.path.join(*paths)
        self.root_module = kwargs.get('root_module', dualvar)


class BasicCommand(CLICommand):
    """Top level command with no subcommands.

    Subclasses set ``NAME``, ``DESCRIPTION``, ``ARG_TABLE`` (a list of
    :class:`CustomArgument` keyword dicts) and implement ``_run_main``.
    ``DESCRIPTION``, ``SYNOPSIS`` and ``EXAMPLES`` may be ``FROM_FILE``, in
    which case they are read from
    ``dualvar/examples/<command name>/_<attribute>.rst``.
    """

    NAME = 'commandname'
    DESCRIPTION = 'describe the command'
    SYNOPSIS = ''
    EXAMPLES = ''
    ARG_TABLE = []

    FROM_FILE = _FromFile

    def __init__(self):
        self._arg_table = None
        self._lineage = [self]

    def __call__(self, args, parsed_globals):
        parser = ArgTableArgParser(self.arg_table, self.name)
        parsed_args, remaining = parser.parse_known_args(args)
        if getattr(parsed_args, 'help', None) == 'help':
            return self.create_help_command()(parsed_args, parsed_globals)
        if remaining:
            raise ValueError("Unknown options: %s" % ','.join(remaining))
        return self._run_main(parsed_args, parsed_globals)

    def _run_main(self, parsed_args, parsed_globals):
        # parsed_args carries the ARG_TABLE entries under their dest names,
        # parsed_globals the driver options (output, color, debug).
        raise NotImplementedError("_run_main")

    def create_help_command(self):
        return BasicHelp(self, command_table={}, arg_table=self.arg_table)

    def _build_arg_table(self):
        arg_table = OrderedDict()
        for arg_data in self.ARG_TABLE:
            arg_table[arg_data['name']] = CustomArgument(**arg_data)
        return arg_table

    @property
    def arg_table(self):
        if self._arg_table is None:
            self._arg_table = self._build_arg_table()
        return self._arg_table

    @classmethod
    def add_command(cls, command_table):
        command_table[cls.NAME] = cls()

    @property
    def name(self):
        return self.NAME

    @property
    def lineage(self):
        return self._lineage

    @lineage.setter
    def lineage(self, value):
        self._lineage = value


class RunCommand(BasicCommand):
    """A command that loads a run file, computes, and writes report.json.

    ``_run_main`` loads the configuration and calls ``run(context,
    parsed_args)``; failed properties turn into exit status 1 after the
    report has been written.
    """

    ARG_TABLE = [
        {'name': 'config', 'positional_arg': True, 'nargs': '?',
         'help_text': 'Path of the run file. Built-in defaults are used '
                      'when omitted.'},
    ]

    def run(self, context, parsed_args):
        raise NotImplementedError("run")

    def load_config(self, parsed_args):
        path = getattr(parsed_args, 'config', None)
        if path is None:
            LOG.debug('No run file given, using defaults')
            return RunConfig.from_dict({}, source='<defaults>')
        return RunConfig.from_file(os.path.expanduser(path))

    def _run_main(self, parsed_args, parsed_globals):
        context = RunContext(self.load_config(parsed_args))
        try:
            self.run(context, parsed_args)
        except CHECK_FAILURES as e:
            context.record.failures.append(str(e))
            context.write_report(self.NAME)
            raise
        context.write_report(self.NAME)
        formatter = get_formatter(parsed_globals.output, parsed_globals)
        formatter(self.NAME, summarize(self.NAME, context))
        if context.record.passed:
            return EXIT_OK
        return EXIT_FAILED_CHECK


def summarize(command_name, context):
    """The condensed run summary printed to stdout."""
    record = context.record
    summary = OrderedDict([
        ('command', command_name),
        ('passed', record.passed),
        ('output_dir', context.output_dir),
    ])
    checks = [OrderedDict([('suite', check.suite),
                           ('property', check.property),
                           ('worst_margin', check.worst_margin),
                           ('passed', check.passed)])
              for suite in record.suites for check in suite.checks]
    if checks:
        summary['checks'] = checks
    if record.certificates:
        summary['geometry'] = [
            OrderedDict([('n', c.level), ('rho', c.rho), ('theta', c.theta),
                         ('max_phi_sampled', c.max_phi_sampled),
                         ('passed', c.passed)])
            for c in record.certificates]
    if record.solutions:
        summary['solutions'] = [
            OrderedDict([('id', r.distinct_id), ('phi', r.phi_value),
                         ('grad_norm', r.grad_norm),
                         ('iterations', r.iterations),
                         ('multiplicity', r.multiplicity)])
            for r in record.solutions]
    if record.failed_properties():
        summary['failed'] = record.failed_properties()
    return summary


class BasicHelp(HelpCommand):

    def __init__(self, command_object, command_table, arg_table):
        super(BasicHelp, self).__init__(command_object, command_table,
                                        arg_table)
        self._description = command_object.DESCRIPTION
        self._synopsis = command_object.SYNOPSIS
        self._examples = command_object.EXAMPLES

    @property
    def name(self):
        return self.obj.NAME

    @property
    def command_lineage(self):
        return 'dualvar.' + '.'.join(self.obj.lineage_names)

    @property
    def description(self):
        return self._get_doc_contents('_description')

    @property
    def synopsis(self):
        return self._get_doc_contents('_synopsis')

    @property
    def examples(self):
        return self._get_doc_contents('_examples')

    def _get_doc_contents(self, attr_name):
        value = getattr(self, attr_name)
        if isinstance(value, BasicCommand.FROM_FILE):
            if value.filename is not None:
                trailing_path = value.filename
            else:
                trailing_path = os.path.join(self.name, attr_name + '.rst')
            doc_path = os.path.join(
                os.path.abspath(os.path.dirname(value.root_module.__file__)),
                'examples', trailing_path)
            with _open(doc_path) as f:
                return f.read()
        return value
