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
import platform
import sys

from dualvar import EXIT_CONFIG_ERROR
from dualvar import EXIT_FAILED_CHECK
from dualvar import EXIT_UNEXPECTED
from dualvar import RELEASE
from dualvar import VERSION
from dualvar.argparser import MainArgParser
from dualvar.arguments import CustomArgument
from dualvar.exceptions import ConfigurationError
from dualvar.extensions.checkall import CheckAllCommand
from dualvar.extensions.checkgeometry import CheckGeometryCommand
from dualvar.extensions.commands import CHECK_FAILURES
from dualvar.extensions.groundstate import GroundStateCommand
from dualvar.extensions.multisolutions import MultiSolutionsCommand
from dualvar.extensions.verifytransform import VerifyTransformCommand
from dualvar.help import ProviderHelpCommand
from dualvar.loader import default_loader

LOG = logging.getLogger('dualvar.clidriver')
ROOT_LOGGER = logging.getLogger('')
LOG_FORMAT = ('%(asctime)s - %(threadName)s - %(name)s - %(levelname)s - %(message)s')


def main():
    driver = CLIDriver()
    return driver.main()


class CLIDriver(object):

    def __init__(self, loader=None):
        if loader is None:
            loader = default_loader()
        self._loader = loader
        self._cli_data = self._loader.load_json('cli.json')
        self._command_table = self._build_command_table()
        self._argument_table = self._build_argument_table()

    def main(self, args=None):
        """Run one command and return its exit status.

        0 when every check passed, 1 when a property failed, 2 on a
        configuration error and 255 on anything else.
        """
        if args is None:
            args = sys.argv[1:]
        parser = self._create_parser()
        command_table = self._get_command_table()
        if len(args) == 0 or (len(args) == 1 and args[0] == '--help'):
            args = ['help']
        parsed_args, remaining = parser.parse_known_args(args)
        try:
            self._handle_top_level_args(parsed_args)
            self._warn_for_non_public_release()
            return command_table[parsed_args.command](remaining, parsed_args)
        except ConfigurationError as e:
            LOG.debug("Configuration error caught in main()", exc_info=True)
            self._write_error(e)
            return EXIT_CONFIG_ERROR
        except CHECK_FAILURES as e:
            LOG.debug("Check failure caught in main()", exc_info=True)
            self._write_error(e)
            return EXIT_FAILED_CHECK
        except Exception as e:
            LOG.debug("Exception caught in main()", exc_info=True)
            self._write_error(e)
            return EXIT_UNEXPECTED

    def _write_error(self, error):
        sys.stderr.write("\n")
        sys.stderr.write("%s\n" % str(error))

    def _get_cli_data(self):
        return self._cli_data

    def _get_command_table(self):
        return self._command_table

    def _get_argument_table(self):
        return self._argument_table

    def _build_command_table(self):
        commands = OrderedDict()
        VerifyTransformCommand.add_command(commands)
        CheckGeometryCommand.add_command(commands)
        GroundStateCommand.add_command(commands)
        MultiSolutionsCommand.add_command(commands)
        CheckAllCommand.add_command(commands)
        return commands

    def _build_argument_table(self):
        argument_table = OrderedDict()
        cli_arguments = self._get_cli_data().get('options', {})
        for option in cli_arguments:
            option_params = copy.copy(cli_arguments[option])
            cli_argument = self._create_cli_argument(option, option_params)
            cli_argument.add_to_arg_table(argument_table)
        return argument_table

    def _create_cli_argument(self, option_name, option_params):
        return CustomArgument(
            option_name,
            help_text=option_params.get('help', ''),
            dest=option_params.get('dest'),
            default=option_params.get('default'),
            action=option_params.get('action'),
            required=option_params.get('required'),
            choices=option_params.get('choices'),
            cli_type_name=option_params.get('type'))

    def _create_help_command(self):
        cli_data = self._get_cli_data()
        return ProviderHelpCommand(OrderedDict(self._get_command_table()),
                                   self._get_argument_table(),
                                   cli_data.get('description', None),
                                   cli_data.get('synopsis', None),
                                   cli_data.get('help_usage', None))

    def _create_parser(self):
        command_table = self._get_command_table()
        command_table['help'] = self._create_help_command()
        cli_data = self._get_cli_data()
        return MainArgParser(
            command_table,
            VERSION,
            cli_data.get('description', None),
            self._get_argument_table())

    def _handle_top_level_args(self, args):
        if args.debug:
            self._setup_logger(logging.DEBUG)
            LOG.debug("dualvar version: %s Python/%s %s/%s", VERSION,
                      platform.python_version(), platform.system(),
                      platform.release())
            LOG.debug("Arguments entered to CLI: %s", sys.argv[1:])

    def _setup_logger(self, log_level):
        ROOT_LOGGER.setLevel(logging.DEBUG)
        ch = logging.StreamHandler()
        ch.setLevel(log_level)
        formatter = logging.Formatter(LOG_FORMAT)
        ch.setFormatter(formatter)
        ROOT_LOGGER.addHandler(ch)

    def _warn_for_non_public_release(self):
        if RELEASE != 'PUBLIC':
            LOG.warning('You are running a %s release of dualvar.', RELEASE)
