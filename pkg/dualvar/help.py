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
"""Plain text help pages for the driver and its commands."""
import sys
import textwrap

INDENT = '    '
WIDTH = 79


class HelpDocument(object):
    """Accumulates a help page section by section."""

    def __init__(self):
        self._lines = []

    def h2(self, title):
        if self._lines:
            self._lines.append('')
        self._lines.append(title.upper())

    def paragraph(self, text, indent=1):
        prefix = INDENT * indent
        for block in (text or '').strip().split('\n\n'):
            block = ' '.join(block.split())
            self._lines.extend(textwrap.wrap(
                block, WIDTH, initial_indent=prefix,
                subsequent_indent=prefix) or [''])
            self._lines.append('')
        if self._lines and self._lines[-1] == '':
            self._lines.pop()

    def literal(self, text, indent=1):
        for line in (text or '').rstrip().split('\n'):
            self._lines.append((INDENT * indent + line).rstrip())

    def writeln(self, text, indent=1):
        self._lines.append(INDENT * indent + text)

    def getvalue(self):
        return '\n'.join(self._lines) + '\n'


def option_synopsis(argument):
    if argument.synopsis:
        return argument.synopsis
    if argument.positional_arg:
        option = '<%s>' % argument.name
    elif argument.cli_type_name == 'boolean':
        option = argument.cli_name
    else:
        option = '%s <value>' % argument.cli_name
    if not argument.required:
        option = '[%s]' % option
    return option


class HelpCommand(object):
    """Renders the help page of ``obj``.

    :param command_table: subcommands listed under AVAILABLE COMMANDS.
    :param arg_table: arguments documented under OPTIONS.
    """

    def __init__(self, obj, command_table, arg_table):
        self.obj = obj
        self.command_table = command_table or {}
        self.arg_table = arg_table or {}

    @property
    def name(self):
        return self.obj.name

    @property
    def command_lineage(self):
        return self.name

    @property
    def description(self):
        return ''

    @property
    def synopsis(self):
        return ''

    @property
    def examples(self):
        return ''

    @property
    def usage(self):
        return ''

    def build_document(self):
        doc = HelpDocument()
        doc.h2('Name')
        doc.writeln(self.command_lineage.replace('.', ' '))
        if self.description:
            doc.h2('Description')
            doc.paragraph(self.description)
        doc.h2('Synopsis')
        if self.synopsis:
            doc.literal(self.synopsis)
        else:
            doc.writeln(self.command_lineage.replace('.', ' '))
            for argument in self.arg_table.values():
                doc.writeln(option_synopsis(argument), indent=2)
        if self.usage:
            doc.paragraph(self.usage)
        if self.arg_table:
            doc.h2('Options')
            for argument in self.arg_table.values():
                self._document_option(doc, argument)
        if self.command_table:
            doc.h2('Available Commands')
            for command_name in sorted(self.command_table):
                doc.writeln('o %s' % command_name)
        if self.examples:
            doc.h2('Examples')
            doc.literal(self.examples)
        return doc

    def _document_option(self, doc, argument):
        header = '%s (%s)' % (argument.cli_name, argument.cli_type_name)
        doc.writeln(header)
        if argument.documentation:
            doc.paragraph(argument.documentation, indent=2)
        if argument.choices:
            doc.writeln('Possible values: %s' % ', '.join(argument.choices),
                        indent=2)
        doc.writeln('')

    def __call__(self, args, parsed_globals, stream=None):
        if stream is None:
            stream = sys.stdout
        stream.write(self.build_document().getvalue())
        return 0


class ProviderHelpCommand(HelpCommand):
    """Top level help: the global options and the list of commands."""

    def __init__(self, command_table, arg_table, description, synopsis,
                 usage):
        super(ProviderHelpCommand, self).__init__(None, command_table,
                                                  arg_table)
        self._description = description
        self._synopsis = synopsis
        self._usage = usage

    @property
    def name(self):
        return 'dualvar'

    @property
    def description(self):
        return self._description

    @property
    def synopsis(self):
        return self._synopsis

    @property
    def usage(self):
        return self._usage
