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
import json
import sys

from dualvar import text
from dualvar.table import ColorizedStyler
from dualvar.table import MultiTable
from dualvar.table import Styler
from dualvar.utils import to_plain


class Formatter(object):
    """Prints the summary of a command run to a stream."""

    def __init__(self, args):
        self._args = args

    def __call__(self, command_name, summary, stream=None):
        if stream is None:
            # Look up stdout on each call; colorama may have wrapped it.
            stream = sys.stdout
        try:
            self._format_summary(command_name, to_plain(summary), stream)
        except IOError:
            # The reading end of a pipe went away.
            pass
        finally:
            try:
                stream.flush()
            except IOError:
                pass

    def _format_summary(self, command_name, summary, stream):
        raise NotImplementedError('_format_summary')


class JSONFormatter(Formatter):

    def _format_summary(self, command_name, summary, stream):
        json.dump(summary, stream, indent=4, sort_keys=True)
        stream.write('\n')


class TableFormatter(Formatter):
    """One vertical section for the scalar fields of the summary, then one
    section per list of records with the union of their keys as header.
    """

    def __init__(self, args, table=None):
        super(TableFormatter, self).__init__(args)
        if table is not None:
            self.table = table
        elif args.color == 'auto':
            self.table = MultiTable(column_separator='|')
        elif args.color == 'off':
            self.table = MultiTable(column_separator='|', styler=Styler())
        elif args.color == 'on':
            self.table = MultiTable(column_separator='|',
                                    styler=ColorizedStyler())
        else:
            raise ValueError("Unknown color option: %s" % args.color)

    def _format_summary(self, command_name, summary, stream):
        if self._build_table(command_name, summary):
            self.table.render(stream)

    def _build_table(self, title, summary):
        if not summary:
            return False
        scalars = [key for key in summary if _is_scalar(summary[key])]
        self.table.new_section(title)
        for key in scalars:
            self.table.add_row([key, summary[key]])
        for key in sorted(k for k in summary if k not in scalars):
            self._build_sub_table(key, summary[key])
        return True

    def _build_sub_table(self, title, records):
        if not records:
            return
        if isinstance(records, dict):
            records = [records]
        self.table.new_section(title)
        if not all(isinstance(record, dict) for record in records):
            for record in records:
                self.table.add_row([record])
            return
        headers = []
        for record in records:
            for key in record:
                if key not in headers and _is_scalar(record[key]):
                    headers.append(key)
        self.table.add_row_header(headers)
        for record in records:
            self.table.add_row([record.get(key) for key in headers])


class TextFormatter(Formatter):

    def _format_summary(self, command_name, summary, stream):
        text.format_text(summary, stream)


def _is_scalar(value):
    return not isinstance(value, (list, dict))


def get_formatter(format_type, args):
    if format_type == 'json':
        return JSONFormatter(args)
    elif format_type == 'text':
        return TextFormatter(args)
    elif format_type == 'table':
        return TableFormatter(args)
    raise ValueError("Unknown output type: %s" % format_type)
