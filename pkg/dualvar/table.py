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
"""Boxed tables for the run summary.

A :class:`MultiTable` is a list of titled sections, each with a header row
and value rows. Cells whose text is PASS or FAIL go through
:meth:`Styler.style_status`, which :class:`ColorizedStyler` paints green or
red.
"""
import os
import shutil
import sys

import colorama

PASS = 'PASS'
FAIL = 'FAIL'


def determine_terminal_width(default_width=80):
    return shutil.get_terminal_size((default_width, 24)).columns


def is_a_tty(stream=None):
    if stream is None:
        stream = sys.stdout
    try:
        return os.isatty(stream.fileno())
    except Exception:
        return False


def status_text(passed):
    return PASS if passed else FAIL


def _pad(text, width, text_length=None, centered=False):
    # text_length lets styled text (with ANSI codes) pad to its visible width
    if text_length is None:
        text_length = len(text)
    spare = max(width - text_length, 0)
    if centered:
        left = spare // 2
        return ' ' * left + text + ' ' * (spare - left)
    return text + ' ' * spare


class Styler(object):
    def style_title(self, text):
        return text

    def style_header_column(self, text):
        return text

    def style_row_element(self, text):
        return text

    def style_status(self, text):
        return text


class ColorizedStyler(Styler):
    def __init__(self):
        # strip=False keeps the colors when stdout is redirected.
        colorama.init(autoreset=True, strip=False)

    def style_title(self, text):
        return colorama.Style.BRIGHT + text + colorama.Style.RESET_ALL

    def style_row_element(self, text):
        return (colorama.Style.BRIGHT + colorama.Fore.BLUE +
                text + colorama.Style.RESET_ALL)

    def style_status(self, text):
        color = colorama.Fore.GREEN if text == PASS else colorama.Fore.RED
        return (colorama.Style.BRIGHT + color + text +
                colorama.Style.RESET_ALL)


class Section(object):
    def __init__(self, title=''):
        self.title = title
        self.headers = []
        self.rows = []

    def __repr__(self):
        return 'Section(title=%s, headers=%s, num_rows=%s)' % (
            self.title, self.headers, len(self.rows))

    @property
    def num_cols(self):
        if self.headers:
            return len(self.headers)
        if self.rows:
            return len(self.rows[0])
        return 0

    def add_header(self, headers):
        self.headers = [str(h) for h in headers]

    def add_row(self, row):
        row = [format_cell(value) for value in row]
        if self.num_cols and len(row) != self.num_cols:
            raise ValueError("Row should have %s elements, instead "
                             "it has %s" % (self.num_cols, len(row)))
        self.rows.append(row)

    def column_widths(self, padding=2):
        widths = [0] * self.num_cols
        for row in [self.headers] + self.rows:
            for i, cell in enumerate(row):
                widths[i] = max(widths[i], len(cell))
        return [w + padding for w in widths]

    def total_width(self, padding=2):
        widths = self.column_widths(padding)
        # one separator per column plus the left edge
        return max(sum(widths) + len(widths) + 1, len(self.title) + 4)


def format_cell(value):
    if isinstance(value, bool):
        return status_text(value)
    if isinstance(value, float):
        return '%.6g' % value
    if value is None:
        return ''
    return str(value)


class MultiTable(object):
    def __init__(self, terminal_width=None, column_separator='|',
                 styler=None):
        self._sections = []
        self._current_section = None
        if styler is None:
            styler = ColorizedStyler() if is_a_tty() else Styler()
        self._styler = styler
        self._column_separator = column_separator
        if terminal_width is None:
            terminal_width = determine_terminal_width()
        self._terminal_width = terminal_width

    @property
    def sections(self):
        return list(self._sections)

    def new_section(self, title):
        self._current_section = Section(title)
        self._sections.append(self._current_section)

    def add_row_header(self, headers):
        self._current_section.add_header(headers)

    def add_row(self, row_elements):
        self._current_section.add_row(row_elements)

    def render(self, stream):
        if not self._sections:
            return
        width = max(s.total_width() for s in self._sections)
        stream.write('-' * width + '\n')
        for section in self._sections:
            self._render_section(section, width, stream)

    def _stretched_widths(self, section, width):
        widths = section.column_widths()
        if widths:
            # Give the leftover width to the last column.
            widths[-1] += width - (sum(widths) + len(widths) + 1)
        return widths

    def _line_break(self, widths):
        return '+' + '+'.join('-' * w for w in widths) + '+\n'

    def _render_section(self, section, width, stream):
        sep = self._column_separator
        if section.title:
            title = self._styler.style_title(section.title)
            stream.write(sep + _pad(title, width - 2, len(section.title),
                                    centered=True) + sep + '\n')
        widths = self._stretched_widths(section, width)
        if not widths:
            stream.write('+%s+\n' % ('-' * (width - 2)))
            return
        stream.write(self._line_break(widths))
        if section.headers:
            cells = [_pad(self._styler.style_header_column(h), w, len(h),
                          centered=True)
                     for h, w in zip(section.headers, widths)]
            stream.write(sep + sep.join(cells) + sep + '\n')
            stream.write(self._line_break(widths))
        for row in section.rows:
            cells = []
            for cell, w in zip(row, widths):
                if cell in (PASS, FAIL):
                    styled = self._styler.style_status(cell)
                else:
                    styled = self._styler.style_row_element(cell)
                cells.append(' ' + _pad(styled, w - 1, len(cell)))
            stream.write(sep + sep.join(cells) + sep + '\n')
        if section.rows:
            stream.write(self._line_break(widths))
