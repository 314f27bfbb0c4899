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
"""Tab separated rendering of the run summary.

Scalars of a mapping go on one line, prefixed by the upper-cased key of the
enclosing container; nested lists and mappings follow on their own lines.
"""
from dualvar.table import format_cell


def format_text(data, stream):
    _format_item(data, stream)


def _is_scalar(value):
    return not isinstance(value, (list, dict))


def _format_item(item, stream, identifier=None, columns=None):
    if isinstance(item, dict):
        _format_dict(item, stream, identifier, columns)
    elif isinstance(item, list):
        _format_list(item, stream, identifier)
    else:
        stream.write(format_cell(item) + '\n')


def _format_list(items, stream, identifier):
    if not items:
        return
    if any(isinstance(el, dict) for el in items):
        columns = _scalar_columns(items)
        for element in items:
            _format_item(element, stream, identifier, columns)
        return
    scalars = [el for el in items if _is_scalar(el)]
    if scalars:
        cells = [format_cell(el) for el in scalars]
        if identifier is not None:
            cells.insert(0, identifier.upper())
        stream.write('\t'.join(cells) + '\n')
    for element in items:
        if not _is_scalar(element):
            _format_item(element, stream, identifier)


def _format_dict(mapping, stream, identifier, columns):
    if columns is None:
        columns = sorted(k for k, v in mapping.items() if _is_scalar(v))
    cells = [format_cell(mapping.get(key, '')) for key in columns]
    if cells:
        if identifier is not None:
            cells.insert(0, identifier.upper())
        stream.write('\t'.join(cells) + '\n')
    for key in sorted(k for k in mapping if k not in columns):
        if not _is_scalar(mapping[key]):
            _format_item(mapping[key], stream, identifier=key)


def _scalar_columns(list_of_dicts):
    keys = set()
    for element in list_of_dicts:
        if isinstance(element, dict):
            keys.update(k for k, v in element.items() if _is_scalar(v))
    return sorted(keys)
