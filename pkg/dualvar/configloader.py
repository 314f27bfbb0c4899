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

import configparser
import os

from dualvar.exceptions import ConfigNotFound, ConfigParseError

FLAT_SECTION = '__flat__'


def raw_config_parse(config_filename):
    """Returns the parsed run file contents.

    Options may be written with dotted section prefixes::

        problem.q = 1.5
        grid.M = 800

    or inside INI sections::

        [grid]
        M = 800

    Both forms are merged into ``{'problem': {'q': '1.5'}, 'grid': {'M':
    '800'}}``; when a key appears twice the later definition wins. Values are
    returned as strings.

    :raises: ConfigNotFound, ConfigParseError
    """
    path = os.path.expandvars(config_filename)
    path = os.path.expanduser(path)
    if not os.path.isfile(path):
        raise ConfigNotFound(path=path)
    cp = configparser.RawConfigParser(strict=False,
                                      inline_comment_prefixes=('#', ';'))
    cp.optionxform = str
    try:
        with open(path, 'rb') as fp:
            text = fp.read().decode('utf-8')
        # Keys before the first section header belong to the flat section.
        cp.read_string('[%s]\n%s' % (FLAT_SECTION, text), source=path)
    except (configparser.Error, UnicodeDecodeError):
        raise ConfigParseError(path=path)
    return _merge_sections(cp, path)


def _merge_sections(cp, path):
    config = {}
    for section in cp.sections():
        for option in cp.options(section):
            value = cp.get(section, option)
            if section == FLAT_SECTION:
                if '.' not in option:
                    raise ConfigParseError(path=path)
                target, option = option.split('.', 1)
            else:
                target = section
            config.setdefault(target.strip(), {})[option.strip()] = value
    return config
