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

import os

__version__ = '0.1.0'

VERSION = __version__

DUALVAR_ROOT = os.path.dirname(os.path.abspath(__file__))

# Read in the release file and update the advertised version with it if it's
# not the default / PUBLIC release.
_release_file_path = os.path.normpath("{0}/data/release.txt".format(DUALVAR_ROOT))
with open(_release_file_path) as releaseFile:
    RELEASE = releaseFile.readline().strip()

if RELEASE != 'PUBLIC':
    VERSION += ' (%s)' % RELEASE

DEFAULT_CONFIG_SECTIONS = ('problem', 'grid', 'solver', 'geometry',
                           'transform', 'verify', 'run')
OUTPUT_DIR_ENV_VAR = 'DUALVAR_OUTPUT'

# Exit statuses returned by the driver.
EXIT_OK = 0
EXIT_FAILED_CHECK = 1
EXIT_CONFIG_ERROR = 2
EXIT_UNEXPECTED = 255
