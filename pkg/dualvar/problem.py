# Copyright (c) 2026 The dualvar authors.
#
# Licensed under the Apache License, Version 2.0 (the "License"). You
# may not use this file except in compliance with the License. A copy of
# the License is located at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# or in the "license" file accompanying this file. This file is
# distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF
# ANY KIND, either express or implied. See the License for the specific
# language governing permissions and limitations under the License.
"""Problem data: dimension, exponents and the radial coefficients k and h."""
import logging
import math

import numpy as np

from dualvar.exceptions import InvalidExponentError
from dualvar.exceptions import InvalidParameterError

LOG = logging.getLogger('dualvar.problem')

GAUSSIAN = 'gaussian'
ALGEBRAIC = 'algebraic'
COEFFICIENT_KINDS = (GAUSSIAN, ALGEBRAIC)


def critical_exponent(dim_N):
    """The Sobolev exponent 2* = 2N / (N - 2)."""
    return 2.0 * dim_N / (dim_N - 2.0)


def conjugate_exponent(p):
    """Hoelder conjugate p' = p / (p - 1)."""
    if not p > 1:
        raise InvalidParameterError(value=p, param='p', reason='must be > 1')
    return p / (p - 1.0)


def compute_q0(p, dim_N):
    """Return p0 = 2N / (2N - p(N - 2)).

    p0 is the integrability exponent asked of k when the concave power is p;
    its conjugate satisfies p * p0' = 2*.
    """
    denominator = 2.0 * dim_N - p * (dim_N - 2.0)
    if denominator <= 0:
        raise InvalidExponentError(p=p, dim_N=dim_N, denominator=denominator)
    return 2.0 * dim_N / denominator


class CoefficientFamily(object):
    """A nonnegative radial coefficient.

    ``gaussian``: amplitude * exp(-decay * r^2).
    ``algebraic``: amplitude * (1 + r^2)^(-decay).
    """

    def __init__(self, kind=GAUSSIAN, amplitude=1.0, decay=1.0):
        if kind not in COEFFICIENT_KINDS:
            raise InvalidParameterError(
                value=kind, param='kind',
                reason='must be one of %s' % ', '.join(COEFFICIENT_KINDS))
        amplitude = float(amplitude)
        decay = float(decay)
        if not (math.isfinite(amplitude) and amplitude >= 0):
            raise InvalidParameterError(value=amplitude, param='amplitude',
                                        reason='must be finite and >= 0')
        if not (math.isfinite(decay) and decay >= 0):
            raise InvalidParameterError(value=decay, param='decay',
                                        reason='must be finite and >= 0')
        self.kind = kind
        self.amplitude = amplitude
        self.decay = decay

    def __repr__(self):
        return 'CoefficientFamily(%r, amplitude=%r, decay=%r)' % (
            self.kind, self.amplitude, self.decay)

    def __eq__(self, other):
        if not isinstance(other, CoefficientFamily):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        if self.kind == GAUSSIAN:
            values = self.amplitude * np.exp(-self.decay * r * r)
        else:
            values = self.amplitude * (1.0 + r * r) ** (-self.decay)
        if values.ndim == 0:
            return float(values)
        return values

    @property
    def is_zero(self):
        return self.amplitude == 0.0

    def support_radius(self, level):
        """Radius beyond which the coefficient stays below level * value(0)."""
        if not 0 < level < 1:
            raise InvalidParameterError(value=level, param='level',
                                        reason='must lie in (0, 1)')
        if self.decay == 0:
            return math.inf
        if self.kind == GAUSSIAN:
            return math.sqrt(-math.log(level) / self.decay)
        return math.sqrt(level ** (-1.0 / self.decay) - 1.0)

    def to_dict(self):
        return {'kind': self.kind, 'amplitude': self.amplitude,
                'decay': self.decay}


class ProblemSpec(object):
    """Dimension, exponents and coefficients of the equation.

    :type dim_N: int
    :param dim_N: Space dimension, at least 3.
    :type q: float
    :param q: Concave exponent, 1 < q < 2.
    :type s: float
    :param s: Convex exponent, s > 2. May exceed 2 * 2*.
    :type k_family: CoefficientFamily
    :param k_family: Coefficient of the concave term, not identically zero.
    :type h_family: CoefficientFamily
    :param h_family: Coefficient of the convex term, may vanish.
    """

    def __init__(self, dim_N=3, q=1.5, s=14.0, k_family=None, h_family=None):
        if k_family is None:
            k_family = CoefficientFamily()
        if h_family is None:
            h_family = CoefficientFamily()
        if int(dim_N) != dim_N or dim_N < 3:
            raise InvalidParameterError(value=dim_N, param='dim_N',
                                        reason='must be an integer >= 3')
        q = float(q)
        s = float(s)
        if not 1 < q < 2:
            raise InvalidParameterError(value=q, param='q',
                                        reason='must lie in (1, 2)')
        if not (2 < s and math.isfinite(s)):
            raise InvalidParameterError(value=s, param='s',
                                        reason='must be finite and > 2')
        if k_family.is_zero:
            raise InvalidParameterError(value=k_family.amplitude,
                                        param='k_amplitude',
                                        reason='k must not vanish identically')
        self.dim_N = int(dim_N)
        self.q = q
        self.s = s
        self.k_family = k_family
        self.h_family = h_family

    def __repr__(self):
        return ('ProblemSpec(dim_N=%r, q=%r, s=%r, k_family=%r, h_family=%r)'
                % (self.dim_N, self.q, self.s, self.k_family, self.h_family))

    @property
    def critical_exponent(self):
        return critical_exponent(self.dim_N)

    @property
    def supercritical_flag(self):
        return self.s > 2.0 * self.critical_exponent

    @property
    def q0(self):
        return compute_q0(self.q, self.dim_N)

    def to_dict(self):
        return {'dim_N': self.dim_N, 'q': self.q, 's': self.s,
                'k': self.k_family.to_dict(), 'h': self.h_family.to_dict(),
                'q0': self.q0, 'supercritical': self.supercritical_flag}


def eval_k(r, spec):
    return spec.k_family(r)


def eval_h(r, spec):
    return spec.h_family(r)


class HypothesisCheck(object):
    def __init__(self, name, passed, margin, detail):
        self.name = name
        self.passed = passed
        self.margin = margin
        self.detail = detail

    def to_dict(self):
        return {'name': self.name, 'passed': self.passed,
                'margin': self.margin, 'detail': self.detail}


class HypothesisReport(object):
    def __init__(self, checks, q0, supercritical_flag):
        self.checks = checks
        self.q0 = q0
        self.supercritical_flag = supercritical_flag

    @property
    def passed(self):
        return all(check.passed for check in self.checks)

    def __getitem__(self, name):
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)

    def to_dict(self):
        return {'passed': self.passed, 'q0': self.q0,
                'supercritical': self.supercritical_flag,
                'checks': [check.to_dict() for check in self.checks]}


def _integrability(family, exponent, dim_N, label):
    # exponent-th power integrable over R^N.
    if family.is_zero:
        return HypothesisCheck(label, True, math.inf, 'identically zero')
    if family.kind == GAUSSIAN:
        if family.decay > 0:
            return HypothesisCheck(label, True, math.inf, 'gaussian decay')
        return HypothesisCheck(label, False, -float(dim_N),
                               'constant coefficient is not integrable')
    margin = 2.0 * family.decay * exponent - dim_N
    return HypothesisCheck(label, margin > 0, margin,
                           '2 * decay * %r - N' % exponent)


def check_hypotheses(spec):
    """Decide the integrability hypotheses on k and h in closed form.

    k must lie in L^q0 and h in L^1 (both families are bounded). Algebraic
    decay r^(-2 beta) is p-integrable over R^N iff 2 beta p > N.

    :rtype: HypothesisReport
    """
    q0 = spec.q0
    checks = [
        HypothesisCheck('k_nonnegative', spec.k_family.amplitude >= 0,
                        spec.k_family.amplitude, 'amplitude >= 0'),
        HypothesisCheck('k_nonzero', not spec.k_family.is_zero,
                        spec.k_family.amplitude, 'amplitude > 0'),
        _integrability(spec.k_family, q0, spec.dim_N, 'k_in_L_q0'),
        HypothesisCheck('h_nonnegative', spec.h_family.amplitude >= 0,
                        spec.h_family.amplitude, 'amplitude >= 0'),
        _integrability(spec.h_family, 1.0, spec.dim_N, 'h_in_L_1'),
    ]
    report = HypothesisReport(checks, q0, spec.supercritical_flag)
    for check in checks:
        if not check.passed:
            LOG.warning('Hypothesis %s fails with margin %r', check.name,
                        check.margin)
    return report
