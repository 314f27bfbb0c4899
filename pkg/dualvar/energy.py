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
"""The transformed functional Phi, its gradient, J and the E-norm.

All functions accept a Field or an array whose last axis runs over the grid
nodes, so a stack of fields is evaluated in one call.
"""
import logging

import numpy as np

from dualvar.exceptions import InvalidParameterError
from dualvar.grid import as_values
from dualvar.transform import antiderivative

LOG = logging.getLogger('dualvar.energy')


def signed_power(f, exponent):
    """sign(f) |f|^exponent, zero where f vanishes."""
    return np.sign(f) * np.abs(f) ** exponent


class EnergyBreakdown(object):
    """The three terms of Phi and their signed total."""

    def __init__(self, dirichlet_term, concave_term, convex_term):
        self.dirichlet_term = float(dirichlet_term)
        self.concave_term = float(concave_term)
        self.convex_term = float(convex_term)
        self.total = self.dirichlet_term - self.concave_term + self.convex_term

    def __repr__(self):
        return ('EnergyBreakdown(dirichlet_term=%r, concave_term=%r, '
                'convex_term=%r, total=%r)' % (
                    self.dirichlet_term, self.concave_term, self.convex_term,
                    self.total))

    def to_dict(self):
        return {'dirichlet_term': self.dirichlet_term,
                'concave_term': self.concave_term,
                'convex_term': self.convex_term,
                'total': self.total}


class EnergyFunctional(object):
    """Phi(v) = 1/2 |v|_D^2 - 1/q int k|f(v)|^q + 1/s int h|f(v)|^s.

    :type spec: dualvar.problem.ProblemSpec
    :type grid: dualvar.grid.RadialGrid
    :type evaluator: dualvar.transform.TransformEvaluator

    Holds no mutable state; safe to share between threads.
    """

    def __init__(self, spec, grid, evaluator):
        if spec.dim_N != grid.dim_N:
            raise InvalidParameterError(
                value=grid.dim_N, param='grid.dim_N',
                reason='grid dimension differs from problem dimension %d'
                % spec.dim_N)
        self.spec = spec
        self.grid = grid
        self.evaluator = evaluator
        self.k_values = spec.k_family(grid.nodes)
        self.h_values = spec.h_family(grid.nodes)
        self._wk = grid.quad_weights * self.k_values
        self._wh = grid.quad_weights * self.h_values

    def __repr__(self):
        return 'EnergyFunctional(%r, %r)' % (self.spec, self.grid)

    def _values(self, v):
        return self.grid.project(as_values(v, self.grid))

    def k_power_integral(self, values, exponent):
        """int k |values|^exponent by grid quadrature."""
        return np.sum(self._wk * np.abs(values) ** exponent, axis=-1)

    def h_power_integral(self, values, exponent):
        return np.sum(self._wh * np.abs(values) ** exponent, axis=-1)

    def phi(self, v):
        """Energy breakdown of a single field.

        :rtype: EnergyBreakdown
        """
        values = self._values(v)
        f = self.evaluator.eval_f_batch(values)
        return EnergyBreakdown(
            self.grid.dirichlet_form(values),
            self.k_power_integral(f, self.spec.q) / self.spec.q,
            self.h_power_integral(f, self.spec.s) / self.spec.s)

    def phi_values(self, v):
        """Totals of Phi for a field or a stack of fields."""
        values = self._values(v)
        f = self.evaluator.eval_f_batch(values)
        return (self.grid.dirichlet_form(values) -
                self.k_power_integral(f, self.spec.q) / self.spec.q +
                self.h_power_integral(f, self.spec.s) / self.spec.s)

    def phi_and_raw_gradient(self, v):
        """Phi and its Euclidean partial derivatives with respect to v_i.

        Held boundary nodes get a zero partial derivative.
        """
        values = self._values(v)
        f, f_prime = self.evaluator.f_and_prime(values)
        q = self.spec.q
        s = self.spec.s
        total = (self.grid.dirichlet_form(values) -
                 self.k_power_integral(f, q) / q +
                 self.h_power_integral(f, s) / s)
        raw = (self.grid.stiffness_apply(values) +
               (self._wh * signed_power(f, s - 1.0) -
                self._wk * signed_power(f, q - 1.0)) * f_prime)
        raw = np.where(self.grid.free_mask, raw, 0.0)
        return total, raw

    def raw_gradient(self, v):
        return self.phi_and_raw_gradient(v)[1]

    def grad_phi(self, v):
        """The quadrature weighted gradient g, sum_i w_i g_i xi_i = Phi'(v) xi."""
        return self.raw_gradient(v) / self.grid.quad_weights

    def grad_norm(self, raw):
        """Max norm of the weighted gradient built from a raw gradient."""
        return float(np.max(np.abs(raw / self.grid.quad_weights)))

    def j_energy(self, u):
        """J(u) = 1/2 int (1 + 2u^2)|u'|^2 - 1/q int k|u|^q + 1/s int h|u|^s.

        The quasilinear term is evaluated edgewise as the Dirichlet form of
        F(u), using (1 + 2u^2)|u'|^2 = |(F(u))'|^2.
        """
        values = self._values(u)
        return float(self.grid.dirichlet_form(antiderivative(values)) -
                     self.k_power_integral(values, self.spec.q) / self.spec.q +
                     self.h_power_integral(values, self.spec.s) / self.spec.s)

    def d_norm(self, v):
        values = self._values(v)
        return np.sqrt(2.0 * self.grid.dirichlet_form(values))

    def h_seminorm(self, v):
        """(int h |v|^(s/2))^(2/s)."""
        values = self._values(v)
        s = self.spec.s
        return self.h_power_integral(values, 0.5 * s) ** (2.0 / s)

    def e_norm(self, v):
        return self.d_norm(v) + self.h_seminorm(v)

    def weighted_terms(self, v):
        """(int k|f(v)|^q, int h|f(v)|^s)."""
        values = self._values(v)
        f = self.evaluator.eval_f_batch(values)
        return (float(self.k_power_integral(f, self.spec.q)),
                float(self.h_power_integral(f, self.spec.s)))

    def k_norm(self, exponent):
        """|k|_p by grid quadrature."""
        return float(self.grid.integrate(self.k_values ** exponent) **
                     (1.0 / exponent))
