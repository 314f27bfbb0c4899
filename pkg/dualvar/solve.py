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
"""Minimization of Phi on the radial grid.

The descent is a limited-memory quasi-Newton method on the raw partial
derivatives of the discrete Phi, preconditioned by either the inverse
quadrature weights or the inverse of stiffness plus weights, with Armijo
backtracking. Solutions of the original equation are recovered as
u = f(v).
"""
from collections import deque
from concurrent.futures import ThreadPoolExecutor
import logging

import numpy as np
from scipy.linalg import solve_banded

from dualvar.config import SolveOptions
from dualvar.exceptions import LineSearchError
from dualvar.geometry import GeometryCertifier
from dualvar.grid import as_values
from dualvar.grid import Field
from dualvar.utils import spawn_rngs

LOG = logging.getLogger('dualvar.solve')

WEIGHTED = 'weighted'
SOBOLEV = 'sobolev'

MIN_STEP = 1e-16
FIRST_STEP_FRACTION = 0.1
CURVATURE_EPS = 1e-12
# A predicted decrease below ROUNDOFF_FACTOR * eps * scale cannot be resolved
# by evaluating Phi; a failed line search there ends the run as stagnated.
ROUNDOFF_FACTOR = 1e3
PROGRESS_EVERY = 500

DISTINCT_L2_TOL = 1e-3
DISTINCT_ENERGY_TOL = 1e-8


class SolveReport(object):
    """Outcome of one minimization.

    ``residuals`` is filled by the residual checks of :mod:`dualvar.verify`;
    ``distinct_id`` by :func:`cluster_solutions`.
    """

    def __init__(self, v_star, u_star, phi_value, j_value, grad_norm,
                 iterations, converged, breakdown=None, phi_trace=None,
                 grad_tol=None, start_phi=None):
        self.v_star = v_star
        self.u_star = u_star
        self.phi_value = phi_value
        self.j_value = j_value
        self.grad_norm = grad_norm
        self.iterations = iterations
        self.converged = converged
        self.breakdown = breakdown
        self.phi_trace = phi_trace if phi_trace is not None else []
        self.grad_tol = grad_tol
        self.start_phi = start_phi
        self.residuals = {}
        self.distinct_id = None
        self.multiplicity = 1

    def __repr__(self):
        return ('SolveReport(phi_value=%r, grad_norm=%r, iterations=%r, '
                'converged=%r, distinct_id=%r)' % (
                    self.phi_value, self.grad_norm, self.iterations,
                    self.converged, self.distinct_id))

    @property
    def identity_gap(self):
        return abs(self.phi_value - self.j_value)

    def to_dict(self):
        data = {'phi_value': self.phi_value, 'j_value': self.j_value,
                'grad_norm': self.grad_norm, 'grad_tol': self.grad_tol,
                'iterations': self.iterations, 'converged': self.converged,
                'residuals': dict(self.residuals),
                'distinct_id': self.distinct_id,
                'multiplicity': self.multiplicity,
                'start_phi': self.start_phi,
                'max_u': self.u_star.max_abs,
                'min_u': float(np.min(self.u_star.values))}
        if self.breakdown is not None:
            data['breakdown'] = self.breakdown.to_dict()
        return data


def recover_u(v, evaluator):
    """u = f(v) nodewise.

    :type v: dualvar.grid.Field
    :rtype: dualvar.grid.Field
    """
    return Field(v.grid, evaluator.eval_f_batch(v.values))


class DescentSolver(object):
    """Armijo descent with optional L-BFGS acceleration.

    :type energy: dualvar.energy.EnergyFunctional
    :type options: dualvar.config.SolveOptions

    Each call to :meth:`minimize` owns its iterate; one solver may serve
    several threads.
    """

    def __init__(self, energy, options=None):
        if options is None:
            options = SolveOptions()
        self.energy = energy
        self.grid = energy.grid
        self.options = options
        self._free = self.grid.free_mask.astype(float)
        self._banded = None
        if options.preconditioner == SOBOLEV:
            self._banded = self.grid.stiffness_banded(
                shift=self.grid.quad_weights)

    def _apply_h0(self, r):
        if self._banded is not None:
            out = solve_banded((1, 1), self._banded, r * self._free)
        else:
            out = r / self.grid.quad_weights
        return out * self._free

    def _direction(self, raw, pairs):
        # Two-loop recursion, H0 scaled by s.y / y.H0 y of the newest pair.
        work = raw.copy()
        alphas = []
        for s, y, rho in reversed(pairs):
            alpha = rho * s.dot(work)
            alphas.append(alpha)
            work -= alpha * y
        out = self._apply_h0(work)
        if pairs:
            s, y, _ = pairs[-1]
            out *= s.dot(y) / y.dot(self._apply_h0(y))
        for (s, y, rho), alpha in zip(pairs, reversed(alphas)):
            beta = rho * y.dot(out)
            out += s * (alpha - beta)
        return -out

    def _line_search(self, v, phi, raw, direction, step):
        """Backtracking until the Armijo condition holds.

        Only trials with phi_trial <= phi + armijo_c step slope < phi are
        accepted, so the energy strictly decreases along a run.
        """
        opts = self.options
        slope = float(raw.dot(direction))
        while step >= MIN_STEP:
            trial = self.grid.project(v + step * direction)
            phi_trial, raw_trial = self.energy.phi_and_raw_gradient(trial)
            if (phi_trial < phi and
                    phi_trial <= phi + opts.armijo_c * step * slope):
                return step, trial, phi_trial, raw_trial
            step *= opts.backtrack_ratio
        return None

    def _below_roundoff(self, v, phi, raw, direction):
        """True when the largest decrease the direction promises is lost in
        the rounding of Phi."""
        scale = float(self.grid.dirichlet_form(v)) + abs(phi)
        floor = ROUNDOFF_FACTOR * np.finfo(float).eps * scale
        step = self._first_step(v, direction)
        return abs(float(raw.dot(direction))) * step <= floor

    def _first_step(self, v, direction):
        largest = float(np.max(np.abs(direction)))
        if largest == 0:
            return 1.0
        return min(1.0, FIRST_STEP_FRACTION *
                   max(1.0, float(np.max(np.abs(v)))) / largest)

    def minimize(self, v0):
        """Minimize Phi from ``v0``.

        :type v0: dualvar.grid.Field or array
        Every accepted step satisfies the Armijo condition, so the trace is
        strictly decreasing. When the steepest direction admits no step and
        the decrease it promises is below the rounding of Phi, the run stops
        with ``converged`` false.

        :raises LineSearchError: when neither the quasi-Newton nor the
            preconditioned steepest direction admits a step above 1e-16
            and the promised decrease is above the roundoff floor.
        :rtype: SolveReport
        """
        opts = self.options
        energy = self.energy
        v = self.grid.project(as_values(v0, self.grid))
        if opts.enforce_nonnegative:
            v = np.abs(v)
        phi, raw = energy.phi_and_raw_gradient(v)
        start_phi = float(phi)
        trace = [float(phi)]
        pairs = deque(maxlen=opts.memory)
        grad_norm = energy.grad_norm(raw)
        iteration = 0
        converged = grad_norm <= opts.grad_tol
        while not converged and iteration < opts.max_iters:
            direction = self._direction(raw, pairs)
            if not raw.dot(direction) < 0:
                pairs.clear()
                direction = -self._apply_h0(raw)
            step = 1.0 if pairs else self._first_step(v, direction)
            result = self._line_search(v, phi, raw, direction, step)
            if result is not None and not np.any(result[1] != v):
                result = None
            if result is None:
                if pairs:
                    LOG.debug('Line search failed at iteration %d, '
                              'restarting from steepest descent', iteration)
                    pairs.clear()
                    continue
                if self._below_roundoff(v, phi, raw, direction):
                    LOG.warning('Stagnated at the roundoff floor of Phi after %d '
                                'iterations: grad_norm=%r', iteration, grad_norm)
                    break
                raise LineSearchError(iteration=iteration, min_step=MIN_STEP,
                                      slope=float(raw.dot(direction)))
            _, v_new, phi_new, raw_new = result
            if opts.enforce_nonnegative and np.any(v_new < 0):
                # |v| never raises the discrete Phi; memory is stale after it.
                v_new = np.abs(v_new)
                phi_new, raw_new = energy.phi_and_raw_gradient(v_new)
                pairs.clear()
            else:
                s = v_new - v
                y = raw_new - raw
                sy = s.dot(y)
                if sy > CURVATURE_EPS * np.linalg.norm(s) * np.linalg.norm(y):
                    pairs.append((s, y, 1.0 / sy))
            v, phi, raw = v_new, phi_new, raw_new
            iteration += 1
            trace.append(float(phi))
            grad_norm = energy.grad_norm(raw)
            converged = grad_norm <= opts.grad_tol
            if iteration % PROGRESS_EVERY == 0:
                LOG.debug('iteration %d: phi=%r grad_norm=%r memory=%d',
                          iteration, phi, grad_norm, len(pairs))
        if converged:
            LOG.info('Converged in %d iterations: phi=%r grad_norm=%r',
                     iteration, phi, grad_norm)
        else:
            LOG.warning('No convergence after %d iterations: phi=%r '
                        'grad_norm=%r', iteration, phi, grad_norm)
        return self._report(v, phi, grad_norm, iteration, converged, trace,
                            start_phi)

    def _report(self, v, phi, grad_norm, iterations, converged, trace,
                start_phi):
        v_star = Field(self.grid, v)
        u_star = recover_u(v_star, self.energy.evaluator)
        return SolveReport(v_star, u_star, float(phi),
                           self.energy.j_energy(u_star), float(grad_norm),
                           iterations, bool(converged),
                           breakdown=self.energy.phi(v_star),
                           phi_trace=trace, grad_tol=self.options.grad_tol,
                           start_phi=start_phi)


def minimize(energy, v0, opts=None):
    """:rtype: SolveReport"""
    return DescentSolver(energy, opts).minimize(v0)


def ground_state(energy, opts, rng, samples=1000, support_level=1e-3,
                 certificate=None):
    """Nonnegative minimizer at negative energy.

    The start is the absolute value of the sphere sample with the lowest
    Phi on the certified level-one sphere; descent then runs with
    ``enforce_nonnegative``.

    :type certificate: dualvar.geometry.LevelCertificate
    :rtype: SolveReport
    """
    if certificate is None:
        certifier = GeometryCertifier(energy, support_level=support_level,
                                      workers=opts.workers)
        certificate = certifier.certify_level(
            1, samples, rng, energy.evaluator.cached_delta)
    start = np.abs(certificate.start_field)
    LOG.info('Ground state start: Phi=%r on the sphere of radius %r',
             float(energy.phi_values(start)), certificate.rho)
    report = minimize(energy, start,
                      opts.replace(enforce_nonnegative=True))
    if not report.phi_value < 0:
        LOG.warning('Ground state energy %r is not negative',
                    report.phi_value)
    return report


def relative_distance(grid, a, b):
    """Relative L2 distance of two fields up to sign."""
    a = as_values(a, grid)
    b = as_values(b, grid)
    scale = max(grid.l2_norm(a), grid.l2_norm(b))
    if scale == 0:
        return 0.0
    return float(min(grid.l2_norm(a - b), grid.l2_norm(a + b)) / scale)


def cluster_solutions(reports, l2_tol=DISTINCT_L2_TOL,
                      energy_tol=DISTINCT_ENERGY_TOL):
    """Distinct converged negative-energy solutions, sorted by Phi.

    Two solutions are distinct when their relative L2 distance up to sign
    exceeds ``l2_tol`` and their energies differ by more than ``energy_tol``.
    Representatives get ``distinct_id`` S1, S2, ... and the size of their
    cluster as ``multiplicity``.
    """
    candidates = sorted((r for r in reports
                         if r.converged and r.phi_value < 0),
                        key=lambda r: r.phi_value)
    distinct = []
    for report in candidates:
        for representative in distinct:
            distance = relative_distance(report.v_star.grid,
                                         report.v_star,
                                         representative.v_star)
            gap = abs(report.phi_value - representative.phi_value)
            if distance <= l2_tol or gap <= energy_tol:
                representative.multiplicity += 1
                break
        else:
            distinct.append(report)
    for index, report in enumerate(distinct):
        report.distinct_id = 'S%d' % (index + 1)
    return distinct


def multi_start(energy, n_max, samples_per_level, opts, rng,
                support_level=1e-3, certificates=None, geometry_samples=1000):
    """Descent from points of X_n on the certified spheres, n = 1..n_max.

    Every start has Phi < 0. Solves run on ``opts.workers`` threads and are
    gathered in submission order.

    :type certificates: list of dualvar.geometry.LevelCertificate
    :returns: (distinct reports, all reports)
    """
    certifier = GeometryCertifier(energy, support_level=support_level,
                                  workers=opts.workers)
    level_rng, start_rng = spawn_rngs(rng, 2)
    if certificates is None:
        certificates = certifier.certify(n_max, geometry_samples, level_rng,
                                         energy.evaluator.cached_delta)
    starts = []
    for certificate, child in zip(certificates[:n_max],
                                  spawn_rngs(start_rng, n_max)):
        fields = certifier.sample_sphere(certificate.basis, certificate.rho,
                                         samples_per_level, child)
        starts.extend(fields)
    solver = DescentSolver(energy, opts)
    LOG.info('Running %d solves on %d worker(s)', len(starts), opts.workers)
    with ThreadPoolExecutor(max_workers=opts.workers) as executor:
        reports = list(executor.map(solver.minimize, starts))
    distinct = cluster_solutions(reports)
    if not distinct:
        LOG.warning('No start of %d converged to a negative energy solution',
                    len(reports))
    LOG.info('%d distinct solution(s) from %d starts', len(distinct),
             len(reports))
    return distinct, reports
