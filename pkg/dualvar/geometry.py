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
"""Certificates for the variational geometry of Phi.

On an n-dimensional subspace X_n spanned by disjoint radial bumps, Phi is
negative on the sphere of E-norm rho_n once rho_n is chosen below
delta / vartheta so that |f(v)| >= |v|/2 holds pointwise, and rho_n minimizes

    theta(rho) = rho^2/2 - A rho^q / (2^q q) + B rho^s / s,

where vartheta bounds |v|_inf on the unit sphere of X_n, A is the infimum of
int k|v|^q and B the supremum of int h|v|^s over that sphere. Along rays
t * w the functional is coercive; the check compares Phi(t w) with the
embedding estimate built from a measured discrete Sobolev constant.
"""
from concurrent.futures import ThreadPoolExecutor
import logging

import numpy as np
from scipy.optimize import minimize
from scipy.optimize import minimize_scalar

from dualvar.exceptions import CoercivityViolationError
from dualvar.exceptions import DegenerateSubspaceError
from dualvar.exceptions import GeometryViolationError
from dualvar.exceptions import InvalidParameterError
from dualvar.grid import Field
from dualvar.grid import random_fields
from dualvar.utils import spawn_rngs

LOG = logging.getLogger('dualvar.geometry')

MIN_SAMPLES = 100
MIN_BUMP_NODES = 4
GRAM_TOLERANCE = 1e-10
A_THRESHOLD = 1e-14
B_INFLATION = 1.05
THETA_SLACK = 1e-6
DEFAULT_T_SCHEDULE = (1e2, 1e3, 1e4)
EMBEDDING_SAMPLES = 100


def bump_profile(x):
    """exp(-1/(1 - x^2)) on (-1, 1), zero outside."""
    x = np.asarray(x, dtype=float)
    inside = np.abs(x) < 1.0
    safe = np.where(inside, x, 0.0)
    return np.where(inside, np.exp(-1.0 / (1.0 - safe * safe)), 0.0)


def bump_fields(grid, count, radius):
    """``count`` bumps with centres radius (i - 1/2) / count.

    Half widths are radius / (2 count + 1), so supports are disjoint and stay
    inside (0, radius).

    :returns: (values of shape (count, M), centres, half width)
    """
    centers = radius * (np.arange(1, count + 1) - 0.5) / count
    half_width = radius / (2.0 * count + 1.0)
    values = bump_profile((grid.nodes - centers[:, None]) / half_width)
    covered = np.count_nonzero(values > 0, axis=1)
    if np.any(covered < MIN_BUMP_NODES):
        raise InvalidParameterError(
            value=count, param='n',
            reason='bumps of half width %r cover only %d grid nodes'
            % (half_width, int(covered.min())))
    return grid.project(values), centers, half_width


def theta_of_rho(rho, A, B, q, s):
    """theta(rho) = rho^2/2 - A rho^q / (2^q q) + B rho^s / s."""
    return (0.5 * rho * rho - A / (2.0 ** q * q) * rho ** q +
            B / s * rho ** s)


def find_rho(A, B, vartheta, delta, q, s):
    """Minimize theta over (0, delta / vartheta].

    theta is negative near zero because q < 2, so a negative value always
    exists; it is located by bounded scalar search, compared with the right
    end point, and halved until negative if the search lands on a
    non-negative value.
    """
    if not A > 0:
        raise InvalidParameterError(value=A, param='A', reason='must be > 0')
    if not B >= 0:
        raise InvalidParameterError(value=B, param='B', reason='must be >= 0')
    if not vartheta > 0:
        raise InvalidParameterError(value=vartheta, param='vartheta',
                                    reason='must be > 0')
    if not 0 < delta < 1:
        raise InvalidParameterError(value=delta, param='delta',
                                    reason='must lie in (0, 1)')
    upper = delta / vartheta

    def theta(rho):
        return theta_of_rho(rho, A, B, q, s)

    result = minimize_scalar(theta, bounds=(0.0, upper), method='bounded',
                             options={'xatol': 1e-12 * upper})
    rho = min(float(result.x), upper)
    if theta(upper) < theta(rho):
        rho = upper
    while theta(rho) >= 0 and rho > 1e-300:
        rho *= 0.5
    LOG.debug('find_rho: A=%r B=%r vartheta=%r delta=%r -> rho=%r theta=%r',
              A, B, vartheta, delta, rho, theta(rho))
    return rho


class SubspaceBasis(object):
    """Basis of X_n: ``level_n`` disjoint bumps of unit E-norm."""

    def __init__(self, grid, level_n, fields, gram_data, layout_radius,
                 centers, half_width):
        self.grid = grid
        self.level_n = level_n
        self.fields = fields
        self.fields.flags.writeable = False
        self.gram_data = gram_data
        self.layout_radius = layout_radius
        self.centers = centers
        self.half_width = half_width

    def __repr__(self):
        return 'SubspaceBasis(level_n=%r, layout_radius=%r)' % (
            self.level_n, self.layout_radius)

    @property
    def basis_fields(self):
        return [Field(self.grid, values) for values in self.fields]

    def combine(self, coefficients):
        """Fields for coefficient vectors of shape (..., level_n)."""
        return np.asarray(coefficients, dtype=float) @ self.fields


class LevelCertificate(object):
    """Geometry certificate of one level n."""

    def __init__(self, level, vartheta, A, B, rho, theta, max_phi_sampled,
                 samples, chain_margin, start_field, basis, delta):
        self.level = level
        self.vartheta = vartheta
        self.A = A
        self.B = B
        self.rho = rho
        self.theta = theta
        self.max_phi_sampled = max_phi_sampled
        self.samples = samples
        self.chain_margin = chain_margin
        self.start_field = start_field
        self.basis = basis
        self.delta = delta

    @property
    def within_theta(self):
        return self.max_phi_sampled <= self.theta + THETA_SLACK

    @property
    def radius_admissible(self):
        return self.vartheta * self.rho <= self.delta * (1.0 + 1e-12)

    @property
    def passed(self):
        return (self.max_phi_sampled < 0 and self.within_theta and
                self.theta < 0 and self.radius_admissible)

    def to_dict(self):
        return {'n': self.level, 'vartheta': self.vartheta, 'A': self.A,
                'B': self.B, 'rho': self.rho, 'theta': self.theta,
                'max_phi_sampled': self.max_phi_sampled,
                'samples': self.samples, 'chain_margin': self.chain_margin,
                'delta': self.delta, 'passed': self.passed}


class SphereReport(object):
    def __init__(self, level, rho, theta, phi_values, chain_margin,
                 sup_norm, samples_fields):
        self.level = level
        self.rho = rho
        self.theta = theta
        self.phi_values = phi_values
        self.chain_margin = chain_margin
        self.sup_norm = sup_norm
        self._fields = samples_fields

    @property
    def max_phi(self):
        return float(np.max(self.phi_values))

    @property
    def all_negative(self):
        return bool(np.all(self.phi_values < 0))

    @property
    def argmin_field(self):
        return self._fields[int(np.argmin(self.phi_values))]

    def to_dict(self):
        return {'n': self.level, 'rho': self.rho, 'theta': self.theta,
                'max_phi_sampled': self.max_phi,
                'all_negative': self.all_negative,
                'chain_margin': self.chain_margin,
                'sup_norm': self.sup_norm,
                'samples': int(self.phi_values.size)}


class RayReport(object):
    def __init__(self, t_schedule, values, lower_bounds, ell, k_norm):
        self.t_schedule = t_schedule
        self.values = values
        self.lower_bounds = lower_bounds
        self.ell = ell
        self.k_norm = k_norm

    @property
    def worst_bound_margin(self):
        return float(np.min(self.values - self.lower_bounds))

    def to_dict(self):
        return {'t_schedule': list(self.t_schedule),
                'phi': self.values.tolist(),
                'lower_bound': self.lower_bounds.tolist(),
                'embedding_constant': self.ell,
                'k_q0_norm': self.k_norm,
                'worst_bound_margin': self.worst_bound_margin}


class GeometryCertifier(object):
    """Builds subspaces and certifies the geometry of Phi on them.

    :type energy: dualvar.energy.EnergyFunctional
    :param support_level: Bumps are laid out where k exceeds this fraction of
        k(0).
    :param workers: Threads used to evaluate sphere samples.
    """

    def __init__(self, energy, support_level=1e-3, workers=1):
        self.energy = energy
        self.grid = energy.grid
        self.spec = energy.spec
        self.support_level = support_level
        self.workers = max(1, int(workers))

    @property
    def layout_radius(self):
        return min(self.grid.R,
                   self.spec.k_family.support_radius(self.support_level))

    def build_subspace(self, n):
        if int(n) != n or n < 1:
            raise InvalidParameterError(value=n, param='n',
                                        reason='must be an integer >= 1')
        n = int(n)
        if n > self.grid.M / 8.0:
            raise InvalidParameterError(
                value=n, param='n',
                reason='exceeds M/8 = %r, bumps cannot be resolved'
                % (self.grid.M / 8.0))
        radius = self.layout_radius
        raw, centers, half_width = bump_fields(self.grid, n, radius)
        fields = raw / self.energy.e_norm(raw)[:, None]
        gram = self.grid.d_inner(fields[:, None, :], fields[None, :, :])
        smallest = float(np.min(np.linalg.svd(gram, compute_uv=False)))
        if smallest <= GRAM_TOLERANCE:
            raise InvalidParameterError(
                value=smallest, param='gram',
                reason='basis is numerically dependent')
        LOG.debug('Built X_%d on (0, %r], half width %r', n, radius,
                  half_width)
        return SubspaceBasis(self.grid, n, fields, gram, radius, centers,
                             half_width)

    def sample_directions(self, basis, count, rng):
        """Coefficient directions uniform on the Euclidean unit sphere."""
        coefficients = rng.standard_normal((count, basis.level_n))
        norms = np.linalg.norm(coefficients, axis=1)
        return coefficients / norms[:, None]

    def sample_sphere(self, basis, rho, count, rng):
        """Points of X_n on the E-norm sphere of radius ``rho``."""
        coefficients = self.sample_directions(basis, count, rng)
        return self._on_sphere(basis.combine(coefficients), rho)

    def _on_sphere(self, fields, rho):
        return fields * (rho / self.energy.e_norm(fields))[:, None]

    def _unit_candidates(self, basis, samples, rng):
        # Sampled unit vectors plus the basis vectors themselves.
        return np.concatenate(
            (self.sample_sphere(basis, 1.0, samples, rng), basis.fields))

    def _direction_value(self, basis, func):
        def value(coefficients):
            field = basis.combine(coefficients)
            norm = self.energy.e_norm(field)
            if not norm > 0:
                return np.nan
            return func(field / norm)
        return value

    def equivalence_constant(self, basis, samples, rng):
        """vartheta with |v|_inf <= vartheta ||v|| on X_n."""
        self._check_samples(samples)
        candidates = self._unit_candidates(basis, samples, rng)
        sup_norms = np.max(np.abs(candidates), axis=1)
        best = int(np.argmax(sup_norms))
        sampled = float(sup_norms[best])
        refined = self._refine(basis, candidates[best],
                               lambda v: -np.max(np.abs(v)))
        vartheta = max(sampled, -refined)
        LOG.debug('vartheta(n=%d): sampled=%r refined=%r', basis.level_n,
                  sampled, -refined)
        return vartheta

    def compute_A_B(self, basis, samples, rng):
        """A = inf int k|v|^q and B = 1.05 sup int h|v|^s over the unit sphere."""
        self._check_samples(samples)
        q = self.spec.q
        s = self.spec.s
        candidates = self._unit_candidates(basis, samples, rng)
        k_terms = self.energy.k_power_integral(candidates, q)
        h_terms = self.energy.h_power_integral(candidates, s)
        arg_a = int(np.argmin(k_terms))
        arg_b = int(np.argmax(h_terms))
        A = min(float(k_terms[arg_a]),
                self._refine(basis, candidates[arg_a],
                             lambda v: self.energy.k_power_integral(v, q)))
        B_sampled = float(h_terms[arg_b])
        if B_sampled > 0:
            B_sampled = max(B_sampled, -self._refine(
                basis, candidates[arg_b],
                lambda v: -self.energy.h_power_integral(v, s)))
        B = B_INFLATION * B_sampled
        if A <= A_THRESHOLD:
            raise DegenerateSubspaceError(level=basis.level_n, A=A,
                                          threshold=A_THRESHOLD)
        LOG.debug('A(n=%d)=%r B(n=%d)=%r', basis.level_n, A, basis.level_n, B)
        return A, B

    def _refine(self, basis, start_field, objective):
        """Local Nelder-Mead minimization of ``objective`` over directions."""
        start = np.linalg.lstsq(basis.fields.T, start_field, rcond=None)[0]
        value = self._direction_value(basis, objective)
        if basis.level_n == 1:
            return float(value(start))
        result = minimize(value, start, method='Nelder-Mead',
                          options={'maxiter': 200 * basis.level_n,
                                   'xatol': 1e-10, 'fatol': 1e-14})
        return float(min(result.fun, value(start)))

    def verify_sphere_negative(self, basis, rho, samples, rng, theta=None):
        """Sample X_n on the sphere of radius rho and evaluate Phi.

        Each sample is also checked against the pointwise chain
        Phi(v) <= |v|_D^2/2 - int k|v|^q / (2^q q) + int h|v|^s / s,
        valid whenever |v|_inf <= delta.

        :raises GeometryViolationError: if some sample has Phi >= 0.
        """
        self._check_samples(samples)
        fields = self.sample_sphere(basis, rho, samples, rng)
        phi_values = self._phi_values(fields)
        q = self.spec.q
        s = self.spec.s
        bound = (self.grid.dirichlet_form(fields) -
                 self.energy.k_power_integral(fields, q) / (2.0 ** q * q) +
                 self.energy.h_power_integral(fields, s) / s)
        scale = 1.0 + np.abs(bound)
        chain_margin = float(np.min((bound - phi_values) / scale))
        report = SphereReport(basis.level_n, rho, theta, phi_values,
                              chain_margin,
                              float(np.max(np.abs(fields))), fields)
        if not report.all_negative:
            raise GeometryViolationError(rho=rho, level=basis.level_n,
                                         value=report.max_phi)
        if theta is not None and report.max_phi > theta + THETA_SLACK:
            LOG.warning('Level %d: sampled max Phi %r exceeds theta %r',
                        basis.level_n, report.max_phi, theta)
        return report

    def _phi_values(self, fields):
        if self.workers == 1 or len(fields) < 2 * self.workers:
            return self.energy.phi_values(fields)
        chunks = np.array_split(fields, self.workers)
        with ThreadPoolExecutor(max_workers=self.workers) as executor:
            parts = list(executor.map(self.energy.phi_values, chunks))
        return np.concatenate(parts)

    def certify_level(self, n, samples, rng, delta):
        """All constants and the sphere check for level n.

        :rtype: LevelCertificate
        """
        basis = self.build_subspace(n)
        rng_vartheta, rng_ab, rng_sphere = spawn_rngs(rng, 3)
        vartheta = self.equivalence_constant(basis, samples, rng_vartheta)
        A, B = self.compute_A_B(basis, samples, rng_ab)
        rho = find_rho(A, B, vartheta, delta, self.spec.q, self.spec.s)
        theta = theta_of_rho(rho, A, B, self.spec.q, self.spec.s)
        sphere = self.verify_sphere_negative(basis, rho, samples, rng_sphere,
                                             theta=theta)
        certificate = LevelCertificate(n, vartheta, A, B, rho, theta,
                                       sphere.max_phi, samples,
                                       sphere.chain_margin,
                                       sphere.argmin_field, basis, delta)
        LOG.info('Level %d certified: rho=%r theta=%r max Phi=%r', n, rho,
                 theta, sphere.max_phi)
        return certificate

    def certify(self, n_max, samples, rng, delta):
        children = spawn_rngs(rng, n_max)
        return [self.certify_level(n, samples, children[n - 1], delta)
                for n in range(1, n_max + 1)]

    def ray_directions(self, count, rng, level):
        """Seeded unit E-norm directions drawn from X_level."""
        basis = self.build_subspace(level)
        return self.sample_sphere(basis, 1.0, count, rng)

    def embedding_ratio(self, fields):
        """|v|_(2*) / |v|_D for a stack of fields."""
        exponent = self.spec.critical_exponent
        lebesgue = self.grid.integrate(np.abs(fields) ** exponent) ** (
            1.0 / exponent)
        return lebesgue / self.energy.d_norm(fields)

    def embedding_constant(self, directions, rng, samples=EMBEDDING_SAMPLES):
        """Discrete Sobolev constant: |v|_(2*) <= ell |v|_D.

        ell is the largest ratio over random smooth fields and the given
        directions; a fresh batch of random fields then validates it.

        :returns: (ell, validated)
        """
        first, second = spawn_rngs(rng, 2)
        candidates = np.concatenate(
            (random_fields(self.grid, samples, first), directions))
        ell = float(np.max(self.embedding_ratio(candidates)))
        fresh = float(np.max(self.embedding_ratio(
            random_fields(self.grid, samples, second))))
        validated = fresh <= ell
        if not validated:
            LOG.warning('Embedding constant %r exceeded by fresh sample %r',
                        ell, fresh)
            ell = fresh
        return ell, validated

    def coercivity_ray_check(self, directions, t_schedule=DEFAULT_T_SCHEDULE,
                             rng=None, ell=None):
        """Evaluate Phi(t w) along rays and check growth and the lower bound.

        Phi(t w) must be positive at the last t, increase for t >= 100 and
        stay above |tw|_D^2/2 - ell^q |k|_(q0) |tw|_D^q / q.

        :raises CoercivityViolationError: on the first failing direction.
        :rtype: RayReport
        """
        directions = np.atleast_2d(np.asarray(directions, dtype=float))
        t_schedule = np.asarray(t_schedule, dtype=float)
        if t_schedule.size < 2 or np.any(np.diff(t_schedule) <= 0):
            raise InvalidParameterError(value=t_schedule.tolist(),
                                        param='t_schedule',
                                        reason='must be strictly increasing')
        if t_schedule[-1] < 1e4:
            raise InvalidParameterError(value=t_schedule[-1],
                                        param='t_schedule',
                                        reason='must reach at least 1e4')
        if ell is None:
            if rng is None:
                raise InvalidParameterError(
                    value=None, param='rng',
                    reason='required when ell is not given')
            ell, _ = self.embedding_constant(directions, rng)
        q = self.spec.q
        k_norm = self.energy.k_norm(self.spec.q0)
        rays = t_schedule[None, :, None] * directions[:, None, :]
        values = self.energy.phi_values(rays)
        d_norms = self.energy.d_norm(rays)
        lower = 0.5 * d_norms ** 2 - ell ** q * k_norm * d_norms ** q / q
        late = t_schedule >= 100.0
        for index in range(directions.shape[0]):
            row = values[index]
            if not row[-1] > 0:
                raise CoercivityViolationError(
                    direction=index,
                    reason='Phi(%r w) = %r is not positive'
                    % (t_schedule[-1], row[-1]))
            if np.any(np.diff(row[late]) <= 0):
                raise CoercivityViolationError(
                    direction=index,
                    reason='Phi(t w) is not increasing for t >= 100: %r'
                    % row[late].tolist())
            slack = 1e-9 * (1.0 + np.abs(row))
            if np.any(row < lower[index] - slack):
                raise CoercivityViolationError(
                    direction=index,
                    reason='Phi(t w) falls below the embedding estimate')
        return RayReport(t_schedule, values, lower, ell, k_norm)

    def _check_samples(self, samples):
        if samples < MIN_SAMPLES:
            raise InvalidParameterError(value=samples, param='samples',
                                        reason='must be >= %d' % MIN_SAMPLES)
