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
"""Radial grids on (0, R] with the measure |S^(N-1)| r^(N-1) dr.

Nodes are cell centred near the origin: the first node sits at half the first
gap, so an even reflection through r = 0 places a ghost node at -r_1. The last
node is r_M = R. Quadrature weights are the exact measures of the dual cells
[b_(i-1), b_i], with b_0 = 0, b_i the midpoint of r_i and r_(i+1), b_M = R.
"""
import logging
import math

import numpy as np
from scipy.special import gamma

from dualvar.exceptions import InvalidParameterError

LOG = logging.getLogger('dualvar.grid')

DIRICHLET = 'dirichlet'
HARMONIC = 'harmonic'
BOUNDARY_KINDS = (DIRICHLET, HARMONIC)
MIN_NODES = 16


def sphere_area(dim_N):
    """Surface measure of the unit sphere in R^N: 2 pi^(N/2) / Gamma(N/2)."""
    return 2.0 * math.pi ** (dim_N / 2.0) / float(gamma(dim_N / 2.0))


class RadialGrid(object):
    """Immutable radial grid with quadrature and stencils.

    The discrete Dirichlet form is the exact integral of the piecewise linear
    interpolant: D(v) = 1/2 sum_i kappa_i (v_(i+1) - v_i)^2 with
    kappa_i = omega (r_(i+1)^N - r_i^N) / (N g_i^2). With ``harmonic`` closure
    the energy of the exterior extension v_M (R/r)^(N-2) is added and v_M is
    free; with ``dirichlet`` v_M is held at zero.
    """

    def __init__(self, nodes, dim_N, boundary=DIRICHLET):
        nodes = np.array(nodes, dtype=float)
        if boundary not in BOUNDARY_KINDS:
            raise InvalidParameterError(
                value=boundary, param='boundary',
                reason='must be one of %s' % ', '.join(BOUNDARY_KINDS))
        if nodes.ndim != 1 or nodes.size < MIN_NODES:
            raise InvalidParameterError(value=nodes.size, param='M',
                                        reason='must be >= %d' % MIN_NODES)
        if nodes[0] <= 0 or np.any(np.diff(nodes) <= 0):
            raise InvalidParameterError(
                value='nodes', param='nodes',
                reason='must be positive and strictly increasing')
        self.dim_N = int(dim_N)
        self.boundary = boundary
        self.nodes = nodes
        self.nodes.flags.writeable = False
        self.sphere_area = sphere_area(self.dim_N)
        N = self.dim_N
        omega = self.sphere_area
        R = nodes[-1]
        # Gap to the ghost node at -r_1 comes first.
        self.gaps = np.diff(nodes)
        self.ghost_gap = 2.0 * nodes[0]
        bounds = np.concatenate(([0.0], 0.5 * (nodes[1:] + nodes[:-1]), [R]))
        self.quad_weights = omega / N * np.diff(bounds ** N)
        self.edge_coeffs = (omega * np.diff(nodes ** N) /
                            (N * self.gaps * self.gaps))
        if boundary == HARMONIC:
            self.boundary_coeff = omega * (N - 2.0) * R ** (N - 2.0)
        else:
            self.boundary_coeff = 0.0
        self.free_mask = np.ones(nodes.size, dtype=bool)
        if boundary == DIRICHLET:
            self.free_mask[-1] = False
        for array in (self.gaps, self.quad_weights, self.edge_coeffs,
                      self.free_mask):
            array.flags.writeable = False

    def __repr__(self):
        return 'RadialGrid(R=%r, M=%r, dim_N=%r, boundary=%r)' % (
            self.R, self.M, self.dim_N, self.boundary)

    @property
    def R(self):
        return float(self.nodes[-1])

    @property
    def M(self):
        return int(self.nodes.size)

    def describe(self):
        return {'R': self.R, 'M': self.M, 'dim_N': self.dim_N,
                'boundary': self.boundary, 'r_1': float(self.nodes[0]),
                'max_gap': float(self.gaps.max()),
                'min_gap': float(self.gaps.min())}

    def zeros(self):
        return np.zeros(self.M)

    def project(self, values):
        """Impose the boundary condition on an array of shape (..., M)."""
        values = np.array(values, dtype=float)
        if self.boundary == DIRICHLET:
            values[..., -1] = 0.0
        return values

    def integrate(self, values):
        return np.sum(np.asarray(values) * self.quad_weights, axis=-1)

    def l2_norm(self, values):
        values = np.asarray(values)
        return np.sqrt(self.integrate(values * values))

    def dirichlet_form(self, values):
        """1/2 the squared D-norm of the piecewise linear interpolant."""
        values = np.asarray(values, dtype=float)
        jumps = np.diff(values, axis=-1)
        total = np.sum(self.edge_coeffs * jumps * jumps, axis=-1)
        total = total + self.boundary_coeff * values[..., -1] ** 2
        return 0.5 * total

    def d_inner(self, a, b):
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        total = np.sum(self.edge_coeffs * np.diff(a, axis=-1) *
                       np.diff(b, axis=-1), axis=-1)
        return total + self.boundary_coeff * a[..., -1] * b[..., -1]

    def stiffness_apply(self, values):
        """K v, the gradient of dirichlet_form."""
        values = np.asarray(values, dtype=float)
        flux = self.edge_coeffs * np.diff(values, axis=-1)
        out = np.zeros(values.shape)
        out[..., :-1] -= flux
        out[..., 1:] += flux
        out[..., -1] += self.boundary_coeff * values[..., -1]
        return out

    def stiffness_banded(self, shift=None):
        """K + diag(shift) in the (1, 1) banded layout of solve_banded.

        Held nodes get an identity row.
        """
        ab = np.zeros((3, self.M))
        diagonal = np.zeros(self.M)
        diagonal[:-1] += self.edge_coeffs
        diagonal[1:] += self.edge_coeffs
        diagonal[-1] += self.boundary_coeff
        if shift is not None:
            diagonal = diagonal + shift
        ab[0, 1:] = -self.edge_coeffs
        ab[1] = diagonal
        ab[2, :-1] = -self.edge_coeffs
        if self.boundary == DIRICHLET:
            ab[1, -1] = 1.0
            ab[0, -1] = 0.0
            ab[2, -2] = 0.0
        return ab

    def _extended(self, values):
        values = np.asarray(values, dtype=float)
        ghost = values[..., :1]
        return (np.concatenate((ghost, values), axis=-1),
                np.concatenate(([-self.nodes[0]], self.nodes)))

    def deriv(self, values):
        """Second order first derivative; even reflection at the origin."""
        extended, coords = self._extended(values)
        return np.gradient(extended, coords, axis=-1, edge_order=2)[..., 1:]

    def second_deriv(self, values):
        extended, x = self._extended(values)
        out = np.empty(np.shape(values))
        # Centred three point stencils at every node but the last.
        x0, x1, x2 = x[:-2], x[1:-1], x[2:]
        v0, v1, v2 = extended[..., :-2], extended[..., 1:-1], extended[..., 2:]
        out[..., :-1] = _three_point_second(x0, x1, x2, v0, v1, v2)
        out[..., -1] = _three_point_second(x[-3], x[-2], x[-1],
                                           extended[..., -3],
                                           extended[..., -2],
                                           extended[..., -1])
        return out

    def laplacian_radial(self, values):
        """v'' + (N - 1)/r v' with the regularity condition v'(0) = 0."""
        return (self.second_deriv(values) +
                (self.dim_N - 1.0) / self.nodes * self.deriv(values))


def _three_point_second(x0, x1, x2, v0, v1, v2):
    return 2.0 * (v0 / ((x0 - x1) * (x0 - x2)) +
                  v1 / ((x1 - x0) * (x1 - x2)) +
                  v2 / ((x2 - x0) * (x2 - x1)))


def graded_stretch(grading, M):
    """Gap ratio whose M - 1 gaps span a widest to narrowest ratio of
    ``grading``.

    Doubling M at fixed grading roughly halves every gap.
    """
    if not (grading >= 1 and math.isfinite(grading)):
        raise InvalidParameterError(value=grading, param='grading',
                                    reason='must be finite and >= 1')
    if int(M) != M or M < MIN_NODES:
        raise InvalidParameterError(value=M, param='M',
                                    reason='must be an integer >= %d'
                                    % MIN_NODES)
    return float(grading) ** (1.0 / (int(M) - 2))


def make_grid(R, M, N, stretch=1.0, boundary=DIRICHLET):
    """Build a radial grid with geometric gaps g_j = g * stretch^j.

    The first node sits at g/2 and the last at R exactly.

    :rtype: RadialGrid
    """
    if not (R > 0 and math.isfinite(R)):
        raise InvalidParameterError(value=R, param='R',
                                    reason='must be finite and > 0')
    if int(M) != M or M < MIN_NODES:
        raise InvalidParameterError(value=M, param='M',
                                    reason='must be an integer >= %d'
                                    % MIN_NODES)
    if int(N) != N or N < 3:
        raise InvalidParameterError(value=N, param='N',
                                    reason='must be an integer >= 3')
    if not (stretch >= 1 and math.isfinite(stretch)):
        raise InvalidParameterError(value=stretch, param='stretch',
                                    reason='must be finite and >= 1')
    M = int(M)
    ratios = float(stretch) ** np.arange(1, M)
    g = R / (0.5 + ratios.sum())
    nodes = 0.5 * g + g * np.concatenate(([0.0], np.cumsum(ratios)))
    nodes[-1] = R
    LOG.debug('Grid R=%r M=%r N=%r stretch=%r boundary=%s, r_1=%r', R, M, N,
              stretch, boundary, nodes[0])
    return RadialGrid(nodes, int(N), boundary)


class Field(object):
    """A grid function: one real value per node."""

    def __init__(self, grid, values):
        values = np.array(values, dtype=float)
        if values.shape != (grid.M,):
            raise InvalidParameterError(
                value=values.shape, param='values',
                reason='expected shape (%d,)' % grid.M)
        if not np.all(np.isfinite(values)):
            raise InvalidParameterError(value='non-finite', param='values',
                                        reason='all entries must be finite')
        values.flags.writeable = False
        self.grid = grid
        self.values = values

    def __repr__(self):
        return 'Field(%r, max_abs=%r)' % (self.grid, self.max_abs)

    def __len__(self):
        return self.values.size

    @property
    def max_abs(self):
        return float(np.max(np.abs(self.values)))

    @classmethod
    def from_function(cls, grid, func):
        return cls(grid, func(grid.nodes))


def as_values(v, grid):
    """Values of a Field or array-like ``v`` checked against ``grid``."""
    if isinstance(v, Field):
        if v.grid is not grid:
            raise InvalidParameterError(value=v.grid, param='grid',
                                        reason='field lives on another grid')
        return v.values
    values = np.asarray(v, dtype=float)
    if values.shape[-1:] != (grid.M,):
        raise InvalidParameterError(value=values.shape, param='values',
                                    reason='last axis must have %d entries'
                                    % grid.M)
    return values


def deriv(v):
    return Field(v.grid, v.grid.deriv(v.values))


def laplacian_radial(v):
    return Field(v.grid, v.grid.laplacian_radial(v.values))


def integrate(v):
    return float(v.grid.integrate(v.values))


def random_fields(grid, count, rng, amplitude=1.0, terms=3):
    """Smooth random fields: sums of Gaussians with random centres and widths.

    Returns an array of shape (count, M) satisfying the boundary condition.
    """
    R = grid.R
    shape = (count, terms)
    centers = rng.uniform(0.0, 0.5 * R, shape)
    widths = rng.uniform(0.3, max(0.6, R / 8.0), shape)
    amplitudes = rng.uniform(-amplitude, amplitude, shape)
    scaled = (grid.nodes - centers[..., None]) / widths[..., None]
    values = np.sum(amplitudes[..., None] * np.exp(-scaled * scaled), axis=1)
    return grid.project(values)
