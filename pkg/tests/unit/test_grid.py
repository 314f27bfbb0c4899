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
"""Tests for the radial grid, its quadrature and stencils."""
import math

import numpy as np
import pytest

from dualvar.exceptions import InvalidParameterError
from dualvar.grid import as_values
from dualvar.grid import deriv
from dualvar.grid import graded_stretch
from dualvar.grid import Field
from dualvar.grid import integrate
from dualvar.grid import laplacian_radial
from dualvar.grid import make_grid
from dualvar.grid import random_fields
from dualvar.grid import sphere_area


def test_sphere_area():
    np.testing.assert_allclose(sphere_area(3), 4.0 * math.pi)
    np.testing.assert_allclose(sphere_area(4), 2.0 * math.pi ** 2)


def test_uniform_nodes():
    """First node at g/2, last node at R."""
    grid = make_grid(10.0, 200, 3)
    g = 10.0 / 199.5
    np.testing.assert_allclose(grid.nodes[0], 0.5 * g)
    np.testing.assert_allclose(grid.gaps, g)
    assert grid.nodes[-1] == 10.0
    assert grid.M == 200 and grid.R == 10.0


def test_stretched_nodes():
    grid = make_grid(20.0, 100, 3, stretch=1.02)
    ratios = grid.gaps[1:] / grid.gaps[:-1]
    np.testing.assert_allclose(ratios, 1.02, rtol=1e-10)
    assert grid.nodes[-1] == 20.0
    assert grid.describe()['max_gap'] > grid.describe()['min_gap']


@pytest.mark.parametrize('kwargs', [
    {'R': 0.0}, {'R': np.inf}, {'M': 15}, {'M': 100.5}, {'N': 2},
    {'stretch': 0.9}, {'boundary': 'neumann'},
])
def test_make_grid_rejects(kwargs):
    args = {'R': 10.0, 'M': 100, 'N': 3}
    args.update(kwargs)
    with pytest.raises(InvalidParameterError):
        make_grid(**args)


@pytest.mark.parametrize('dim_N', [3, 4, 5])
def test_quadrature_measures_the_ball(dim_N):
    """The dual cells cover B_R exactly."""
    grid = make_grid(5.0, 64, dim_N, stretch=1.01)
    np.testing.assert_allclose(grid.integrate(np.ones(grid.M)),
                               sphere_area(dim_N) * 5.0 ** dim_N / dim_N)


def test_quadrature_converges():
    """int exp(-r^2) dx over B_10 is close to pi^(3/2)."""
    grid = make_grid(10.0, 2000, 3)
    np.testing.assert_allclose(grid.integrate(np.exp(-grid.nodes ** 2)),
                               math.pi ** 1.5, rtol=1e-4)


def test_dirichlet_form_of_linear_profile():
    """The interpolant of R - r has |grad|^2 = 1 on [r_1, R]."""
    grid = make_grid(4.0, 50, 3, stretch=1.03)
    values = grid.R - grid.nodes
    expected = 0.5 * sphere_area(3) * (grid.R ** 3 - grid.nodes[0] ** 3) / 3
    np.testing.assert_allclose(grid.dirichlet_form(values), expected)
    np.testing.assert_allclose(grid.d_inner(values, values),
                               2.0 * grid.dirichlet_form(values))


def test_stiffness_is_gradient_of_dirichlet_form():
    grid = make_grid(6.0, 40, 3, boundary='harmonic')
    rng = np.random.default_rng(3)
    values = rng.standard_normal(grid.M)
    np.testing.assert_allclose(values.dot(grid.stiffness_apply(values)),
                               2.0 * grid.dirichlet_form(values))
    direction = rng.standard_normal(grid.M)
    eps = 1e-3
    fd = (grid.dirichlet_form(values + eps * direction) -
          grid.dirichlet_form(values - eps * direction)) / (2 * eps)
    np.testing.assert_allclose(fd, grid.stiffness_apply(values).dot(direction),
                               rtol=1e-7)


def test_stiffness_banded_matches_apply():
    grid = make_grid(6.0, 40, 3, boundary='harmonic')
    ab = grid.stiffness_banded()
    dense = (np.diag(ab[1]) + np.diag(ab[0, 1:], 1) + np.diag(ab[2, :-1], -1))
    values = np.linspace(1.0, 0.0, grid.M)
    np.testing.assert_allclose(dense.dot(values), grid.stiffness_apply(values))


def test_dirichlet_boundary_holds_last_node():
    grid = make_grid(6.0, 40, 3)
    assert not grid.free_mask[-1] and grid.free_mask[:-1].all()
    assert grid.project(np.ones(grid.M))[-1] == 0.0
    assert grid.boundary_coeff == 0.0
    harmonic = make_grid(6.0, 40, 3, boundary='harmonic')
    assert harmonic.free_mask.all()
    assert harmonic.project(np.ones(harmonic.M))[-1] == 1.0


def test_harmonic_closure_adds_exterior_energy():
    """v = 1 on B_R extends as (R/r)^(N-2) with energy (N-2) omega R^(N-2) / 2."""
    grid = make_grid(3.0, 32, 3, boundary='harmonic')
    np.testing.assert_allclose(grid.dirichlet_form(np.ones(grid.M)),
                               0.5 * sphere_area(3) * 3.0)


def test_radial_laplacian_of_quadratic():
    """Lap r^2 = 2N, reproduced exactly by the three point stencils."""
    grid = make_grid(2.0, 64, 3, stretch=1.02)
    field = Field.from_function(grid, lambda r: r * r)
    np.testing.assert_allclose(laplacian_radial(field).values, 6.0,
                               rtol=1e-8)
    np.testing.assert_allclose(deriv(field).values, 2.0 * grid.nodes,
                               rtol=1e-8)


@pytest.mark.parametrize('grading', [1.0, 20.0])
def test_deriv_of_sine_is_second_order(grading):
    """Max error of (sin r)' away from the reflected first node."""
    errors = []
    for M in (200, 400):
        grid = make_grid(3.0, M, 3, stretch=graded_stretch(grading, M))
        field = Field.from_function(grid, np.sin)
        error = deriv(field).values - np.cos(grid.nodes)
        errors.append(np.max(np.abs(error[1:])))
    assert math.log2(errors[0] / errors[1]) >= 1.9


def test_graded_stretch():
    grid = make_grid(20.0, 400, 3, stretch=graded_stretch(20.0, 400))
    np.testing.assert_allclose(grid.gaps.max() / grid.gaps.min(), 20.0,
                               rtol=1e-9)
    assert graded_stretch(1.0, 64) == 1.0
    with pytest.raises(InvalidParameterError):
        graded_stretch(0.5, 64)
    with pytest.raises(InvalidParameterError):
        graded_stretch(20.0, 8)


def test_radial_laplacian_of_gaussian():
    grid = make_grid(6.0, 600, 3)
    r = grid.nodes
    values = np.exp(-r * r)
    expected = (4.0 * r * r - 6.0) * values
    np.testing.assert_allclose(grid.laplacian_radial(values), expected,
                               atol=5e-3)


def test_field_validation(grid):
    with pytest.raises(InvalidParameterError):
        Field(grid, np.zeros(grid.M + 1))
    with pytest.raises(InvalidParameterError):
        Field(grid, np.full(grid.M, np.nan))
    field = Field(grid, np.ones(grid.M))
    assert len(field) == grid.M
    assert field.max_abs == 1.0
    with pytest.raises(ValueError):
        field.values[0] = 2.0


def test_as_values(grid):
    other = make_grid(10.0, 200, 3)
    with pytest.raises(InvalidParameterError):
        as_values(Field(other, other.zeros()), grid)
    with pytest.raises(InvalidParameterError):
        as_values(np.zeros(3), grid)
    assert as_values(np.zeros((2, grid.M)), grid).shape == (2, grid.M)


def test_integrate_field(grid):
    field = Field(grid, np.ones(grid.M))
    np.testing.assert_allclose(integrate(field),
                               4.0 / 3.0 * math.pi * grid.R ** 3)


def test_random_fields_are_seeded(grid):
    first = random_fields(grid, 5, np.random.default_rng(11))
    second = random_fields(grid, 5, np.random.default_rng(11))
    assert first.shape == (5, grid.M)
    np.testing.assert_array_equal(first, second)
    assert np.all(first[:, -1] == 0.0)
