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
"""Tests for the transformation f and its evaluator."""
import numpy as np
import pytest

from dualvar.exceptions import InvalidParameterError
from dualvar.transform import antiderivative
from dualvar.transform import FOURTH_ROOT_2
from dualvar.transform import ode_oracle
from dualvar.transform import ode_oracle_batch
from dualvar.transform import TransformEvaluator
from dualvar.transform import upper_bound


def test_f_at_zero(evaluator):
    """f(0) = 0 and f'(0) = 1."""
    assert evaluator.eval_f(0.0) == 0.0
    assert evaluator.eval_f_prime(0.0) == 1.0


def test_f_is_odd(evaluator):
    """f(-t) = -f(t) up to roundoff."""
    ts = np.linspace(0.0, 100.0, 1001)
    np.testing.assert_allclose(evaluator.eval_f_batch(-ts),
                               -evaluator.eval_f_batch(ts), rtol=1e-12,
                               atol=0)


def test_round_trip_within_newton_tolerance(evaluator):
    """|F(f(t)) - t| <= newton_tol on [-100, 100], absolute."""
    ts = np.linspace(-100.0, 100.0, 20001)
    residual = np.abs(antiderivative(evaluator.eval_f_batch(ts)) - ts)
    assert np.max(residual) <= evaluator.newton_tol


def test_round_trip_far_out(evaluator):
    """Beyond the range where newton_tol is representable the floor is
    8 eps |t|."""
    ts = np.array([1e4, 3.7e4, 1e5, 1e6, -1e6])
    residual = np.abs(antiderivative(evaluator.eval_f_batch(ts)) - ts)
    np.testing.assert_array_equal(evaluator.inversion_tolerance(ts),
                                  8.0 * np.finfo(float).eps * np.abs(ts))
    assert np.all(residual <= evaluator.inversion_tolerance(ts))
    assert evaluator.inversion_tolerance(50.0) == evaluator.newton_tol


def test_f_prime_matches_ode(evaluator):
    """f' = 1 / sqrt(1 + 2 f^2)."""
    ts = np.linspace(-20.0, 20.0, 401)
    f, fp = evaluator.f_and_prime(ts)
    np.testing.assert_allclose((1.0 + 2.0 * f * f) * fp * fp, 1.0,
                               rtol=1e-12)


def test_agrees_with_rk4_reference(evaluator):
    """Newton evaluation matches an independent RK4 integration."""
    for t in [0.1, 1.0, 2.5, 10.0, 50.0]:
        assert abs(evaluator.eval_f(t) - ode_oracle(t, 1e-3)) <= 1e-8


def test_batch_oracle_matches_scalar_oracle():
    """One march to max(ts) reproduces separate integrations."""
    ts = np.array([3.0, 0.0, 0.25, 7.5, 1.0])
    expected = [ode_oracle(t, 1e-3) for t in ts]
    np.testing.assert_allclose(ode_oracle_batch(ts, 1e-3), expected,
                               atol=1e-10)


def test_oracle_rejects_negative_argument():
    with pytest.raises(InvalidParameterError):
        ode_oracle(-1.0, 1e-3)
    with pytest.raises(InvalidParameterError):
        ode_oracle(1.0, 0.0)
    with pytest.raises(InvalidParameterError):
        ode_oracle_batch([1.0, -0.5], 1e-3)


def test_growth_bounds(evaluator):
    """|f(t)| <= min(|t|, 2^(1/4)|t|^(1/2)) and the bound is sharp at infinity."""
    ts = np.geomspace(1e-6, 1e6, 500)
    f = evaluator.eval_f_batch(ts)
    assert np.all(f <= upper_bound(ts) * (1.0 + 1e-12))
    np.testing.assert_allclose(f[-1] / (FOURTH_ROOT_2 * np.sqrt(ts[-1])), 1.0,
                               rtol=1e-2)
    np.testing.assert_allclose(f[0] / ts[0], 1.0, rtol=1e-9)


def test_batch_preserves_shape(evaluator):
    ts = np.arange(12.0).reshape(3, 4) - 6.0
    values = evaluator.eval_f_batch(ts)
    assert values.shape == (3, 4)
    assert values[1, 2] == evaluator.eval_f(ts[1, 2])
    assert evaluator.eval_f_batch([]).shape == (0,)


def test_non_finite_input_rejected(evaluator):
    with pytest.raises(InvalidParameterError) as e:
        evaluator.eval_f_batch([0.0, 1.0, np.nan])
    assert 'ts[2]' in str(e.value)
    with pytest.raises(InvalidParameterError):
        evaluator.eval_f(np.inf)


def test_invalid_evaluator_settings():
    with pytest.raises(InvalidParameterError):
        TransformEvaluator(newton_tol=0.0)
    with pytest.raises(InvalidParameterError):
        TransformEvaluator(max_newton_iters=0)


def test_mu_is_certified(evaluator):
    """|f(t)| >= mu|t| on |t| <= 1 and >= mu|t|^(1/2) beyond."""
    mu = evaluator.cached_mu
    assert 0 < mu < 1
    small = np.linspace(1e-6, 1.0, 997)
    large = np.geomspace(1.0, 1e5, 997)
    assert np.all(evaluator.eval_f_batch(small) >= mu * small)
    assert np.all(evaluator.eval_f_batch(large) >= mu * np.sqrt(large))
    assert evaluator.cached_mu is mu


def test_delta_below_one(evaluator):
    """f(t) >= t/2 on (0, delta] and delta < 1."""
    delta = evaluator.cached_delta
    assert 0 < delta < 1
    ts = np.linspace(0.0, delta, 1001)[1:]
    assert np.all(evaluator.eval_f_batch(ts) >= 0.5 * ts)


def test_antiderivative_accepts_scalars():
    assert isinstance(antiderivative(0.5), float)
    assert antiderivative(0.0) == 0.0
    np.testing.assert_allclose(antiderivative(-2.0), -antiderivative(2.0))
