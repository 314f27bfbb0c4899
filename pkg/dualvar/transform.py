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
"""Evaluation of the dual transformation f.

f is the odd solution of f'(t) = 1 / sqrt(1 + 2 f(t)^2), f(0) = 0. It has no
closed form, but its inverse does: F(u) = integral of sqrt(1 + 2 s^2) over
[0, u]. Every evaluation of f inverts F by Newton's method, starting from the
upper bound min(|t|, 2^(1/4) |t|^(1/2)), with a bisection fallback on [0, |t|].
"""
import logging
import math

import numpy as np
from scipy.optimize import bisect

from dualvar.exceptions import InvalidParameterError
from dualvar.exceptions import TransformInversionError
from dualvar.utils import CachedProperty

LOG = logging.getLogger('dualvar.transform')

SQRT2 = math.sqrt(2.0)
FOURTH_ROOT_2 = 2.0 ** 0.25

DEFAULT_NEWTON_TOL = 1e-12
DEFAULT_MAX_NEWTON_ITERS = 100
# Sampling range and safety margin of the certified constant mu.
MU_SAMPLE_MAX = 1e6
MU_SAFETY_MARGIN = 1e-8
# delta is kept strictly below one.
DELTA_MARGIN = 1e-6
# Residual floor, in units of eps |t|, that F can be evaluated to.
ROUNDOFF_ULPS = 8.0
EPS = np.finfo(float).eps


def antiderivative(u):
    """Return F(u) = (u/2) sqrt(1 + 2u^2) + asinh(sqrt(2) u) / (2 sqrt(2)).

    Accepts a scalar or an array; scalars come back as ``float``.
    """
    u = np.asarray(u, dtype=float)
    value = (0.5 * u * np.sqrt(1.0 + 2.0 * u * u) +
             np.arcsinh(SQRT2 * u) / (2.0 * SQRT2))
    if value.ndim == 0:
        return float(value)
    return value


def antiderivative_prime(u):
    u = np.asarray(u, dtype=float)
    return np.sqrt(1.0 + 2.0 * u * u)


def upper_bound(t):
    """The bound min(|t|, 2^(1/4) |t|^(1/2)) on |f(t)|."""
    t = np.abs(np.asarray(t, dtype=float))
    return np.minimum(t, FOURTH_ROOT_2 * np.sqrt(t))


def _rk4_step(y, h):
    k1 = 1.0 / math.sqrt(1.0 + 2.0 * y * y)
    y2 = y + 0.5 * h * k1
    k2 = 1.0 / math.sqrt(1.0 + 2.0 * y2 * y2)
    y3 = y + 0.5 * h * k2
    k3 = 1.0 / math.sqrt(1.0 + 2.0 * y3 * y3)
    y4 = y + h * k3
    k4 = 1.0 / math.sqrt(1.0 + 2.0 * y4 * y4)
    return y + h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0


def ode_oracle(t, step):
    """Integrate f' = 1/sqrt(1 + 2 f^2) from 0 to t with classical RK4.

    The step is shrunk so that an integer number of steps lands on t. This is
    an independent reference for cross-validating the Newton evaluation, not a
    production evaluator.
    """
    if not t >= 0:
        raise InvalidParameterError(value=t, param='t', reason='must be >= 0')
    if not step > 0:
        raise InvalidParameterError(value=step, param='step',
                                    reason='must be > 0')
    if t == 0:
        return 0.0
    n_steps = max(1, int(math.ceil(t / step - 1e-9)))
    h = t / n_steps
    y = 0.0
    for _ in range(n_steps):
        y = _rk4_step(y, h)
    return y


def ode_oracle_batch(ts, step):
    """RK4 reference values at every t in ``ts`` (all >= 0) in one march.

    The march advances with a fixed step and takes one partial step from the
    current state to each requested t, so a whole sample costs a single
    integration up to max(ts).
    """
    ts = np.asarray(ts, dtype=float)
    if ts.size and not np.all(ts >= 0):
        raise InvalidParameterError(value=float(ts.min()), param='ts',
                                    reason='all entries must be >= 0')
    if not step > 0:
        raise InvalidParameterError(value=step, param='step',
                                    reason='must be > 0')
    out = np.zeros(ts.shape)
    order = np.argsort(ts, kind='stable')
    position = 0.0
    y = 0.0
    for index in order:
        target = ts[index]
        while position + step <= target:
            y = _rk4_step(y, step)
            position += step
        remaining = target - position
        out[index] = _rk4_step(y, remaining) if remaining > 0 else y
    return out


class TransformEvaluator(object):
    """Evaluator for f, f' and F with certified constants mu and delta.

    :type newton_tol: float
    :param newton_tol: Inversion tolerance. An evaluation u = f(t) is accepted
        when |F(u) - t| <= max(newton_tol, 8 eps |t|); the second term only
        matters where newton_tol is below the spacing of doubles near t.
    :type max_newton_iters: int
    :param max_newton_iters: Iteration cap for Newton and, separately, for the
        bisection fallback.

    Instances hold no mutable state besides the lazily computed constants and
    may be shared between threads.
    """

    def __init__(self, newton_tol=DEFAULT_NEWTON_TOL,
                 max_newton_iters=DEFAULT_MAX_NEWTON_ITERS):
        if not newton_tol > 0:
            raise InvalidParameterError(value=newton_tol, param='newton_tol',
                                        reason='must be > 0')
        if int(max_newton_iters) < 1:
            raise InvalidParameterError(value=max_newton_iters,
                                        param='max_newton_iters',
                                        reason='must be >= 1')
        self._newton_tol = float(newton_tol)
        self._max_newton_iters = int(max_newton_iters)

    def __repr__(self):
        return 'TransformEvaluator(newton_tol=%r, max_newton_iters=%r)' % (
            self._newton_tol, self._max_newton_iters)

    @property
    def newton_tol(self):
        return self._newton_tol

    @property
    def max_newton_iters(self):
        return self._max_newton_iters

    def inversion_tolerance(self, t):
        """Accepted |F(u) - t| at t: newton_tol, or 8 eps |t| when larger."""
        return np.maximum(self._newton_tol,
                          ROUNDOFF_ULPS * EPS * np.abs(np.asarray(t, dtype=float)))

    def antiderivative(self, u):
        return antiderivative(u)

    def eval_f(self, t):
        t = float(t)
        return float(self.eval_f_batch([t])[0])

    def eval_f_prime(self, t):
        f = self.eval_f(t)
        return 1.0 / math.sqrt(1.0 + 2.0 * f * f)

    def eval_f_batch(self, ts):
        """Evaluate f elementwise, preserving shape and order."""
        ts = np.asarray(ts, dtype=float)
        if ts.size == 0:
            return np.zeros(ts.shape)
        bad = np.flatnonzero(~np.isfinite(ts))
        if bad.size:
            index = int(bad[0])
            raise InvalidParameterError(value=ts.flat[index],
                                        param='ts[%d]' % index,
                                        reason='must be finite')
        flat = ts.ravel()
        magnitude = self._invert(np.abs(flat))
        return (np.sign(flat) * magnitude).reshape(ts.shape)

    def f_and_prime(self, ts):
        """Return (f(ts), f'(ts)) as arrays of the input shape."""
        f = self.eval_f_batch(ts)
        return f, 1.0 / np.sqrt(1.0 + 2.0 * f * f)

    def _invert(self, t):
        # t >= 0 here; oddness is applied by the caller.
        tol = self.inversion_tolerance(t)
        u = upper_bound(t)
        done = np.abs(antiderivative(u) - t) <= tol
        stalled = np.zeros(t.shape, dtype=bool)
        for _ in range(self._max_newton_iters):
            if np.all(done | stalled):
                break
            work = ~(done | stalled)
            uw = u[work]
            step = (antiderivative(uw) - t[work]) / antiderivative_prime(uw)
            u_new = np.maximum(uw - step, 0.0)
            stalled[work] = u_new == uw
            u[work] = u_new
            done[work] = np.abs(antiderivative(u_new) - t[work]) <= tol[work]
        pending = np.flatnonzero(~done)
        if pending.size:
            LOG.debug('Newton left %d of %d entries unresolved, bisecting',
                      pending.size, t.size)
            u[pending] = self._bisect(t[pending], tol[pending], pending)
        return u

    def _bisect(self, t, tol, indices):
        lo = np.zeros(t.shape)
        hi = t.copy()
        mid = 0.5 * (lo + hi)
        done = np.zeros(t.shape, dtype=bool)
        for _ in range(self._max_newton_iters):
            mid = 0.5 * (lo + hi)
            residual = antiderivative(mid) - t
            done |= np.abs(residual) <= tol
            if np.all(done):
                return mid
            above = residual > 0
            hi = np.where(done | ~above, hi, mid)
            lo = np.where(done | above, lo, mid)
            mid = np.where(done, mid, 0.5 * (lo + hi))
        residual = np.abs(antiderivative(mid) - t)
        failed = np.flatnonzero(residual > tol)
        if failed.size:
            first = int(failed[0])
            raise TransformInversionError(t=float(t[first]),
                                          index=int(indices[first]),
                                          max_iters=self._max_newton_iters,
                                          residual=float(residual[first]))
        return mid

    @CachedProperty
    def cached_mu(self):
        return self.estimate_mu()

    @CachedProperty
    def cached_delta(self):
        return self.estimate_delta()

    def estimate_mu(self, samples=20000, t_max=MU_SAMPLE_MAX):
        """Largest mu with |f(t)| >= mu|t| on |t| <= 1 and mu|t|^(1/2) beyond.

        The minimum is taken over a dense sample and lowered by
        ``MU_SAFETY_MARGIN``; both inequalities are then re-checked on an
        interleaved sample that shares no points with the first one.
        """
        small = np.linspace(0.0, 1.0, samples + 1)[1:]
        large = np.geomspace(1.0, t_max, samples)
        ratio = min(np.min(self.eval_f_batch(small) / small),
                    np.min(self.eval_f_batch(large) / np.sqrt(large)))
        mu = float(ratio) - MU_SAFETY_MARGIN
        fresh_small = 0.5 * (small[1:] + small[:-1])
        fresh_large = np.sqrt(large[1:] * large[:-1])
        worst = min(np.min(self.eval_f_batch(fresh_small) - mu * fresh_small),
                    np.min(self.eval_f_batch(fresh_large) -
                           mu * np.sqrt(fresh_large)))
        if worst < 0:
            LOG.warning('mu=%r failed re-verification by %r, lowering', mu,
                        worst)
            mu += 2.0 * worst
        LOG.debug('Estimated mu=%r', mu)
        return mu

    def estimate_delta(self, samples=10000):
        """delta = min(delta*, 1 - 1e-6) where f(delta*) = delta*/2.

        f(t)/t decreases from 1, so f(t) >= t/2 holds on the whole of
        (0, delta*].
        """
        def gap(t):
            return self.eval_f(t) - 0.5 * t

        hi = 2.0
        while gap(hi) >= 0:
            hi *= 2.0
        delta_star = bisect(gap, hi / 2.0 if hi > 2.0 else 1e-3, hi,
                            xtol=1e-14, maxiter=200)
        delta = min(delta_star, 1.0 - DELTA_MARGIN)
        ts = np.linspace(0.0, delta, samples + 1)[1:]
        values = self.eval_f_batch(ts)
        violated = np.flatnonzero(values < 0.5 * ts)
        if violated.size:
            LOG.warning('f(t) >= t/2 fails at t=%r, shrinking delta',
                        ts[violated[0]])
            delta = float(ts[max(violated[0] - 1, 0)])
        LOG.debug('Estimated delta*=%r, delta=%r', delta_star, delta)
        return float(delta)
