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
"""Executable property suites for the transform, the energy and solutions.

Inequality properties pass when their worst margin (right side minus left
side) is at least ``SLACK``; identities pass when the worst deviation stays
within their tolerance.
"""
import logging
import os

import numpy as np

from dualvar.exceptions import PreconditionError
from dualvar.exceptions import PropertyViolationError
from dualvar.geometry import bump_fields
from dualvar.grid import as_values
from dualvar.grid import Field
from dualvar.grid import random_fields
from dualvar.serialize import write_field_csv
from dualvar.solve import ground_state
from dualvar.solve import recover_u
from dualvar.transform import antiderivative
from dualvar.transform import FOURTH_ROOT_2
from dualvar.transform import ode_oracle_batch

LOG = logging.getLogger('dualvar.verify')

SLACK = -1e-10
IDENTITY_TOL = 1e-12
ODE_TOL = 1e-8
ODE_STEP = 1e-3
CONVEXITY_TOL = 1e-8
SIGN_TOL = 1e-8
ENERGY_IDENTITY_TOL = 1e-8
WEAK_BOUND_FACTOR = 10.0
BOUNDARY_LAYER = 0.05
WITNESS_FILE = 'energy_identity_witness.csv'


class PropertyCheck(object):
    def __init__(self, suite, property, worst_margin, passed, witness=None):
        self.suite = suite
        self.property = property
        self.worst_margin = float(worst_margin)
        self.passed = bool(passed)
        self.witness = witness

    def __repr__(self):
        return 'PropertyCheck(%r, %r, worst_margin=%r, passed=%r)' % (
            self.suite, self.property, self.worst_margin, self.passed)

    def to_dict(self):
        return {'suite': self.suite, 'property': self.property,
                'worst_margin': self.worst_margin, 'passed': self.passed,
                'witness': self.witness}


class SuiteReport(object):
    """Named collection of PropertyCheck records."""

    def __init__(self, name, checks=None, notes=None):
        self.name = name
        self.checks = list(checks or [])
        self.notes = list(notes or [])

    def __repr__(self):
        return 'SuiteReport(%r, checks=%d, passed=%r)' % (
            self.name, len(self.checks), self.passed)

    def __getitem__(self, property):
        for check in self.checks:
            if check.property == property:
                return check
        raise KeyError(property)

    @property
    def passed(self):
        return all(check.passed for check in self.checks)

    @property
    def failed(self):
        return [check for check in self.checks if not check.passed]

    def add(self, property, margins, witnesses=None, threshold=SLACK):
        """Record the worst of ``margins``; passes when it is >= threshold."""
        margins = np.atleast_1d(np.asarray(margins, dtype=float))
        if margins.size == 0:
            check = PropertyCheck(self.name, property, np.inf, True)
        else:
            worst = int(np.argmin(np.where(np.isnan(margins), -np.inf,
                                           margins)))
            witness = None
            if witnesses is not None:
                witness = np.atleast_1d(witnesses)[worst]
                witness = witness.tolist() if hasattr(witness, 'tolist') \
                    else witness
            passed = margins[worst] >= threshold
            check = PropertyCheck(self.name, property, margins[worst],
                                  passed, witness)
        if not check.passed:
            LOG.warning('%s: %s failed with margin %r at %r', self.name,
                        property, check.worst_margin, check.witness)
        self.checks.append(check)
        return check

    def add_tolerance(self, property, deviations, tol, witnesses=None):
        """Record an identity: passes when every |deviation| <= tol."""
        return self.add(property, tol - np.abs(deviations), witnesses,
                        threshold=0.0)

    def merge(self, other):
        self.checks.extend(other.checks)
        self.notes.extend(other.notes)
        return self

    def check(self):
        """:raises PropertyViolationError: on the first failed property."""
        for check in self.checks:
            if not check.passed:
                raise PropertyViolationError(property=check.property,
                                             suite=check.suite,
                                             margin=check.worst_margin,
                                             witness=check.witness)
        return self

    def to_dict(self):
        return {'suite': self.name, 'passed': self.passed,
                'checks': [check.to_dict() for check in self.checks],
                'notes': list(self.notes)}


class ResidualReport(object):
    def __init__(self, weak_residual, strong_residual, test_count, bound=None,
                 amplification=None, transformed_residual=None,
                 per_test=None, nominal_bound=None):
        if test_count < 1:
            raise PreconditionError(check='ResidualReport',
                                    reason='at least one test function')
        self.weak_residual = float(weak_residual)
        self.strong_residual = strong_residual
        self.test_count = int(test_count)
        self.bound = bound
        self.amplification = amplification
        self.transformed_residual = transformed_residual
        self.per_test = per_test
        self.nominal_bound = nominal_bound

    def __repr__(self):
        return 'ResidualReport(weak_residual=%r, bound=%r, test_count=%r)' % (
            self.weak_residual, self.bound, self.test_count)

    @property
    def within_bound(self):
        return self.bound is None or self.weak_residual <= self.bound

    def to_dict(self):
        return {'weak_residual': self.weak_residual,
                'strong_residual': self.strong_residual,
                'transformed_residual': self.transformed_residual,
                'test_count': self.test_count, 'bound': self.bound,
                'nominal_bound': self.nominal_bound,
                'amplification': self.amplification}


def transform_samples(sample_count, t_range, rng):
    """Deterministic points, then ``sample_count`` uniform draws."""
    special = np.array([0.0, 1e-12, 1e-8, 1e-3, 0.5, 1.0, 2.0, 10.0,
                        t_range])
    special = special[special <= t_range]
    deterministic = np.concatenate(
        (np.linspace(-t_range, t_range, sample_count + 1), special, -special))
    return np.concatenate(
        (deterministic, rng.uniform(-t_range, t_range, sample_count)))


def run_transform_properties(evaluator, sample_count=10000, t_range=100.0,
                             rng=None):
    """Check the listed properties of f on samples of [-t_range, t_range].

    :rtype: SuiteReport
    """
    if sample_count < 1000:
        raise PreconditionError(check='run_transform_properties',
                                reason='sample_count must be >= 1000')
    if rng is None:
        rng = np.random.default_rng(0)
    suite = SuiteReport('transform')
    ts = transform_samples(sample_count, t_range, rng)
    at = np.abs(ts)
    f, fp = evaluator.f_and_prime(ts)
    af = np.abs(f)
    f_neg = evaluator.eval_f_batch(-ts)

    suite.add_tolerance('odd', f_neg + f, IDENTITY_TOL * np.maximum(1.0, af),
                        ts)
    suite.add_tolerance('f(0)=0', [evaluator.eval_f(0.0)], IDENTITY_TOL,
                        [0.0])
    order = np.argsort(ts, kind='stable')
    ordered = ts[order]
    distinct = np.diff(ordered) > 0
    suite.add('strictly_increasing', np.diff(f[order])[distinct],
              ordered[1:][distinct], threshold=np.finfo(float).tiny)
    suite.add_tolerance("f'(0)=1", [evaluator.eval_f_prime(0.0) - 1.0],
                        IDENTITY_TOL, [0.0])
    suite.add('|f|<=|t|', at - af, ts)
    suite.add("f'>0", fp, ts, threshold=np.finfo(float).tiny)
    suite.add("f'<=1", 1.0 - fp, ts)
    suite.add('|f|<=2^(1/4)|t|^(1/2)', FOURTH_ROOT_2 * np.sqrt(at) - af, ts)
    suite.add("|ff'|<=1", 1.0 - np.abs(f * fp), ts)
    suite.add("f^2>=ff't", f * f - f * fp * ts, ts)
    suite.add("ff't>=f^2/2", f * fp * ts - 0.5 * f * f, ts)
    mu = evaluator.cached_mu
    small = at <= 1.0
    suite.add('mu_small', af[small] - mu * at[small], ts[small])
    suite.add('mu_large', af[~small] - mu * np.sqrt(at[~small]), ts[~small])
    suite.add('mu_range', [mu, 1.0 - mu], threshold=0.0)
    suite.add_tolerance("(1+2f^2)f'^2=1", (1.0 + 2.0 * f * f) * fp * fp - 1.0,
                        IDENTITY_TOL, ts)
    suite.add_tolerance('round_trip', antiderivative(f) - ts,
                        evaluator.inversion_tolerance(at), ts)
    reference = ode_oracle_batch(at, ODE_STEP)
    suite.add_tolerance('ode_agreement', reference - af, ODE_TOL, ts)
    suite.notes.append('mu=%r' % mu)
    return suite


def _eta(f, s):
    return np.abs(f) ** s


def check_eta_convexity(evaluator, s, t_range=10.0, step=1e-3, pairs=1000,
                        rng=None):
    """Convexity of eta(t) = |f(t)|^s and its tangent inequality.

    Also checks that eta'(t) = s|f|^(s-2) f f' is nondecreasing.

    :rtype: SuiteReport
    """
    if not s > 2:
        raise PreconditionError(check='check_eta_convexity',
                                reason='s must be > 2, got %r' % s)
    if not step > 0:
        raise PreconditionError(check='check_eta_convexity',
                                reason='step must be > 0, got %r' % step)
    if rng is None:
        rng = np.random.default_rng(0)
    suite = SuiteReport('convexity(s=%r)' % s)
    count = int(round(2.0 * t_range / step))
    ts = np.linspace(-t_range, t_range, count + 1)
    f, fp = evaluator.f_and_prime(ts)
    eta = _eta(f, s)
    second = eta[2:] - 2.0 * eta[1:-1] + eta[:-2]
    suite.add('second_difference', second / np.maximum(1.0, eta[1:-1]),
              ts[1:-1], threshold=-CONVEXITY_TOL)

    alpha = rng.uniform(-t_range, t_range, pairs)
    beta = rng.uniform(-t_range, t_range, pairs)
    # Equal pairs make the inequality an identity.
    alpha = np.concatenate((alpha, alpha[:10]))
    beta = np.concatenate((beta, alpha[:10]))
    fa, fpa = evaluator.f_and_prime(alpha)
    fb = evaluator.eval_f_batch(beta)
    eta_a = _eta(fa, s)
    eta_b = _eta(fb, s)
    derivative_a = s * np.abs(fa) ** (s - 2.0) * fa * fpa
    margin = eta_b + derivative_a * (alpha - beta) - eta_a
    scale = np.maximum(1.0, np.maximum(eta_a, eta_b))
    suite.add('tangent_inequality', margin / scale,
              np.stack((alpha, beta), axis=1))

    derivative = s * np.abs(f) ** (s - 2.0) * f * fp
    suite.add('derivative_increasing',
              np.diff(derivative) / np.maximum(1.0, np.abs(derivative[1:])),
              ts[1:])
    return suite


def check_sign_critical(report, spec, tol=SIGN_TOL):
    """Critical points have Phi <= 0 when s >= 4.

    :raises PreconditionError: if the report did not converge.
    """
    if not report.converged:
        raise PreconditionError(check='check_sign_critical',
                                reason='report did not converge (grad_norm '
                                       '%r)' % report.grad_norm)
    if spec.s < 4:
        LOG.info('s=%r < 4: the sign law does not apply', spec.s)
        return True
    return report.phi_value <= tol


def add_sign_law(suite, reports, spec, tol=SIGN_TOL):
    """Add a 'sign_law' check over every converged report.

    Reports without a ``distinct_id`` are named by their start index. Nothing
    is added when s < 4 or no report converged.
    """
    converged = [(i, r) for i, r in enumerate(reports) if r.converged]
    if spec.s < 4 or not converged:
        return suite
    suite.add('sign_law', [tol - r.phi_value for _, r in converged],
              [r.distinct_id or 'start%d' % i for i, r in converged],
              threshold=0.0)
    return suite


def bump_test_functions(grid, count):
    """``count`` disjoint smooth bumps spread over (0, R)."""
    values, _, _ = bump_fields(grid, count, grid.R)
    return [Field(grid, row) for row in values]


def weak_test_direction(energy, v, phi):
    """xi = phi / f'(v) = sqrt(1 + 2 f(v)^2) phi.

    Pairing Phi'(v) with xi gives the weak form of the original equation
    at u = f(v) tested against phi.
    """
    f = energy.evaluator.eval_f_batch(as_values(v, energy.grid))
    return np.sqrt(1.0 + 2.0 * f * f) * as_values(phi, energy.grid)


def check_weak_residual(energy, v, test_functions, grad_tol):
    """Weak form of the original equation for u = f(v), tested against phi.

    Each pairing <Phi'(v), xi_phi> is normalized by |phi|_D + |phi|_inf.
    Two bounds are reported. ``nominal_bound`` is 10 grad_tol max(1/f'(v)).
    ``bound`` multiplies it by max(1, |phi|_1 / (|phi|_D + |phi|_inf)), the
    factor that turns the max-norm gradient tolerance into a bound on the
    pairing; it is the one checked, and can be an order of magnitude looser.

    :rtype: ResidualReport
    """
    test_functions = list(test_functions)
    if not test_functions:
        raise PreconditionError(check='check_weak_residual',
                                reason='no test functions')
    grid = energy.grid
    raw = energy.raw_gradient(v)
    amplification = float(np.max(weak_test_direction(energy, v,
                                                     np.ones(grid.M))))
    per_test = []
    worst_ratio = 1.0
    for phi in test_functions:
        xi = weak_test_direction(energy, v, phi)
        scale = float(energy.d_norm(phi)) + phi.max_abs
        per_test.append(abs(float(raw.dot(xi))) / scale)
        l1 = float(grid.integrate(np.abs(phi.values)))
        worst_ratio = max(worst_ratio, l1 / scale)
    nominal = WEAK_BOUND_FACTOR * grad_tol * amplification
    return ResidualReport(max(per_test), None, len(test_functions),
                          bound=nominal * worst_ratio,
                          amplification=amplification, per_test=per_test,
                          nominal_bound=nominal)


def _interior(grid, exclude_fraction):
    keep = int(np.floor((1.0 - exclude_fraction) * grid.M))
    return slice(0, max(keep, 1))


def strong_defect(energy, u):
    """Nodewise defect of the original equation at u.

    Uses -Lap u - u Lap(u^2) = -(1 + 2u^2) Lap u - 2u |u'|^2.
    """
    grid = energy.grid
    values = u.values
    spec = energy.spec
    du = grid.deriv(values)
    lap = grid.laplacian_radial(values)
    return (-(1.0 + 2.0 * values * values) * lap -
            2.0 * values * du * du -
            energy.k_values * np.sign(values) * np.abs(values) ** (spec.q - 1)
            + energy.h_values * np.sign(values) *
            np.abs(values) ** (spec.s - 1))


def check_strong_residual(report, energy, exclude_fraction=BOUNDARY_LAYER):
    """Weighted L2 norm of the original-equation defect at u_star.

    The outer ``exclude_fraction`` of the nodes is left out.
    """
    if not report.converged:
        raise PreconditionError(check='check_strong_residual',
                                reason='report did not converge')
    grid = energy.grid
    inner = _interior(grid, exclude_fraction)
    defect = strong_defect(energy, report.u_star)[inner]
    residual = float(np.sqrt(np.sum(grid.quad_weights[inner] * defect *
                                    defect)))
    report.residuals['strong'] = residual
    return residual


def check_transformed_residual(report, energy,
                               exclude_fraction=BOUNDARY_LAYER):
    """Same norm for -Lap v = [k|f|^(q-2) f - h|f|^(s-2) f] f'(v)."""
    if not report.converged:
        raise PreconditionError(check='check_transformed_residual',
                                reason='report did not converge')
    grid = energy.grid
    spec = energy.spec
    v = report.v_star.values
    f, fp = energy.evaluator.f_and_prime(v)
    rhs = (energy.k_values * np.sign(f) * np.abs(f) ** (spec.q - 1) -
           energy.h_values * np.sign(f) * np.abs(f) ** (spec.s - 1)) * fp
    defect = (-grid.laplacian_radial(v) - rhs)
    inner = _interior(grid, exclude_fraction)
    residual = float(np.sqrt(np.sum(grid.quad_weights[inner] *
                                    defect[inner] ** 2)))
    report.residuals['transformed'] = residual
    return residual


def check_residuals(report, energy, test_count=10):
    """Weak, strong and transformed residuals of a converged report."""
    tests = bump_test_functions(energy.grid, test_count)
    residual = check_weak_residual(energy, report.v_star, tests,
                                   report.grad_tol)
    residual.strong_residual = check_strong_residual(report, energy)
    residual.transformed_residual = check_transformed_residual(report,
                                                               energy)
    report.residuals['weak'] = residual.weak_residual
    report.residuals['weak_bound'] = residual.bound
    return residual


def check_energy_identity(energy, samples=100, rng=None,
                          tol=ENERGY_IDENTITY_TOL, witness_dir=None):
    """Phi(v) = J(f(v)) on random fields and on v = 0.

    On failure the worst field is written to ``energy_identity_witness.csv``
    in ``witness_dir``.

    :rtype: SuiteReport
    """
    if samples < 10:
        raise PreconditionError(check='check_energy_identity',
                                reason='samples must be >= 10')
    if rng is None:
        rng = np.random.default_rng(0)
    grid = energy.grid
    fields = np.concatenate((grid.zeros()[None, :],
                             random_fields(grid, samples, rng,
                                           amplitude=2.0)))
    phi = energy.phi_values(fields)
    j = np.array([energy.j_energy(recover_u(Field(grid, row),
                                            energy.evaluator))
                  for row in fields])
    suite = SuiteReport('energy_identity')
    check = suite.add_tolerance('phi=J(f(v))', phi - j,
                                tol * (1.0 + np.abs(phi)),
                                np.arange(fields.shape[0]))
    if not check.passed and witness_dir is not None:
        path = os.path.join(witness_dir, WITNESS_FILE)
        write_field_csv(path, Field(grid, fields[check.witness]), name='v')
        check.witness = {'index': check.witness, 'path': path}
    return suite


def weak_residual_sweep(energy, tols, opts, rng, samples=1000,
                        support_level=1e-3, test_count=10, certificate=None):
    """Ground state and weak residual for each gradient tolerance.

    :returns: list of (grad_tol, weak_residual, grad_norm) tuples.
    """
    tests = bump_test_functions(energy.grid, test_count)
    results = []
    for tol in tols:
        report = ground_state(energy, opts.replace(grad_tol=tol), rng,
                              samples=samples, support_level=support_level,
                              certificate=certificate)
        residual = check_weak_residual(energy, report.v_star, tests, tol)
        LOG.info('grad_tol=%r: weak residual %r', tol,
                 residual.weak_residual)
        results.append((tol, residual.weak_residual, report.grad_norm))
    return results
