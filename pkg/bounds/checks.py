# -*- coding:utf-8 -*-
# copyright 2026 LOGILAB S.A. (Paris, FRANCE), all rights reserved.
# contact http://www.logilab.fr -- mailto:contact@logilab.fr
#
# This program is free software: you can redistribute it and/or modify it under
# the terms of the GNU Lesser General Public License as published by the Free
# Software Foundation, either version 2.1 of the License, or (at your option)
# any later version.
#
# This program is distributed in the hope that it will be useful, but WITHOUT
# ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS
# FOR A PARTICULAR PURPOSE. See the GNU Lesser General Public License for more
# details.
#
# You should have received a copy of the GNU Lesser General Public License along
# with this program. If not, see <http://www.gnu.org/licenses/>.
""" Empirical checks of the moment bounds.

Every check returns BoundReports. A Monte Carlo report holds when
lhs <= rhs + 3 standard errors of the lhs estimator; ``holds`` is None
when the check is inconclusive.
"""
import logging
from collections import namedtuple

import numpy as np
from scipy.stats import linregress

from gsfde.utils.errors import DivergenceError, UsageError
from gsfde.utils.expectation import (THREE_SIGMA, chebyshev_check, sample_law,
                                     sample_paths, upper_estimate)
from gsfde.utils.integrals import (GridProcess, JumpField, lebesgue_integral,
                                   running_ito, running_jump, running_qv)
from gsfde.utils.timegrid import TimeGrid
from gsfde.sfde.model import SFDEModel
from gsfde.sfde.solver import (euler_solve, picard_distances, picard_iterate,
                               sup_distance)
from gsfde.bounds import constants as bc


logger = logging.getLogger('gsfde.harness')


###############################################################################
### REPORTS ###################################################################
###############################################################################
class BoundReport(namedtuple('BoundReport', 'check name lhs rhs margin holds '
                             'n_paths seed stderr details')):
    """ Outcome of one inequality check: lhs (empirical) against rhs
    (closed form).
    """
    __slots__ = ()

    @property
    def status(self):
        if self.holds is None:
            return 'inconclusive'
        return 'true' if self.holds else 'false'


def make_report(check, name, lhs, rhs, stderr=0., n_paths=0, seed=None,
                details=None, holds=True):
    """ Build a BoundReport; ``holds=True`` means "decide from the numbers",
    None marks an inconclusive report.
    """
    lhs, rhs, stderr = float(lhs), float(rhs), float(stderr)
    if holds is not None:
        holds = bool(lhs <= rhs + THREE_SIGMA * stderr) and bool(holds)
    report = BoundReport(check, name, lhs, rhs, rhs - lhs, holds, int(n_paths),
                         seed, stderr, details or {})
    logger.info('%s %s: lhs=%.6g rhs=%.6g holds=%s', check, name, lhs, rhs,
                report.status)
    return report


###############################################################################
### ASSUMPTIONS ###############################################################
###############################################################################
def check_assumptions(model, family, n_probes=200, seed=0):
    """ Growth and Lipschitz audits of the declared c1, c2 """
    coeffs = model.coefficients
    window = model.initial.window
    reports = []
    for audit in (coeffs.audit_growth(model.grid, window, family, n_probes, seed),
                  coeffs.audit_lipschitz(model.grid, window, family, n_probes,
                                         seed)):
        reports.append(make_report('assumption', audit.name, audit.worst,
                                   audit.constant, n_paths=audit.n_probes,
                                   seed=seed, holds=audit.holds))
    return reports


###############################################################################
### BOUNDEDNESS ###############################################################
###############################################################################
def check_boundedness(model, family, n_paths, constants, seed=0, max_workers=1):
    """ Moment bound of the solution on [0, T], three variants:

    - ``proof_display``: E sup_{0<=s<=T} |x|^2 against the Gronwall display
    - ``statement``: the sup over the window and [0, T] against the stated
      bound
    - ``extended``: the same sup against E||zeta||^2 plus the display
    """
    zeta_sq = model.initial.norm_sq()

    def functional(driver):
        inner = euler_solve(model, driver).sup_square()
        return [inner, max(inner, zeta_sq)]

    samples = sample_paths(functional, family, model.grid, n_paths, seed,
                           max_workers)
    inner = upper_estimate(samples[..., 0])
    outer = upper_estimate(samples[..., 1])
    return [
        make_report('boundedness', 'proof_display', inner.estimate,
                    bc.boundedness_rhs(constants), inner.stderr, n_paths, seed),
        make_report('boundedness', 'statement', outer.estimate,
                    bc.boundedness_statement_rhs(constants), outer.stderr,
                    n_paths, seed),
        make_report('boundedness', 'extended', outer.estimate,
                    bc.boundedness_extended_rhs(constants), outer.stderr,
                    n_paths, seed),
        ]


###############################################################################
### PICARD ITERATION ##########################################################
###############################################################################
def sample_picard_distances(model, family, n_paths, n_iter, seed=0,
                            max_workers=1):
    """ Array (n_scenarios, n_paths, n_iter) of sup_t |x^{n+1} - x^n| """
    def functional(driver):
        return picard_distances(picard_iterate(model, driver, n_iter))
    return sample_paths(functional, family, model.grid, n_paths, seed,
                        max_workers)

def picard_table(samples, constants):
    """ Rows (n, E sup|x^{n+1} - x^n|, E sup|x^{n+1} - x^n|^2, envelope) """
    rows = []
    for n in range(samples.shape[-1]):
        rows.append((n, upper_estimate(samples[..., n]).estimate,
                     upper_estimate(samples[..., n] ** 2).estimate,
                     bc.picard_envelope(constants, n)))
    return rows

def check_picard_decay(model, family, n_paths, n_iter, constants, seed=0,
                       max_workers=1, samples=None):
    """ Factorial decay of the Picard increments.

    Reports, for n = 0 .. n_iter - 1:

    - ``picard_decay``: e_n = E sup |x^{n+1} - x^n|^2 <= C_safe (MT)^n / n!
    - ``picard_capacity``: nu(sup |x^{n+1} - x^n|^2 > 2^-n) <= 2^n times
      the same envelope
    - ``picard_ratio`` (n < n_iter - 1): e_{n+1} / e_n <= MT / (n + 1)
    """
    if n_iter < 3:
        raise UsageError('n_iter must be at least 3 (got %s)' % n_iter)
    if samples is None:
        samples = sample_picard_distances(model, family, n_paths, n_iter, seed,
                                          max_workers)
    squares = samples ** 2
    reports, moments = [], []
    for n in range(n_iter):
        est = upper_estimate(squares[..., n])
        moments.append(est.estimate)
        reports.append(make_report('picard_decay', 'e_%d' % n, est.estimate,
                                   bc.picard_envelope(constants, n), est.stderr,
                                   n_paths, seed))
    for n in range(n_iter):
        event = upper_estimate((squares[..., n] > 2. ** -n).astype(float))
        reports.append(make_report('picard_capacity', 'n_%d' % n, event.estimate,
                                   bc.picard_capacity_rhs(constants, n),
                                   event.stderr, n_paths, seed))
    mt = constants.M * constants.horizon
    for n in range(n_iter - 1):
        ratio = moments[n + 1] / moments[n] if moments[n] else 0.
        reports.append(make_report('picard_ratio', 'ratio_%d' % n, ratio,
                                   mt / (n + 1), 0., n_paths, seed))
    return reports

def check_error_estimate(model, family, n_paths, n_iter, constants, seed=0,
                         max_workers=1):
    """ E sup |x^n - x|^2 <= C_safe (MT)^n / n! exp(MT) for n = 0 .. n_iter,
    the reference x being the Euler solution (the fixed point of the
    discrete Picard map).
    """
    def functional(driver):
        reference = euler_solve(model, driver)
        return [sup_distance(x, reference) ** 2
                for x in picard_iterate(model, driver, n_iter)]

    samples = sample_paths(functional, family, model.grid, n_paths, seed,
                           max_workers)
    reports = []
    for n in range(n_iter + 1):
        est = upper_estimate(samples[..., n])
        reports.append(make_report('error_estimate', 'n_%d' % n, est.estimate,
                                   bc.error_envelope(constants, n), est.stderr,
                                   n_paths, seed))
    return reports


###############################################################################
### BDG TYPE INEQUALITIES #####################################################
###############################################################################
class Integrand(object):
    """ Adapted integrand lambda(t) = func(t, B(t-)) of the dB and d<B> kinds,
    ``func`` being vectorized.
    """

    def __init__(self, name, func):
        self.name = name
        self.func = func

    def __repr__(self):
        return 'Integrand(%r)' % self.name

    def grid_values(self, driver):
        nodes = driver.grid.nodes
        return GridProcess(driver.grid, np.broadcast_to(
            self.func(nodes, driver.B), nodes.shape))


class JumpIntegrand(object):
    """ Jump integrand K(t, z) = func(t, B(t-), z), ``func`` being vectorized.
    """

    def __init__(self, name, func):
        self.name = name
        self.func = func

    def __repr__(self):
        return 'JumpIntegrand(%r)' % self.name

    def field(self, driver):
        # B(t-) on the grid is the value at the left node of the event step
        left = driver.B[np.maximum(driver.jump_nodes - 1, 0)]
        return JumpField(driver.jump_times, np.broadcast_to(
            self.func(driver.jump_times, left, driver.jump_sizes),
            driver.jump_times.shape))

    def nu_square(self, driver, levy):
        """ int |K(t_i, z)|^2 nu(dz) at every node """
        nodes = driver.grid.nodes
        return GridProcess(driver.grid, np.broadcast_to(
            levy.nu_integral(lambda z: self.func(nodes, driver.B, z) ** 2),
            nodes.shape))


CONTINUOUS_INTEGRANDS = (
    Integrand('constant', lambda t, b: np.ones_like(t)),
    Integrand('half', lambda t, b: 0.5 * np.ones_like(t)),
    Integrand('time', lambda t, b: t),
    Integrand('brownian', lambda t, b: b),
    Integrand('sine', lambda t, b: np.sin(2 * np.pi * t)),
    Integrand('bounded_brownian', lambda t, b: np.cos(b)),
    )

JUMP_INTEGRANDS = (
    JumpIntegrand('size', lambda t, b, z: z * np.ones_like(t)),
    JumpIntegrand('half_size', lambda t, b, z: 0.5 * z * np.ones_like(t)),
    JumpIntegrand('sine_size', lambda t, b, z: np.sin(2 * np.pi * t) * z),
    JumpIntegrand('bounded_brownian_size', lambda t, b, z: np.cos(b) * z),
    )

BDG_KINDS = ('dB', 'dQV', 'jump')


def _bdg_functional(kind, integrand, family):
    if kind == 'jump':
        def functional(driver):
            levy = family[driver.scenario][1]
            running = running_jump(integrand.field(driver), driver)
            return [np.max(running.values ** 2),
                    lebesgue_integral(integrand.nu_square(driver, levy))]
    else:
        integrate = running_ito if kind == 'dB' else running_qv
        def functional(driver):
            lam = integrand.grid_values(driver)
            integrator = driver.B if kind == 'dB' else driver.qv
            running = integrate(lam, integrator)
            return [np.max(running.values ** 2),
                    lebesgue_integral(GridProcess(lam.grid, lam.values ** 2))]
    return functional

def check_bdg(kind, integrands, family, grid, constants, n_paths, seed=0,
              max_workers=1):
    """ p = 2 moment inequalities for the three integral kinds:

        E sup_t |int lambda dB|^2         <= k2 E int lambda^2 ds
        E sup_t |int eta d<B>|^2          <= k1 T E int eta^2 ds
        E sup_t |int int K L(ds, dz)|^2   <= k3 E int int K^2 nu(dz) ds

    One report per integrand; ``details['k_calibrated']`` is the smallest
    constant making the empirical inequality tight.
    """
    if kind not in BDG_KINDS:
        raise UsageError('unknown integral kind %r (expected one of %s)'
                         % (kind, ', '.join(BDG_KINDS)))
    if not integrands:
        raise UsageError('at least one integrand is needed')
    factor, scale = {'dB': (constants.k2, 1.),
                     'dQV': (constants.k1 * grid.horizon, grid.horizon),
                     'jump': (constants.k3, 1.)}[kind]
    reports = []
    for integrand in integrands:
        samples = sample_paths(_bdg_functional(kind, integrand, family), family,
                               grid, n_paths, seed, max_workers)
        lhs = upper_estimate(samples[..., 0])
        den = upper_estimate(samples[..., 1])
        calibrated = lhs.estimate / (scale * den.estimate) if den.estimate else 0.
        reports.append(make_report('bdg_%s' % kind, integrand.name, lhs.estimate,
                                   factor * den.estimate, lhs.stderr, n_paths,
                                   seed, {'k_calibrated': calibrated,
                                          'integral_square': den.estimate}))
    return reports


###############################################################################
### CHEBYSHEV #################################################################
###############################################################################
def check_chebyshev(family, grid, n_paths, seed=0, levels=(0.5, 1., 2.), p=2,
                    max_workers=1):
    """ Capacity Chebyshev inequality on x = B(T), with both denominators """
    law = sample_law(lambda driver: driver.B[-1], family, grid, n_paths, seed,
                     max_workers)
    reports = []
    for c in levels:
        result = chebyshev_check(law, c, p)
        name = 'c=%g' % c
        reports.append(make_report('chebyshev', name, result.lhs, result.rhs,
                                   result.stderr, n_paths, seed))
        reports.append(make_report('chebyshev_standard', name, result.lhs,
                                   result.rhs_standard, result.stderr, n_paths,
                                   seed))
    return reports


###############################################################################
### UNIQUENESS ################################################################
###############################################################################
def check_uniqueness(model, driver, n_iter=40, tol=1e-8, perturbation=1.):
    """ Run Picard from x^0 = zeta(0) and from x^0 = zeta(0) + perturbation
    along the same driver and compare the limits. Inconclusive when either
    run has not converged within ``tol``.
    """
    first = picard_iterate(model, driver, n_iter)
    second = picard_iterate(model, driver, n_iter,
                            start=model.initial.zeta0 + perturbation)
    increments = (sup_distance(first[-1], first[-2]),
                  sup_distance(second[-1], second[-2]))
    converged = max(increments) < tol
    distance = sup_distance(first[-1], second[-1])
    if not converged:
        logger.warning('Picard not converged along driver seed %s (last '
                       'increments %.3g, %.3g)', driver.seed, *increments)
    return make_report('uniqueness', 'scenario_%s' % driver.scenario, distance,
                       tol, 0., 1, driver.seed,
                       {'converged': converged, 'last_increments': increments},
                       holds=True if converged else None)


###############################################################################
### EXPONENTIAL ESTIMATE ######################################################
###############################################################################
def _window_sups(model, driver, steps_per_unit, m_max):
    """ sup of |x|^2 over each unit window; -1 for windows reached after a
    divergence (or whose sup overflows)
    """
    sups = np.full(m_max, -1.)
    try:
        solution = euler_solve(model, driver)
        last = m_max
    except DivergenceError as err:
        logger.warning('divergence along driver seed %s: %s', driver.seed, err)
        if err.partial is None:
            return sups
        solution = err.partial
        # windows whose nodes all precede the diverging one
        last = min(m_max, (err.node - 1) // steps_per_unit)
    with np.errstate(over='ignore'):
        for m in range(last):
            sups[m] = solution.sup_square(m * steps_per_unit,
                                          (m + 1) * steps_per_unit)
    sups[~np.isfinite(sups)] = -1.
    return sups

def fit_growth_rate(moments):
    """ Half the least squares slope of log moments[m - 1] against m over the
    last half of the schedule; 0 when the moments vanish.
    """
    moments = np.asarray(moments, dtype=float)
    ms = np.arange(1, len(moments) + 1)
    tail = slice(len(moments) // 2, None)
    ms, moments = ms[tail], moments[tail]
    positive = moments > 0
    if positive.sum() < 2:
        return 0.
    return float(linregress(ms[positive], np.log(moments[positive])).slope / 2.)

def check_exponential(model, family, m_max, constants, n_paths, seed=0,
                      steps_per_unit=100, epsilon=1., slack=0., max_workers=1):
    """ Growth rate of the solution on [0, m_max] against 5/2 c1 k, k being
    evaluated at the unit window length, with the window capacities

        nu(sup_{m-1<=t<=m} |x|^2 > exp((5 c1 k + eps) m))
            <= 5 [(1 + c1 k) E||zeta||^2 + c1 k] exp(-eps m)

    Windows reached after an overflow are dropped from the schedule.
    """
    if m_max < 2:
        raise UsageError('m_max must be at least 2 (got %s)' % m_max)
    unit = bc.with_horizon(constants, 1.)
    grid = TimeGrid(float(m_max), m_max * steps_per_unit)
    long_model = SFDEModel(model.coefficients,
                           model.initial.resample(grid.dt), grid)
    samples = sample_paths(
        lambda driver: _window_sups(long_model, driver, steps_per_unit, m_max),
        family, grid, n_paths, seed, max_workers)
    valid = 0
    while valid < m_max and (samples[..., valid] >= 0).all():
        valid += 1
    if valid < m_max:
        logger.warning('exponential schedule truncated to %d windows', valid)
    moments = [upper_estimate(samples[..., m]).estimate for m in range(valid)]
    rhs = bc.exponential_rate(unit) + slack
    details = {'windows': valid, 'moments': moments}
    if valid < 2:
        reports = [make_report('exponential', 'growth_rate', 0., rhs, 0.,
                               n_paths, seed, details, holds=None)]
    else:
        reports = [make_report('exponential', 'growth_rate',
                               fit_growth_rate(moments), rhs, 0., n_paths, seed,
                               details)]
    for m in range(1, valid + 1):
        threshold = bc.window_threshold(unit, m, epsilon)
        event = upper_estimate((samples[..., m - 1] > threshold).astype(float))
        reports.append(make_report('exponential_capacity', 'm_%d' % m,
                                   event.estimate,
                                   bc.window_capacity_rhs(unit, m, epsilon),
                                   event.stderr, n_paths, seed))
    return reports
