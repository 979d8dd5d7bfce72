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
""" Monte Carlo estimation of the sublinear expectation and of the capacity.

The sublinear expectation of a path functional is estimated as the
maximum, over the scenarios of a ScenarioFamily, of the empirical means.
Means use compensated summation (math.fsum) so that the result does not
depend on the order in which the paths were evaluated.
"""
import logging
from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor
from math import fsum, sqrt

import numpy as np

from gsfde.utils.errors import EvaluationError, UsageError


# Monte Carlo "<=" checks pass at lhs <= rhs + THREE_SIGMA * stderr
THREE_SIGMA = 3.

logger = logging.getLogger('gsfde.expectation')


###############################################################################
### ESTIMATES #################################################################
###############################################################################
class UpperEstimate(namedtuple('UpperEstimate', 'estimate means stderrs argmax')):
    """ Max over the scenarios of the per scenario empirical means
    """
    __slots__ = ()

    @property
    def stderr(self):
        """ Standard error of the scenario realizing the maximum """
        return self.stderrs[self.argmax]


ChebyshevReport = namedtuple('ChebyshevReport',
                             'lhs rhs rhs_standard stderr holds holds_standard')


class EmpiricalLaw(object):
    """ Samples of a real path functional, one row of ``n_paths`` samples
    per scenario of ``family``.
    """

    def __init__(self, samples, family=None, seed=None):
        samples = np.asarray(samples, dtype=float)
        if samples.ndim != 2 or not samples.shape[1]:
            raise UsageError('samples must be a (n_scenarios, n_paths) array')
        self.samples = samples
        self.family = family
        self.seed = seed

    def __repr__(self):
        return 'EmpiricalLaw(n_scenarios=%d, n_paths=%d, seed=%r)' % (
            self.n_scenarios, self.n_paths, self.seed)

    @property
    def n_scenarios(self):
        return self.samples.shape[0]

    @property
    def n_paths(self):
        return self.samples.shape[1]

    def upper(self):
        return upper_estimate(self.samples)


###############################################################################
### UTILITY FUNCTIONS #########################################################
###############################################################################
def _samples(law):
    if isinstance(law, EmpiricalLaw):
        return law.samples
    samples = np.asarray(law, dtype=float)
    if samples.ndim == 1:
        samples = samples[np.newaxis, :]
    return samples

def empirical_mean(samples):
    """ Compensated mean of a 1D sample """
    samples = np.asarray(samples, dtype=float)
    mean = fsum(samples) / len(samples)
    # the mean of a sample lies in [min, max], a constant sample maps to itself
    return min(max(mean, samples.min()), samples.max())

def standard_error(samples):
    samples = np.asarray(samples, dtype=float)
    if len(samples) < 2:
        return 0.
    return float(np.std(samples, ddof=1) / sqrt(len(samples)))

def upper_estimate(law):
    """ Build the UpperEstimate of an EmpiricalLaw (or of a 2D array)
    """
    samples = _samples(law)
    means = [empirical_mean(row) for row in samples]
    stderrs = [standard_error(row) for row in samples]
    argmax = int(np.argmax(means))
    return UpperEstimate(means[argmax], means, stderrs, argmax)

def ulp_slack(*values):
    """ Floating point tolerance at the scale of ``values`` """
    scale = max([1.] + [abs(v) for v in values])
    return 8 * np.finfo(float).eps * scale


###############################################################################
### SAMPLING ##################################################################
###############################################################################
def sample_paths(functional, family, grid, n_paths, seed, max_workers=1):
    """ Evaluate ``functional`` on ``n_paths`` driver paths of every scenario.

    Parameters
    ----------
    functional: callable taking a DrivingPath and returning a real (or an
                array of reals, all of the same shape).

    family: the ScenarioFamily

    grid: the TimeGrid of the driver paths

    n_paths: number of paths per scenario (at least 2)

    seed: base seed; path p of scenario j uses derive_seed(seed, j, p)

    max_workers: size of the thread pool (1: serial evaluation). The result
                 does not depend on it. Threads only overlap the numpy parts
                 of a functional, such as vectorized Picard sweeps; an Euler
                 loop holds the GIL.

    Returns
    -------

    An array of shape (n_scenarios, n_paths) + functional output shape.
    """
    if n_paths < 2:
        raise UsageError('at least 2 paths per scenario are needed (got %s)'
                         % n_paths)
    jobs = [(j, p) for j in range(len(family)) for p in range(n_paths)]

    def evaluate(job):
        scenario, path = job
        driver = family.generate(grid, scenario, path, seed)
        value = np.asarray(functional(driver), dtype=float)
        if not np.isfinite(value).all():
            raise EvaluationError('non finite functional value', scenario, path)
        return value

    if max_workers and max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as executor:
            values = list(executor.map(evaluate, jobs))
    else:
        values = [evaluate(job) for job in jobs]
    logger.debug('evaluated %d paths over %d scenarios', len(jobs), len(family))
    return np.array(values).reshape((len(family), n_paths) + values[0].shape)

def sample_law(functional, family, grid, n_paths, seed, max_workers=1):
    """ Same as sample_paths for a real functional, wrapped in an EmpiricalLaw
    """
    samples = sample_paths(functional, family, grid, n_paths, seed, max_workers)
    return EmpiricalLaw(samples, family, seed)

def g_expectation(functional, family, grid, n_paths, seed, max_workers=1):
    """ Estimate the sublinear expectation of ``functional``
    """
    return upper_estimate(sample_law(functional, family, grid, n_paths, seed,
                                     max_workers))

def capacity(predicate, family, grid, n_paths, seed, max_workers=1):
    """ Estimate the capacity of the event {path: predicate(path)}
    """
    def indicator(driver):
        return 1. if predicate(driver) else 0.
    return g_expectation(indicator, family, grid, n_paths, seed, max_workers)


###############################################################################
### CHECKS ####################################################################
###############################################################################
def chebyshev_check(law, c, p=2):
    """ Capacity Chebyshev inequality nu(|x| > c) <= E|x|^p / c.

    The denominator is ``c`` as the inequality is usually printed for this
    framework; the Markov form with ``c ** p`` is returned alongside
    (``rhs_standard`` and ``holds_standard``).
    """
    if not c > 0:
        raise UsageError('c must be positive (got %s)' % c)
    if p < 1:
        raise UsageError('p must be at least 1 (got %s)' % p)
    x = np.abs(_samples(law))
    event = upper_estimate((x > c).astype(float))
    moment = upper_estimate(x ** p)
    slack = THREE_SIGMA * event.stderr
    rhs = moment.estimate / c
    rhs_standard = moment.estimate / c ** p
    return ChebyshevReport(event.estimate, rhs, rhs_standard, event.stderr,
                           event.estimate <= rhs + slack,
                           event.estimate <= rhs_standard + slack)

def audit_axioms(x, y, kappa=2., constant=1.):
    """ Check the four sublinear expectation axioms on the estimator, for
    two laws sampled on the same paths.

    Returns a dict mapping each axiom name to a boolean. The comparisons are
    exact up to floating point rounding (no statistical slack).
    """
    x, y = _samples(x), _samples(y)
    if x.shape != y.shape:
        raise UsageError('the audited laws must share their paths')
    if not kappa > 0:
        raise UsageError('kappa must be positive (got %s)' % kappa)
    ex = upper_estimate(x).estimate
    ey = upper_estimate(y).estimate
    lower = upper_estimate(np.minimum(x, y)).estimate
    upper = upper_estimate(np.maximum(x, y)).estimate
    exy = upper_estimate(x + y).estimate
    ekx = upper_estimate(kappa * x).estimate
    econst = upper_estimate(np.full(x.shape, float(constant))).estimate
    return {
        'monotonicity': lower <= min(ex, ey) and max(ex, ey) <= upper,
        'constant_preserving': econst == constant,
        'sub_additivity': exy <= ex + ey + ulp_slack(ex, ey),
        'positive_homogeneity': abs(ekx - kappa * ex) <= ulp_slack(ekx),
        }
