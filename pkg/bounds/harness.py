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
import time
import logging

from gsfde.bounds import checks
from gsfde.bounds.constants import compute_constants, default_bdg_constants


###############################################################################
### UTILITY FUNCTIONS #########################################################
###############################################################################
def failed_reports(reports):
    """ Reports whose inequality does not hold (inconclusive ones excluded)
    """
    return [r for r in reports if r.holds is False]

def all_hold(reports):
    return not failed_reports(reports)


###############################################################################
### BOUNDS HARNESS ############################################################
###############################################################################
class BoundsHarness(object):
    """ Run the bound checks of one model on one scenario family, and keep
    statistics about the run.

    Parameters
    ----------

    model: the SFDEModel

    family: the ScenarioFamily

    n_paths: paths per scenario of every Monte Carlo estimate

    n_iter: number of Picard iterations

    seed: base seed

    bdg: (k1, k2, k3); defaults from the upper volatility of ``family``

    max_workers: thread pool size of the path evaluations
    """

    def __init__(self, model, family, n_paths=256, n_iter=8, seed=0, bdg=None,
                 max_workers=1, exponential=None, uniqueness=None):
        self.model = model
        self.family = family
        self.n_paths = n_paths
        self.n_iter = n_iter
        self.seed = seed
        self.max_workers = max_workers
        self.bdg = bdg or default_bdg_constants(family.sigma_bar)
        self.exponential = dict(m_max=20, steps_per_unit=100, epsilon=1.,
                                slack=0.)
        self.exponential.update(exponential or {})
        self.uniqueness = dict(n_iter=40, tol=1e-8, perturbation=1.)
        self.uniqueness.update(uniqueness or {})
        self.constants = compute_constants(
            model.coefficients.c1, model.coefficients.c2, *self.bdg,
            horizon=model.grid.horizon, zeta_norm_sq=model.initial.norm_sq())
        self.reports = []
        self.checks_run = 0
        self.checks_holding = 0
        self.checks_failed = 0
        self.checks_inconclusive = 0
        self.time = None
        self.logger = logging.getLogger('gsfde.harness')

    def _record(self, reports):
        for report in reports:
            self.checks_run += 1
            if report.holds is None:
                self.checks_inconclusive += 1
            elif report.holds:
                self.checks_holding += 1
            else:
                self.checks_failed += 1
                self.logger.warning('%s %s does not hold: lhs=%.6g > rhs=%.6g',
                                    report.check, report.name, report.lhs,
                                    report.rhs)
        self.reports.extend(reports)
        return reports

    def _timed(self, runner):
        start_time = time.time()
        try:
            return runner()
        finally:
            self.time = time.time() - start_time
            self.log_infos()

    ### individual checks #####################################################
    def run_assumptions(self):
        return self._record(checks.check_assumptions(self.model, self.family,
                                                     seed=self.seed))

    def run_boundedness(self):
        return self._record(checks.check_boundedness(
            self.model, self.family, self.n_paths, self.constants, self.seed,
            self.max_workers))

    def run_picard_decay(self, samples=None):
        return self._record(checks.check_picard_decay(
            self.model, self.family, self.n_paths, self.n_iter, self.constants,
            self.seed, self.max_workers, samples))

    def run_error_estimate(self):
        return self._record(checks.check_error_estimate(
            self.model, self.family, self.n_paths, self.n_iter, self.constants,
            self.seed, self.max_workers))

    def run_bdg_kind(self, kind):
        integrands = checks.JUMP_INTEGRANDS if kind == 'jump' \
            else checks.CONTINUOUS_INTEGRANDS
        return self._record(checks.check_bdg(
            kind, integrands, self.family, self.model.grid, self.constants,
            self.n_paths, self.seed, self.max_workers))

    def run_chebyshev(self):
        return self._record(checks.check_chebyshev(
            self.family, self.model.grid, self.n_paths, self.seed,
            max_workers=self.max_workers))

    def run_uniqueness(self):
        """ One uniqueness check along the first path of every scenario """
        reports = []
        for index in range(len(self.family)):
            driver = self.family.generate(self.model.grid, index, 0, self.seed)
            reports.append(checks.check_uniqueness(self.model, driver,
                                                   **self.uniqueness))
        return self._record(reports)

    def run_exponential_estimate(self):
        return self._record(checks.check_exponential(
            self.model, self.family, constants=self.constants,
            n_paths=self.n_paths, seed=self.seed, max_workers=self.max_workers,
            **self.exponential))

    ### subcommands ###########################################################
    def verify(self):
        """ Run every check and return the reports """
        def runner():
            self.run_assumptions()
            self.run_boundedness()
            self.run_picard_decay()
            self.run_error_estimate()
            for kind in checks.BDG_KINDS:
                self.run_bdg_kind(kind)
            self.run_chebyshev()
            self.run_uniqueness()
            self.run_exponential_estimate()
            return self.reports
        return self._timed(runner)

    def bdg_calibration(self):
        """ Run the three BDG kinds on the integrand corpus """
        def runner():
            for kind in checks.BDG_KINDS:
                self.run_bdg_kind(kind)
            return self.reports
        return self._timed(runner)

    def exponential_estimate(self):
        return self._timed(self.run_exponential_estimate)

    def picard(self):
        """ Return (reports, distance table) of the Picard decay check """
        def runner():
            samples = checks.sample_picard_distances(
                self.model, self.family, self.n_paths, self.n_iter, self.seed,
                self.max_workers)
            reports = self.run_picard_decay(samples)
            return reports, checks.picard_table(samples, self.constants)
        return self._timed(runner)

    def log_infos(self):
        """ Display some info on the harness run
        """
        self.logger.info('Computation time : %s' % self.time)
        self.logger.info('Model : %r' % (self.model.coefficients,))
        self.logger.info('Number of scenarios : %s' % len(self.family))
        self.logger.info('Paths per scenario : %s' % self.n_paths)
        self.logger.info('Checks run : %s' % self.checks_run)
        self.logger.info('Checks holding : %s' % self.checks_holding)
        self.logger.info('Checks failed : %s' % self.checks_failed)
        self.logger.info('Checks inconclusive : %s' % self.checks_inconclusive)
        if self.checks_run:
            self.logger.info('Ratio holding/run : %s'
                             % (self.checks_holding / float(self.checks_run)))
