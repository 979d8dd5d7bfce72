# -*- coding:utf-8 -*-
#
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

import unittest

import numpy as np

from gsfde.utils.errors import EvaluationError, UsageError
from gsfde.utils.expectation import (EmpiricalLaw, audit_axioms, capacity,
                                     chebyshev_check, empirical_mean,
                                     g_expectation, sample_law, sample_paths,
                                     upper_estimate)
from gsfde.utils.timegrid import ScenarioFamily, TimeGrid


GRID = TimeGrid(1., 100)
FAMILY = ScenarioFamily.from_sigmas([0.5, 1.])


def terminal_square(driver):
    return driver.B[-1] ** 2


class EstimateTest(unittest.TestCase):

    def test_constant_mean(self):
        self.assertEqual(empirical_mean([0.1] * 7), 0.1)

    def test_upper_estimate(self):
        est = upper_estimate([[1., 3.], [5., 7.], [0., 2.]])
        self.assertEqual(est.estimate, 6.)
        self.assertEqual(est.argmax, 1)
        self.assertEqual(est.means, [2., 6., 1.])
        self.assertAlmostEqual(est.stderr, 1.)

    def test_empirical_law(self):
        law = EmpiricalLaw([[1., -2.], [3., 4.]])
        self.assertEqual(law.n_scenarios, 2)
        self.assertEqual(law.n_paths, 2)
        self.assertRaises(UsageError, EmpiricalLaw, [1., 2.])


class GExpectationTest(unittest.TestCase):

    def test_constant(self):
        est = g_expectation(lambda driver: 0.3, FAMILY, GRID, 50, 0)
        self.assertEqual(est.estimate, 0.3)

    def test_singleton(self):
        family = ScenarioFamily.singleton(1.)
        law = sample_law(terminal_square, family, GRID, 64, 5)
        est = g_expectation(terminal_square, family, GRID, 64, 5)
        self.assertEqual(est.estimate, empirical_mean(law.samples[0]))

    def test_terminal_square(self):
        est = g_expectation(terminal_square, FAMILY, GRID, 1000, 1)
        self.assertEqual(est.argmax, 1)
        self.assertAlmostEqual(est.estimate, 1., delta=3 * est.stderr)

    def test_shape(self):
        samples = sample_paths(lambda driver: [driver.B[-1], driver.qv[-1]],
                               FAMILY, GRID, 8, 0)
        self.assertEqual(samples.shape, (2, 8, 2))

    def test_worker_independence(self):
        serial = sample_paths(terminal_square, FAMILY, GRID, 16, 3)
        threaded = sample_paths(terminal_square, FAMILY, GRID, 16, 3,
                                max_workers=4)
        self.assertEqual(serial.tolist(), threaded.tolist())

    def test_non_finite(self):
        with self.assertRaises(EvaluationError) as cm:
            sample_paths(lambda driver: np.nan, FAMILY, GRID, 4, 0)
        self.assertEqual(cm.exception.scenario, 0)
        self.assertEqual(cm.exception.path, 0)

    def test_too_few_paths(self):
        self.assertRaises(UsageError, sample_paths, terminal_square, FAMILY,
                          GRID, 1, 0)


class CapacityTest(unittest.TestCase):

    def test_trivial_events(self):
        self.assertEqual(capacity(lambda d: False, FAMILY, GRID, 10, 0).estimate,
                         0.)
        self.assertEqual(capacity(lambda d: True, FAMILY, GRID, 10, 0).estimate,
                         1.)

    def test_tail(self):
        est = capacity(lambda d: abs(d.B[-1]) > 1., FAMILY, GRID, 1000, 2)
        self.assertEqual(est.argmax, 1)
        self.assertAlmostEqual(est.estimate, 0.3173, delta=3 * est.stderr)


class ChebyshevTest(unittest.TestCase):

    def test_zero(self):
        report = chebyshev_check(np.zeros((1, 10)), 1.)
        self.assertEqual(report.lhs, 0.)
        self.assertTrue(report.holds)

    def test_brownian(self):
        law = sample_law(lambda d: d.B[-1], ScenarioFamily.singleton(1.), GRID,
                         1000, 8)
        report = chebyshev_check(law, 2.)
        self.assertAlmostEqual(report.lhs, 0.0455, delta=0.02)
        self.assertAlmostEqual(report.rhs, 0.5, delta=0.1)
        self.assertTrue(report.holds)
        self.assertTrue(report.holds_standard)
        report = chebyshev_check(law, 0.5)
        self.assertTrue(report.rhs >= 1.5)
        self.assertTrue(report.holds)

    def test_invalid(self):
        self.assertRaises(UsageError, chebyshev_check, np.zeros((1, 2)), 0.)
        self.assertRaises(UsageError, chebyshev_check, np.zeros((1, 2)), 1., 0.5)


class AxiomsTest(unittest.TestCase):

    def test_axioms(self):
        x = sample_paths(lambda d: d.B[-1], FAMILY, GRID, 200, 4)
        y = sample_paths(lambda d: np.sin(d.B[50]) + d.qv[-1], FAMILY, GRID,
                         200, 4)
        for kappa in (2., 0.5, 3.):
            audit = audit_axioms(x, y, kappa=kappa, constant=0.7)
            self.assertEqual(audit, {'monotonicity': True,
                                     'constant_preserving': True,
                                     'sub_additivity': True,
                                     'positive_homogeneity': True})

    def test_randomized_pairs(self):
        # common random numbers: every functional is built from the same paths
        features = sample_paths(
            lambda d: [d.B[-1], d.qv[-1], np.sin(d.B[50]), d.B[25] ** 2],
            FAMILY, GRID, 100, 6)
        rng = np.random.default_rng(20)
        for pair in range(20):
            wx, wy = rng.uniform(-2., 2., (2, 4))
            audit = audit_axioms(features @ wx, features @ wy,
                                 kappa=rng.uniform(0.1, 3.),
                                 constant=rng.uniform(-5., 5.))
            self.assertTrue(all(audit.values()), (pair, audit))

    def test_mismatch(self):
        self.assertRaises(UsageError, audit_axioms, np.zeros((1, 3)),
                          np.zeros((1, 4)))


if __name__ == '__main__':
    unittest.main()
