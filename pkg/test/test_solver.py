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
from math import e, factorial, sqrt

import numpy as np
from scipy.special import comb

from gsfde.utils.errors import ConfigurationError, DivergenceError, UsageError
from gsfde.utils.timegrid import (AtomJumpLaw, DrivingPath, ScenarioFamily,
                                  TimeGrid, quadratic_variation)
from gsfde.sfde.coefficients import (Coefficients, DelayedLinearCoefficients,
                                     GBMCoefficients, JumpLinearCoefficients,
                                     LinearDriftCoefficients)
from gsfde.sfde.model import InitialData, SFDEModel, SolutionPath
from gsfde.sfde.solver import (euler_solve, picard_distances, picard_iterate,
                               segment_extract, sup_distance)


def quiet_driver(grid, jump_times=(), jump_sizes=()):
    return DrivingPath(grid, np.zeros(len(grid)), np.zeros(len(grid)),
                       jump_times, jump_sizes)

def make_model(coeffs, grid, value=1., tau=None, slope=0.):
    tau = grid.dt if tau is None else tau
    return SFDEModel(coeffs, InitialData.linear(value, slope, tau, grid.dt), grid)


class ModelTest(unittest.TestCase):

    def test_step_mismatch(self):
        grid = TimeGrid(1., 100)
        initial = InitialData.constant(1., 0.1, 0.02)
        self.assertRaises(UsageError, SFDEModel, Coefficients(), initial, grid)

    def test_lag_beyond_window(self):
        grid = TimeGrid(1., 10)
        initial = InitialData.linear(0., 1., 0.1, grid.dt)
        with self.assertRaises(ConfigurationError) as cm:
            SFDEModel(DelayedLinearCoefficients(0., 1., 0.5), initial, grid)
        self.assertEqual(cm.exception.key, 'delay.tau')
        # up to half a step of rounding
        SFDEModel(DelayedLinearCoefficients(0., 1., 0.14), initial, grid)

    def test_initial(self):
        initial = InitialData.linear(1., -2., 0.1, 0.01)
        self.assertEqual(initial.window, 10)
        self.assertEqual(initial.zeta0, 1.)
        self.assertAlmostEqual(initial.norm_sq(), 1.44)

    def test_resample(self):
        initial = InitialData.linear(1., 2., 0.1, 0.01).resample(0.05)
        self.assertEqual(initial.window, 2)
        np.testing.assert_allclose(initial.segment.values, [0.8, 0.9, 1.])

    def test_segment_at(self):
        initial = InitialData.linear(0., 1., 0.1, 0.01)
        self.assertEqual(initial.segment.at(0.), 0.)
        self.assertAlmostEqual(initial.segment.at(0.05), -0.05)
        # lags beyond tau read zeta(-tau)
        self.assertAlmostEqual(initial.segment.at(1.), -0.1)


class SegmentExtractTest(unittest.TestCase):

    def setUp(self):
        self.grid = TimeGrid(1., 100)
        self.initial = InitialData.linear(3., 1., 0.1, 0.01)

    def test_first_node(self):
        solution = SolutionPath(self.grid, np.full(101, 3.))
        seg = segment_extract(solution, self.initial, 0)
        self.assertEqual(seg.values.tolist(),
                         self.initial.segment.values.tolist())

    def test_constant(self):
        initial = InitialData.constant(3., 0.1, 0.01)
        seg = segment_extract(SolutionPath(self.grid, np.full(101, 3.)),
                              initial, 50)
        self.assertEqual(seg.norm(), 3.)
        self.assertTrue((seg.values == 3.).all())

    def test_mixed_window(self):
        values = 3. + np.arange(101.)
        seg = segment_extract(SolutionPath(self.grid, values), self.initial, 5)
        expected = list(self.initial.segment.values[5:10]) + list(values[:6])
        self.assertEqual(seg.values.tolist(), expected)

    def test_pre_jump(self):
        pre = np.full(101, 3.)
        values = pre.copy()
        values[40:] = 4.
        pre[41:] = 4.
        solution = SolutionPath(self.grid, values, pre)
        self.assertEqual(segment_extract(solution, self.initial, 40,
                                         pre_jump=True).at(0.), 3.)
        self.assertEqual(segment_extract(solution, self.initial, 40).at(0.), 4.)

    def test_out_of_range(self):
        solution = SolutionPath(self.grid, np.full(101, 3.))
        self.assertRaises(UsageError, segment_extract, solution, self.initial,
                          101)


class SupDistanceTest(unittest.TestCase):

    def test_distances(self):
        grid = TimeGrid(1., 50)
        rng = np.random.default_rng(0)
        a = SolutionPath(grid, rng.standard_normal(51))
        b = SolutionPath(grid, rng.standard_normal(51))
        self.assertEqual(sup_distance(a, a), 0.)
        self.assertAlmostEqual(sup_distance(a, SolutionPath(grid, a.values + 2.)),
                               2., places=12)
        self.assertEqual(sup_distance(a, b),
                         max(abs(x - y) for x, y in zip(a.values, b.values)))

    def test_grid_mismatch(self):
        a = SolutionPath(TimeGrid(1., 2), np.zeros(3))
        b = SolutionPath(TimeGrid(2., 2), np.zeros(3))
        self.assertRaises(UsageError, sup_distance, a, b)


class EulerTest(unittest.TestCase):

    def test_zero(self):
        grid = TimeGrid(1., 100)
        family = ScenarioFamily.from_sigmas([1.], 3., AtomJumpLaw([1.]))
        model = make_model(Coefficients(), grid, value=2.)
        solution = euler_solve(model, family.generate(grid, 0, 0, 1))
        self.assertTrue((solution.values == 2.).all())

    def test_exponential(self):
        grid = TimeGrid(1., 1000)
        model = make_model(LinearDriftCoefficients(1.), grid)
        solution = euler_solve(model, quiet_driver(grid))
        self.assertAlmostEqual(solution.values[-1], e, delta=0.01)
        self.assertAlmostEqual(solution.values[-1], 1.001 ** 1000, places=10)

    def test_gbm(self):
        grid = TimeGrid(1., 1000)
        family = ScenarioFamily.singleton(1.)
        mu, sigma = 0.1, 0.5
        model = make_model(GBMCoefficients(mu, sigma), grid)
        errors = []
        for path in range(100):
            driver = family.generate(grid, 0, path, 7)
            exact = np.exp((mu - sigma ** 2 / 2) * grid.horizon
                           + sigma * driver.B[-1])
            errors.append(abs(euler_solve(model, driver).values[-1] - exact))
        self.assertLess(np.mean(errors), 0.03)

    def test_strong_order(self):
        mu, sigma = 0.05, 0.2
        fine, coarse = TimeGrid(1., 2000), TimeGrid(1., 1000)
        family = ScenarioFamily.singleton(1.)
        fine_model = make_model(GBMCoefficients(mu, sigma), fine)
        coarse_model = make_model(GBMCoefficients(mu, sigma), coarse)
        fine_errors, coarse_errors, exact_values = [], [], []
        for path in range(256):
            driver = family.generate(fine, 0, path, 3)
            exact = np.exp(mu - sigma ** 2 / 2 + sigma * driver.B[-1])
            # same Brownian path, fine increments summed by pairs
            B = driver.B[::2]
            coarse_driver = DrivingPath(coarse, B, quadratic_variation(B))
            fine_errors.append(euler_solve(fine_model, driver).values[-1] - exact)
            coarse_errors.append(
                euler_solve(coarse_model, coarse_driver).values[-1] - exact)
            exact_values.append(exact)
        scale = sqrt(np.mean(np.square(exact_values)))
        fine_rms = sqrt(np.mean(np.square(fine_errors)))
        coarse_rms = sqrt(np.mean(np.square(coarse_errors)))
        self.assertLess(coarse_rms, 3 * sqrt(coarse.dt) * scale)
        self.assertGreater(fine_rms, 0.)
        self.assertGreater(coarse_rms / fine_rms, 1.3)

    def test_jump(self):
        grid = TimeGrid(1., 10)
        model = make_model(JumpLinearCoefficients(0.5), grid)
        solution = euler_solve(model, quiet_driver(grid, [0.45, 0.5], [1., 2.]))
        # both jumps of (0.4, 0.5] act on x(0.5-) = 1
        self.assertEqual(solution.pre_values[5], 1.)
        self.assertEqual(solution.values[5], 2.5)
        self.assertEqual(solution.values[-1], 2.5)
        self.assertEqual(solution.jumps[5], 1.5)

    def test_delay(self):
        grid = TimeGrid(1., 10)
        # dx = x(t - 0.2) dt with zeta(theta) = theta
        model = make_model(DelayedLinearCoefficients(0., 1., 0.2), grid,
                           value=0., tau=0.2, slope=1.)
        solution = euler_solve(model, quiet_driver(grid))
        self.assertAlmostEqual(solution.values[1], -0.02)
        self.assertAlmostEqual(solution.values[2], -0.02 - 0.01)
        self.assertAlmostEqual(solution.values[3], -0.03 + 0.)

    def test_divergence(self):
        grid = TimeGrid(1., 100)
        model = make_model(LinearDriftCoefficients(1e150), grid)
        with self.assertRaises(DivergenceError) as cm:
            euler_solve(model, quiet_driver(grid))
        self.assertEqual(cm.exception.node, 3)
        partial = cm.exception.partial
        self.assertTrue(np.isfinite(partial.values[:3]).all())
        self.assertTrue(np.isnan(partial.values[3:]).all())
        self.assertTrue(np.isnan(partial.pre_values[3:]).all())

    def test_grid_mismatch(self):
        grid = TimeGrid(1., 10)
        model = make_model(Coefficients(), grid)
        self.assertRaises(UsageError, euler_solve, model,
                          quiet_driver(TimeGrid(1., 20)))


class PicardTest(unittest.TestCase):

    def test_zero(self):
        grid = TimeGrid(1., 50)
        model = make_model(Coefficients(), grid, value=1.5)
        iterates = picard_iterate(model, quiet_driver(grid), 3)
        self.assertEqual(len(iterates), 4)
        for x in iterates:
            self.assertTrue((x.values == 1.5).all())
        self.assertEqual(picard_distances(iterates).tolist(), [0., 0., 0.])

    def test_taylor_partial_sums(self):
        grid = TimeGrid(1., 1000)
        model = make_model(LinearDriftCoefficients(1.), grid)
        iterates = picard_iterate(model, quiet_driver(grid), 8)
        for n, x in enumerate(iterates):
            # left point sums of x' = x iterate into binomial sums
            expected = sum(comb(np.arange(1001), j) * grid.dt ** j
                           for j in range(n + 1))
            np.testing.assert_allclose(x.values, expected, rtol=1e-10)
            taylor = sum(grid.nodes ** j / factorial(j) for j in range(n + 1))
            np.testing.assert_allclose(x.values, taylor, rtol=1e-2)

    def test_factorial_distances(self):
        # at dt = 1e-3 the binomial distances sit up to 3.5% below 1/(n+1)!
        grid = TimeGrid(1., 10000)
        model = make_model(LinearDriftCoefficients(1.), grid)
        distances = picard_distances(picard_iterate(model, quiet_driver(grid), 8))
        for n, distance in enumerate(distances):
            self.assertAlmostEqual(distance,
                                   comb(10000, n + 1) * grid.dt ** (n + 1),
                                   delta=1e-10)
            self.assertAlmostEqual(distance / (1. / factorial(n + 1)), 1.,
                                   delta=0.01)

    def test_fixed_point_is_euler(self):
        grid = TimeGrid(1., 100)
        family = ScenarioFamily.from_sigmas([1.], 2., AtomJumpLaw([-1., 0.5]))
        for coeffs in (LinearDriftCoefficients(1.), GBMCoefficients(0.1, 0.5),
                       DelayedLinearCoefficients(0.5, 0.2, 0.1),
                       JumpLinearCoefficients(0.3)):
            model = make_model(coeffs, grid, tau=0.1, slope=0.5)
            driver = family.generate(grid, 0, 3, 11)
            limit = picard_iterate(model, driver, 60)[-1]
            reference = euler_solve(model, driver)
            self.assertLess(sup_distance(limit, reference), 1e-10, coeffs)

    def test_gbm_decay(self):
        grid = TimeGrid(1., 1000)
        model = make_model(GBMCoefficients(0.1, 0.2), grid)
        driver = ScenarioFamily.singleton(1.).generate(grid, 0, 0, 5)
        distances = picard_distances(picard_iterate(model, driver, 8))
        self.assertTrue((np.diff(distances) < 0).all())

    def test_perturbed_start(self):
        grid = TimeGrid(1., 100)
        model = make_model(LinearDriftCoefficients(1.), grid)
        a = picard_iterate(model, quiet_driver(grid), 40)[-1]
        b = picard_iterate(model, quiet_driver(grid), 40, start=2.)[-1]
        self.assertLess(sup_distance(a, b), 1e-13)

    def test_invalid_iterations(self):
        grid = TimeGrid(1., 10)
        self.assertRaises(UsageError, picard_iterate,
                          make_model(Coefficients(), grid), quiet_driver(grid), 0)


if __name__ == '__main__':
    unittest.main()
