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
import json
import shutil
from contextlib import contextmanager
from os import path
from tempfile import mkdtemp

from scipy.special import comb

from gsfde.cli import run
from gsfde.data import config_path
from gsfde.utils.dataio import PATH_COLUMNS, parsefile


@contextmanager
def tempdir():
    try:
        temp = mkdtemp()
        yield temp
    finally:
        try:
            shutil.rmtree(temp)
        except:
            pass

def write_config(directory, name, **overrides):
    """ Copy the shipped configuration ``name`` into ``directory`` """
    with open(config_path(name)) as fobj:
        data = json.load(fobj)
    data.update(overrides)
    filename = path.join(directory, '%s.json' % name)
    with open(filename, 'w') as fobj:
        json.dump(data, fobj)
    return filename

def read_bytes(filename):
    with open(filename, 'rb') as fobj:
        return fobj.read()


class ExitCodeTest(unittest.TestCase):

    def test_verify_zero(self):
        with tempdir() as temp:
            code = run(['verify', '--config', config_path('zero'), '--out', temp])
            self.assertEqual(code, 0)
            self.assertTrue(path.exists(path.join(temp, 'verify_0.json')))
            rows = parsefile(path.join(temp, 'verify_0.csv'))
            self.assertTrue(rows)
            self.assertEqual(set(row[5] for row in rows), set([True]))

    def test_missing_config_option(self):
        self.assertEqual(run(['verify']), 2)

    def test_unknown_subcommand(self):
        self.assertEqual(run(['solve', '--config', config_path('zero')]), 2)

    def test_invalid_seed(self):
        self.assertEqual(run(['verify', '--config', config_path('zero'),
                              '--seed=abc']), 2)
        self.assertEqual(run(['verify', '--config', config_path('zero'),
                              '--seed=%d' % 2 ** 64]), 2)

    def test_malformed_config(self):
        with tempdir() as temp:
            filename = path.join(temp, 'broken.json')
            with open(filename, 'w') as fobj:
                fobj.write('{"grid": {"horizon": 1.0}')
            self.assertEqual(run(['verify', '--config', filename,
                                  '--out', temp]), 2)
            filename = write_config(temp, 'zero', n_paths=1)
            self.assertEqual(run(['verify', '--config', filename,
                                  '--out', temp]), 2)
            self.assertEqual(run(['verify', '--config',
                                  path.join(temp, 'missing.json')]), 2)

    def test_divergence(self):
        with tempdir() as temp:
            filename = write_config(
                temp, 'linear_drift', grid={'horizon': 1., 'n_steps': 100},
                model={'name': 'linear_drift', 'params': {'a': 1e150},
                       'c1': 1., 'c2': 1.})
            self.assertEqual(run(['simulate', '--config', filename,
                                  '--out', temp]), 3)

    def test_failed_check(self):
        with tempdir() as temp:
            filename = write_config(
                temp, 'linear_drift', grid={'horizon': 1., 'n_steps': 20},
                model={'name': 'linear_drift', 'params': {'a': 2.},
                       'c1': 1., 'c2': 1.},
                n_iter=3, exponential={'m_max': 2, 'steps_per_unit': 10})
            self.assertEqual(run(['verify', '--config', filename,
                                  '--out', temp]), 4)
            rows = parsefile(path.join(temp, 'verify_0.csv'))
            failed = [row[:2] for row in rows if row[5] is False]
            self.assertIn(['assumption', 'growth'], failed)


class SubcommandTest(unittest.TestCase):

    def test_simulate(self):
        with tempdir() as temp:
            filename = write_config(temp, 'zero', n_paths=2)
            self.assertEqual(run(['simulate', '--config', filename,
                                  '--out', temp, '--seed', '5']), 0)
            output = path.join(temp, 'simulate_5.csv')
            with open(output) as fobj:
                self.assertEqual(fobj.readline().strip(), ','.join(PATH_COLUMNS))
            rows = parsefile(output)
            self.assertEqual(len(rows), 2 * 101)
            self.assertEqual(rows[0][:3], [0, 0, 0])
            self.assertEqual(rows[-1][:3], [0, 1, 100])
            self.assertEqual(set(row[7] for row in rows), set([0.]))

    def test_picard(self):
        with tempdir() as temp:
            self.assertEqual(run(['picard', '--config',
                                  config_path('linear_drift'), '--out', temp]),
                             0)
            self.assertTrue(path.exists(path.join(temp, 'picard_0.json')))
            rows = parsefile(path.join(temp, 'picard_0_distances.csv'))
            self.assertEqual([row[0] for row in rows], list(range(8)))
            for n, distance, square, envelope in rows:
                expected = comb(1000, n + 1) * 0.001 ** (n + 1)
                self.assertAlmostEqual(distance, expected, delta=1e-10)
                self.assertAlmostEqual(square, expected ** 2, delta=1e-10)
                self.assertGreater(envelope, square)

    def test_bdg(self):
        with tempdir() as temp:
            self.assertEqual(run(['bdg', '--config', config_path('zero'),
                                  '--out', temp]), 0)
            rows = parsefile(path.join(temp, 'bdg_0.csv'))
            self.assertEqual(set(row[0] for row in rows),
                             set(['bdg_dB', 'bdg_dQV', 'bdg_jump']))

    def test_exp_estimate(self):
        with tempdir() as temp:
            self.assertEqual(run(['exp-estimate', '--config', config_path('zero'),
                                  '--out', temp]), 0)
            rows = parsefile(path.join(temp, 'exp-estimate_0.csv'))
            self.assertEqual(rows[0][:2], ['exponential', 'growth_rate'])
            self.assertEqual(len(rows), 5)

    def test_deterministic(self):
        with tempdir() as temp:
            filename = write_config(temp, 'zero', scenarios=[
                {'kind': 'piecewise_random', 'band': [0.5, 1.], 'period': 0.1,
                 'levy': {'intensity': 1.,
                          'law': {'kind': 'atoms', 'values': [-1., 1.]}}}],
                n_paths=4)
            outputs = []
            for name in ('first', 'second'):
                outdir = path.join(temp, name)
                run(['bdg', '--config', filename, '--out', outdir,
                     '--seed', '42'])
                outputs.append([read_bytes(path.join(outdir, 'bdg_42.%s' % ext))
                                for ext in ('json', 'csv')])
            self.assertEqual(outputs[0], outputs[1])

    def test_parallel_verify(self):
        with tempdir() as temp:
            codes, outputs = [], []
            for run_index, workers in enumerate((1, 4, 4)):
                filename = write_config(
                    temp, 'gbm', grid={'horizon': 1., 'n_steps': 50},
                    n_paths=8, n_iter=3, max_workers=workers,
                    exponential={'m_max': 2, 'steps_per_unit': 10})
                outdir = path.join(temp, 'run_%d' % run_index)
                codes.append(run(['verify', '--config', filename, '--out',
                                  outdir, '--seed', '9']))
                outputs.append(read_bytes(path.join(outdir, 'verify_9.csv')))
            self.assertEqual(len(set(codes)), 1)
            self.assertIn(codes[0], (0, 4))
            self.assertEqual(outputs[0], outputs[1])
            self.assertEqual(outputs[1], outputs[2])


if __name__ == '__main__':
    unittest.main()
