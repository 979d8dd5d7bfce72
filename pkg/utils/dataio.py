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
""" Experiment configuration and report files.
"""
import os
from os import path as osp

import json
import csv

import numpy as np

from gsfde.utils.errors import ConfigurationError, UsageError
from gsfde.utils.timegrid import (JUMP_LAWS, LevyScenario, ScenarioFamily,
                                  TimeGrid, build_control)
from gsfde.sfde.coefficients import build_coefficients
from gsfde.sfde.model import InitialData, SFDEModel


REPORT_COLUMNS = ('check', 'name', 'lhs', 'rhs', 'margin', 'holds', 'n_paths',
                  'seed')
PATH_COLUMNS = ('scenario', 'path', 'node', 't', 'B', 'qv', 'jump', 'x', 'x_pre')
DISTANCE_COLUMNS = ('n', 'sup_distance', 'mean_square', 'envelope')


###############################################################################
### UTILITY FUNCTIONS #########################################################
###############################################################################
def autocast(data):
    """ Try to convert data into a specific type
    in (int, float, bool, str)
    """
    try:
        return int(data)
    except ValueError:
        try:
            return float(data)
        except ValueError:
            data = data.strip()
            return {'true': True, 'false': False}.get(data, data)

def _check_keys(data, key, allowed, required=()):
    if not isinstance(data, dict):
        raise ConfigurationError('expected an object', key)
    prefix = key + '.' if key else ''
    for name in sorted(data):
        if name not in allowed:
            raise ConfigurationError('unknown key', prefix + name)
    for name in required:
        if name not in data:
            raise ConfigurationError('missing required key', prefix + name)

def _number(value, key, minimum=None, strict=False, integer=False):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigurationError('expected a number (got %r)' % (value,), key)
    if integer and int(value) != value:
        raise ConfigurationError('expected an integer (got %r)' % (value,), key)
    if minimum is not None and (value < minimum or strict and value == minimum):
        raise ConfigurationError('must be %s %s (got %r)'
                                 % ('>' if strict else '>=', minimum, value), key)
    return int(value) if integer else float(value)

def _rekeyed(err, prefix):
    """ Same ConfigurationError with its key under ``prefix`` """
    return ConfigurationError(err.reason, '%s.%s' % (prefix, err.key) if err.key
                              else prefix)


###############################################################################
### EXPERIMENT CONFIGURATION ##################################################
###############################################################################
TOP_KEYS = ('grid', 'scenarios', 'model', 'delay', 'initial', 'n_paths',
            'n_iter', 'seed', 'max_workers', 'output', 'bdg', 'exponential',
            'uniqueness')


class ExperimentConfig(object):
    """ A validated experiment: time grid, scenario family, model, Monte Carlo
    sizes and the options of the checks. ``build_*`` methods instantiate the
    library objects.
    """

    def __init__(self, data, source=None):
        self.source = source
        _check_keys(data, '', TOP_KEYS, ('grid', 'scenarios', 'model'))
        self._parse_grid(data['grid'])
        self._parse_scenarios(data['scenarios'])
        self._parse_model(data['model'])
        self._parse_initial(data.get('delay', {}), data.get('initial', {}))
        # fail on lags beyond the delay window at load time
        self.build_model()
        self.n_paths = _number(data.get('n_paths', 256), 'n_paths', 2,
                               integer=True)
        self.n_iter = _number(data.get('n_iter', 8), 'n_iter', 3, integer=True)
        self.seed = _number(data.get('seed', 0), 'seed', 0, integer=True)
        self.max_workers = _number(data.get('max_workers', 1), 'max_workers', 1,
                                   integer=True)
        self.output = data.get('output', '.')
        if not isinstance(self.output, str):
            raise ConfigurationError('expected a directory name', 'output')
        self._parse_bdg(data.get('bdg', {}))
        self.exponential = self._parse_options(
            data.get('exponential', {}), 'exponential',
            (('m_max', 20, 2, True), ('steps_per_unit', 100, 1, True),
             ('epsilon', 1., 0, False), ('slack', 0., 0, False)))
        self.uniqueness = self._parse_options(
            data.get('uniqueness', {}), 'uniqueness',
            (('n_iter', 40, 1, True), ('tol', 1e-8, 0, False),
             ('perturbation', 1., None, False)))

    def __repr__(self):
        return 'ExperimentConfig(%r, model=%r, seed=%r)' % (
            self.source, self.model_name, self.seed)

    ### parsing ###############################################################
    def _parse_grid(self, grid):
        _check_keys(grid, 'grid', ('horizon', 'n_steps'), ('horizon', 'n_steps'))
        self.horizon = _number(grid['horizon'], 'grid.horizon', 0, strict=True)
        self.n_steps = _number(grid['n_steps'], 'grid.n_steps', 1, integer=True)

    def _parse_scenarios(self, scenarios):
        if not isinstance(scenarios, list) or not scenarios:
            raise ConfigurationError('expected a nonempty list', 'scenarios')
        self.scenarios = []
        for index, item in enumerate(scenarios):
            key = 'scenarios[%d]' % index
            _check_keys(item, key, ('kind', 'band', 'value', 'period',
                                    'seed_offset', 'levy'), ('kind', 'band'))
            params = dict((name, item[name]) for name in
                          ('value', 'period', 'seed_offset') if name in item)
            try:
                control = build_control(item['kind'], item['band'], **params)
                levy = self._parse_levy(item.get('levy', {}), key + '.levy')
            except ConfigurationError as err:
                if err.key and err.key.startswith(key):
                    raise
                raise _rekeyed(err, key)
            except TypeError as err:
                raise ConfigurationError(str(err), key)
            self.scenarios.append((control, levy))

    def _parse_levy(self, levy, key):
        _check_keys(levy, key, ('intensity', 'law'))
        intensity = _number(levy.get('intensity', 0.), key + '.intensity', 0)
        law = levy.get('law')
        if law is not None:
            _check_keys(law, key + '.law', ('kind', 'values', 'probs', 'low',
                                            'high'), ('kind',))
            params = dict(law)
            kind = params.pop('kind')
            try:
                klass = JUMP_LAWS[kind]
            except (KeyError, TypeError):
                raise ConfigurationError('unknown jump law %r (expected one of %s)'
                                         % (kind, ', '.join(sorted(JUMP_LAWS))),
                                         key + '.law.kind')
            try:
                law = klass(**params)
            except TypeError as err:
                raise ConfigurationError(str(err), key + '.law')
        return LevyScenario(intensity, law)

    def _parse_model(self, model):
        _check_keys(model, 'model', ('name', 'params', 'c1', 'c2'),
                    ('name', 'c1', 'c2'))
        if not isinstance(model['name'], str):
            raise ConfigurationError('expected a model name', 'model.name')
        self.model_name = model['name']
        self.model_params = model.get('params', {})
        if not isinstance(self.model_params, dict):
            raise ConfigurationError('expected an object', 'model.params')
        self.c1 = _number(model['c1'], 'model.c1', 0)
        self.c2 = _number(model['c2'], 'model.c2', 0)
        # fail on unknown models at load time
        self.build_coefficients()

    def _parse_initial(self, delay, initial):
        _check_keys(delay, 'delay', ('tau',))
        dt = self.horizon / self.n_steps
        self.tau = _number(delay.get('tau', dt), 'delay.tau', 0, strict=True)
        _check_keys(initial, 'initial', ('kind', 'value', 'slope'))
        self.initial_kind = initial.get('kind', 'constant')
        if self.initial_kind not in ('constant', 'linear'):
            raise ConfigurationError('expected "constant" or "linear" (got %r)'
                                     % (self.initial_kind,), 'initial.kind')
        self.initial_value = _number(initial.get('value', 1.), 'initial.value')
        self.initial_slope = _number(initial.get('slope', 0.), 'initial.slope')
        if self.initial_kind == 'constant' and self.initial_slope:
            raise ConfigurationError('a constant segment has no slope',
                                     'initial.slope')

    def _parse_bdg(self, bdg):
        _check_keys(bdg, 'bdg', ('sigma_bar', 'k1', 'k2', 'k3'))
        default_sigma = max(control.sigma_hi for control, _ in self.scenarios)
        self.sigma_bar = _number(bdg.get('sigma_bar', default_sigma),
                                 'bdg.sigma_bar', 0)
        self.k1 = _number(bdg.get('k1', self.sigma_bar ** 4), 'bdg.k1', 0)
        self.k2 = _number(bdg.get('k2', 4. * self.sigma_bar ** 2), 'bdg.k2', 0)
        self.k3 = _number(bdg.get('k3', 8.), 'bdg.k3', 0)

    def _parse_options(self, options, section, specs):
        _check_keys(options, section, [spec[0] for spec in specs])
        result = {}
        for name, default, minimum, integer in specs:
            result[name] = _number(options.get(name, default),
                                   '%s.%s' % (section, name), minimum,
                                   integer=integer)
        return result

    ### building ##############################################################
    def build_grid(self):
        return TimeGrid(self.horizon, self.n_steps)

    def build_family(self):
        return ScenarioFamily(self.scenarios)

    def build_coefficients(self):
        return build_coefficients(self.model_name, self.model_params,
                                  self.c1, self.c2)

    def build_initial(self, dt):
        if self.initial_kind == 'linear':
            return InitialData.linear(self.initial_value, self.initial_slope,
                                      self.tau, dt)
        return InitialData.constant(self.initial_value, self.tau, dt)

    def build_model(self):
        grid = self.build_grid()
        return SFDEModel(self.build_coefficients(), self.build_initial(grid.dt),
                         grid)

    @property
    def bdg_constants(self):
        return self.k1, self.k2, self.k3


def load_config(filename, seed=None, output=None):
    """ Load and validate the JSON experiment ``filename``; ``seed`` and
    ``output``, when given, override the file values.
    """
    try:
        with open(filename) as fobj:
            data = json.load(fobj)
    except (IOError, OSError) as err:
        raise ConfigurationError('cannot read %s (%s)' % (filename, err),
                                 'config')
    except ValueError as err:
        raise ConfigurationError('invalid JSON in %s (%s)' % (filename, err),
                                 'config')
    if isinstance(data, dict):
        if seed is not None:
            data['seed'] = seed
        if output is not None:
            data['output'] = output
    return ExperimentConfig(data, filename)


###############################################################################
### FILE FUNCTIONS ############################################################
###############################################################################
def parsefile(filename, indexes=None, nbmax=None, delimiter=',',
              autocast_data=True, formatopt=None, skip_header=True):
    """ Parse the csv file (read ``nbmax`` data lines at maximum if given).
        Each line is splitted according ``delimiter`` and only ``indexes``
        are kept.

        eg : The file is :
                check,name,lhs,rhs,margin,holds,n_paths,seed
                chebyshev,c=1,0.31,1.02,0.71,true,256,0

            >>> data = parsefile('verify_0.csv', [0, (2, 3), 5])
            data = [['chebyshev', (0.31, 1.02), True]]

            By default, all cells are "autocast" (thanks to the
            ``autocast()`` function), but you can overpass it thanks to the
            ``formatopt`` dictionnary. Each key is the index to work on, and the
            value is the function to call.
    """
    transform = autocast if autocast_data else (lambda x: x)
    formatopt = formatopt or {}
    indexes = indexes or []
    result = []
    with open(filename, newline='') as csvfile:
        reader = csv.reader(csvfile, delimiter=delimiter)
        if skip_header:
            next(reader, None)
        for ind, row in enumerate(reader):
            if nbmax and ind >= nbmax:
                break
            row = [formatopt.get(i, transform)(cell.strip())
                   for i, cell in enumerate(row)]
            if not indexes:
                result.append(row)
                continue
            data = []
            for index in indexes:
                if isinstance(index, tuple):
                    data.append(tuple(row[i] for i in index))
                else:
                    data.append(row[index])
            result.append(data)
    return result

def write_csv(filename, header, rows):
    """ Write ``rows`` under ``header``; floats keep their repr """
    with open(filename, 'w', newline='') as fobj:
        writer = csv.writer(fobj, lineterminator='\n')
        writer.writerow(header)
        for row in rows:
            writer.writerow([repr(float(v)) if isinstance(v, (float, np.floating))
                             else v for v in row])

def _output_dir(outdir):
    try:
        os.makedirs(outdir, exist_ok=True)
    except OSError as err:
        raise ConfigurationError('cannot create %s (%s)' % (outdir, err),
                                 'output')
    if not os.access(outdir, os.W_OK):
        raise ConfigurationError('%s is not writable' % outdir, 'output')
    return outdir

def _jsonable(obj):
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError('%r is not JSON serializable' % (obj,))

def emit_report(reports, outdir, subcommand, seed):
    """ Write ``{subcommand}_{seed}.json`` (every field of every report) and
    ``{subcommand}_{seed}.csv`` (one row per report) into ``outdir``.

    Return the two file names.
    """
    if not reports:
        raise UsageError('no report to emit')
    outdir = _output_dir(outdir)
    base = osp.join(outdir, '%s_%s' % (subcommand, seed))
    records = []
    for report in reports:
        record = report._asdict()
        record['holds'] = report.holds
        records.append(record)
    try:
        with open(base + '.json', 'w') as fobj:
            json.dump(records, fobj, sort_keys=True, indent=2, default=_jsonable)
            fobj.write('\n')
        write_csv(base + '.csv', REPORT_COLUMNS,
                  [(r.check, r.name, r.lhs, r.rhs, r.margin, r.status,
                    r.n_paths, r.seed) for r in reports])
    except (IOError, OSError) as err:
        raise ConfigurationError('cannot write reports (%s)' % err, 'output')
    return base + '.json', base + '.csv'

def write_paths_csv(rows, outdir, seed):
    """ ``simulate_{seed}.csv``, one row per (scenario, path, node) """
    filename = osp.join(_output_dir(outdir), 'simulate_%s.csv' % seed)
    write_csv(filename, PATH_COLUMNS, rows)
    return filename

def write_distances_csv(rows, outdir, seed):
    """ ``picard_{seed}_distances.csv``, one row per iteration """
    filename = osp.join(_output_dir(outdir), 'picard_%s_distances.csv' % seed)
    write_csv(filename, DISTANCE_COLUMNS, rows)
    return filename
