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
""" Command line runner

    gsfde <simulate|picard|verify|bdg|exp-estimate> --config PATH
          [--out DIR] [--seed U64] [-v]

Exit codes: 0 when every executed check holds, 2 for configuration and
usage errors, 3 for solver divergence, 4 when a bound check fails.
"""
import sys
import argparse
import logging

from gsfde.utils.errors import Error
from gsfde.utils.dataio import (emit_report, load_config, write_distances_csv,
                                write_paths_csv)
from gsfde.sfde.solver import euler_solve
from gsfde.bounds.harness import BoundsHarness, all_hold


EXIT_OK = 0
EXIT_FAILED_CHECK = 4
MAX_SEED = 2 ** 64 - 1

SUBCOMMANDS = ('simulate', 'picard', 'verify', 'bdg', 'exp-estimate')

logger = logging.getLogger('gsfde.cli')


###############################################################################
### UTILITY FUNCTIONS #########################################################
###############################################################################
def _seed(value):
    try:
        seed = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError('invalid seed %r' % value)
    if not 0 <= seed <= MAX_SEED:
        raise argparse.ArgumentTypeError('seed must be an unsigned 64 bits '
                                         'integer (got %s)' % value)
    return seed

def build_parser():
    parser = argparse.ArgumentParser(
        prog='gsfde',
        description='Simulate stochastic functional differential equations '
                    'under volatility and jump uncertainty and check their '
                    'moment bounds.')
    parser.add_argument('subcommand', choices=SUBCOMMANDS)
    parser.add_argument('--config', required=True,
                        help='JSON experiment configuration')
    parser.add_argument('--out', default=None,
                        help='output directory (overrides the configuration)')
    parser.add_argument('--seed', type=_seed, default=None,
                        help='base seed (overrides the configuration)')
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help='-v for info, -vv for debug messages')
    return parser

def setup_logging(verbosity):
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbosity, logging.DEBUG)
    logging.basicConfig(level=level,
                        format='%(asctime)s %(levelname)s %(name)s: %(message)s')
    logging.getLogger('gsfde').setLevel(level)

def make_harness(config):
    return BoundsHarness(config.build_model(), config.build_family(),
                         n_paths=config.n_paths, n_iter=config.n_iter,
                         seed=config.seed, bdg=config.bdg_constants,
                         max_workers=config.max_workers,
                         exponential=config.exponential,
                         uniqueness=config.uniqueness)

def _status(reports):
    return EXIT_OK if all_hold(reports) else EXIT_FAILED_CHECK


###############################################################################
### SUBCOMMANDS ###############################################################
###############################################################################
def simulate(config):
    """ Solve the model along n_paths drivers of every scenario """
    model, family = config.build_model(), config.build_family()
    grid = model.grid
    rows = []
    for scenario in range(len(family)):
        for path in range(config.n_paths):
            driver = family.generate(grid, scenario, path, config.seed)
            solution = euler_solve(model, driver)
            jumps = driver.per_node()
            for node in range(len(grid)):
                rows.append((scenario, path, node, grid.nodes[node],
                             driver.B[node], driver.qv[node], jumps[node],
                             solution.values[node], solution.pre_values[node]))
    filename = write_paths_csv(rows, config.output, config.seed)
    logger.info('%d paths written to %s', len(family) * config.n_paths, filename)
    return EXIT_OK

def picard(config):
    reports, table = make_harness(config).picard()
    emit_report(reports, config.output, 'picard', config.seed)
    write_distances_csv(table, config.output, config.seed)
    return _status(reports)

def verify(config):
    reports = make_harness(config).verify()
    emit_report(reports, config.output, 'verify', config.seed)
    return _status(reports)

def bdg(config):
    reports = make_harness(config).bdg_calibration()
    emit_report(reports, config.output, 'bdg', config.seed)
    return _status(reports)

def exp_estimate(config):
    reports = make_harness(config).exponential_estimate()
    emit_report(reports, config.output, 'exp-estimate', config.seed)
    return _status(reports)

RUNNERS = {
    'simulate': simulate,
    'picard': picard,
    'verify': verify,
    'bdg': bdg,
    'exp-estimate': exp_estimate,
    }


###############################################################################
### ENTRY POINTS ##############################################################
###############################################################################
def run(argv=None):
    """ Run the command line ``argv`` and return the exit code """
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as err:
        return err.code
    setup_logging(args.verbose)
    try:
        config = load_config(args.config, seed=args.seed, output=args.out)
        return RUNNERS[args.subcommand](config)
    except Error as err:
        logger.error('%s: %s', err.__class__.__name__, err)
        return err.exit_code

def main():
    sys.exit(run())


if __name__ == '__main__':
    main()
