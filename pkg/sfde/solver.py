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
""" Euler scheme and Picard iteration.

Both discretize the same integral equation with left point sums: on
[t_i, t_{i+1}) the coefficients are evaluated on the segment at t_i, and a
jump booked at node i+1 is evaluated on the segment whose value at
theta = 0 is the left limit x(t_{i+1}-).
"""
import logging

import numpy as np

from gsfde.utils.errors import DivergenceError, UsageError
from gsfde.sfde.model import Segment, SegmentBatch, SolutionPath


logger = logging.getLogger('gsfde.solver')


###############################################################################
### UTILITY FUNCTIONS #########################################################
###############################################################################
def _check_driver(model, driver):
    if driver.grid != model.grid:
        raise UsageError('driver grid %r differs from model grid %r'
                         % (driver.grid, model.grid))

def _check_finite(values, what):
    bad = np.flatnonzero(~np.isfinite(values))
    if len(bad):
        raise DivergenceError('non finite %s' % what, node=int(bad[0]))

def _event_bounds(driver):
    """ Events booked at node k are driver.jump_*[bounds[k]:bounds[k + 1]] """
    return np.searchsorted(driver.jump_nodes, np.arange(len(driver.grid) + 1))


###############################################################################
### SEGMENTS AND DISTANCES ####################################################
###############################################################################
def segment_extract(solution, initial, node, pre_jump=False):
    """ Return the segment x_{t_node} of ``solution``.

    Window values come from the path for t + theta >= 0 and from ``initial``
    before; with ``pre_jump`` the value at theta = 0 is x(t_node-).
    """
    if int(node) != node or not 0 <= node < len(solution.grid):
        raise UsageError('node %s out of range [0, %d]'
                         % (node, len(solution.grid) - 1))
    window = initial.window
    values = solution.history(initial)[node:node + window + 1].copy()
    if pre_jump:
        values[-1] = solution.pre_values[node]
    return Segment(values, initial.dt, pre_jump)

def sup_distance(a, b):
    """ max over the nodes of |a - b|, left limits included """
    if a.grid != b.grid:
        raise UsageError('cannot compare solutions on different grids')
    return float(max(np.max(np.abs(a.values - b.values)),
                     np.max(np.abs(a.pre_values - b.pre_values))))


###############################################################################
### EULER SCHEME ##############################################################
###############################################################################
def euler_solve(model, driver):
    """ Solve ``model`` along ``driver`` with the explicit Euler scheme

        x(t_{i+1}-) = x(t_i) + f dt + g d<B>_i + h dB_i
        x(t_{i+1})  = x(t_{i+1}-) + sum of K over the jumps of (t_i, t_{i+1}]
    """
    _check_driver(model, driver)
    coeffs, initial, grid = model.coefficients, model.initial, model.grid
    window, n, dt = initial.window, grid.n_steps, grid.dt
    history = np.empty(window + n + 1)
    history[:window + 1] = initial.segment.values
    pre = np.empty(n + 1)
    pre[0] = history[window]
    jumps = np.zeros(n + 1)
    dB, dqv = np.diff(driver.B), np.diff(driver.qv)
    bounds = _event_bounds(driver)
    for i in range(n):
        t = grid.nodes[i]
        seg = Segment(history[i:i + window + 1], dt)
        value = (history[window + i] + coeffs.drift(t, seg) * dt
                 + coeffs.qv_coefficient(t, seg) * dqv[i]
                 + coeffs.diffusion(t, seg) * dB[i])
        pre[i + 1] = value
        first, last = bounds[i + 1], bounds[i + 2]
        if last > first:
            values = history[i + 1:i + window + 2].copy()
            values[-1] = value
            contributions = coeffs.jump(driver.jump_times[first:last],
                                        Segment(values, dt, pre_jump=True),
                                        driver.jump_sizes[first:last])
            jumps[i + 1] = np.sum(contributions)
            value = value + jumps[i + 1]
        if not np.isfinite(value):
            values = history[window:].copy()
            values[i + 1:] = np.nan
            pre[i + 1:] = np.nan
            partial = SolutionPath(grid, values, pre, jumps, driver)
            raise DivergenceError('non finite state', node=i + 1,
                                  partial=partial)
        history[window + i + 1] = value
    return SolutionPath(grid, history[window:].copy(), pre, jumps, driver)


###############################################################################
### PICARD ITERATION ##########################################################
###############################################################################
def picard_step(model, driver, previous, iteration=None):
    """ Compute the next Picard iterate from ``previous``: all four
    integrals are evaluated on the segments of ``previous`` against the
    same driver.
    """
    coeffs, initial, grid = model.coefficients, model.initial, model.grid
    window, n, dt = initial.window, grid.n_steps, grid.dt
    history = previous.history(initial)
    seg = SegmentBatch(history, np.arange(n), window, dt)
    t = grid.nodes[:-1]
    increments = (coeffs.drift(t, seg) * dt
                  + coeffs.qv_coefficient(t, seg) * np.diff(driver.qv)
                  + coeffs.diffusion(t, seg) * np.diff(driver.B))
    increments = np.broadcast_to(increments, (n,))
    continuous = initial.zeta0 + np.concatenate(([0.], np.cumsum(increments)))
    if driver.n_jumps:
        nodes = driver.jump_nodes
        jseg = SegmentBatch(history, nodes, window, dt,
                            head=previous.pre_values[nodes])
        contributions = coeffs.jump(driver.jump_times, jseg, driver.jump_sizes)
        jumps = driver.per_node(np.broadcast_to(contributions, nodes.shape))
    else:
        jumps = np.zeros(n + 1)
    # jumps booked strictly before each node
    pre = continuous + np.concatenate(([0.], np.cumsum(jumps)[:-1]))
    values = pre + jumps
    _check_finite(values, 'Picard iterate %s' % iteration)
    return SolutionPath(grid, values, pre, jumps, driver, iteration)

def picard_iterate(model, driver, n_iter, start=None):
    """ Return the Picard iterates x^0, x^1, ..., x^n_iter along ``driver``.

    x^0 is constant, equal to zeta(0) or to ``start`` if given, and all the
    iterates share the initial segment zeta.
    """
    _check_driver(model, driver)
    if n_iter < 1:
        raise UsageError('n_iter must be at least 1 (got %s)' % n_iter)
    grid = model.grid
    level = model.initial.zeta0 if start is None else float(start)
    iterates = [SolutionPath(grid, np.full(len(grid), level), driver=driver,
                             iteration=0)]
    for iteration in range(1, n_iter + 1):
        iterates.append(picard_step(model, driver, iterates[-1], iteration))
    logger.debug('%d Picard iterates along driver seed %s', n_iter, driver.seed)
    return iterates

def picard_distances(iterates):
    """ sup_t |x^{n+1} - x^n| for n = 0 .. len(iterates) - 2 """
    return np.array([sup_distance(b, a) for a, b in zip(iterates, iterates[1:])])
