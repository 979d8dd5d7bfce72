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
""" Discrete stochastic integrals.

All integrals are left point sums on a TimeGrid: the integrand value at
t_i is the one used on [t_i, t_{i+1}), as for simple processes. The
``running_*`` functions return the whole integral path as a GridProcess.
"""
import numpy as np

from gsfde.utils.errors import UsageError


###############################################################################
### GRID PROCESS ##############################################################
###############################################################################
class GridProcess(object):
    """ Values of a process at the nodes of a TimeGrid
    """

    def __init__(self, grid, values):
        values = np.asarray(values, dtype=float)
        if values.shape != (len(grid),):
            raise UsageError('a grid process needs %d values (got %s)'
                             % (len(grid), values.shape))
        self.grid = grid
        self.values = values

    def __len__(self):
        return len(self.values)

    def __getitem__(self, index):
        return self.values[index]

    def __repr__(self):
        return 'GridProcess(%r, ...)' % (self.grid,)

    @classmethod
    def from_function(cls, grid, func):
        """ Build the process t -> func(t), ``func`` being vectorized """
        return cls(grid, np.broadcast_to(func(grid.nodes), (len(grid),)))


class JumpField(object):
    """ Realized values K(t_j, ., z_j) of a jump integrand at the jump events
    (t_j, z_j) of a driver path.
    """

    def __init__(self, times, values):
        times = np.asarray(times, dtype=float)
        values = np.asarray(values, dtype=float)
        if times.shape != values.shape:
            raise UsageError('one value per jump event is needed')
        self.times = times
        self.values = values

    @classmethod
    def from_function(cls, driver, func):
        """ Evaluate ``func(t, z)`` at the jump events of ``driver`` """
        return cls(driver.jump_times,
                   func(driver.jump_times, driver.jump_sizes))


###############################################################################
### UTILITY FUNCTIONS #########################################################
###############################################################################
def _values(process):
    return process.values if isinstance(process, GridProcess) else \
        np.asarray(process, dtype=float)

def _check_up_to(up_to, length):
    if up_to is None:
        return length - 1
    if int(up_to) != up_to or not 0 <= up_to <= length - 1:
        raise UsageError('node index %s out of range [0, %d]'
                         % (up_to, length - 1))
    return int(up_to)

def _left_point(integrand, integrator, up_to):
    integrand = _values(integrand)
    integrator = _values(integrator)
    if integrand.shape != integrator.shape:
        raise UsageError('integrand and integrator lengths differ (%d != %d)'
                         % (len(integrand), len(integrator)))
    up_to = _check_up_to(up_to, len(integrator))
    return float(np.dot(integrand[:up_to], np.diff(integrator[:up_to + 1])))

def _running(integrand, increments):
    return np.concatenate(([0.], np.cumsum(integrand[:-1] * increments)))


###############################################################################
### INTEGRALS #################################################################
###############################################################################
def lebesgue_integral(eta, dt=None, up_to=None):
    """ sum_{i<up_to} eta[i] * dt

    ``dt`` defaults to the grid step when ``eta`` is a GridProcess.
    """
    if dt is None:
        if not isinstance(eta, GridProcess):
            raise UsageError('dt is required for raw arrays')
        dt = eta.grid.dt
    values = _values(eta)
    up_to = _check_up_to(up_to, len(values))
    return float(values[:up_to].sum() * dt)

def ito_integral(lam, B, up_to=None):
    """ sum_{i<up_to} lam[i] * (B[i+1] - B[i]) """
    return _left_point(lam, B, up_to)

def qv_integral(eta, qv, up_to=None):
    """ sum_{i<up_to} eta[i] * (qv[i+1] - qv[i]) """
    return _left_point(eta, qv, up_to)

def jump_integral(field, up_to_time=None):
    """ Sum of the realized jump integrand over the events with time <= t
    """
    if up_to_time is None:
        return float(field.values.sum())
    return float(field.values[field.times <= up_to_time].sum())


###############################################################################
### RUNNING INTEGRALS #########################################################
###############################################################################
def running_lebesgue(eta):
    """ Integral path t_k -> sum_{i<k} eta[i] dt """
    values = _values(eta)
    return GridProcess(eta.grid, _running(values, eta.grid.dt))

def running_ito(lam, B):
    """ Integral path t_k -> sum_{i<k} lam[i] (B[i+1] - B[i]) """
    values = _values(lam)
    if values.shape != np.shape(B):
        raise UsageError('integrand and integrator lengths differ')
    return GridProcess(lam.grid, _running(values, np.diff(B)))

def running_qv(eta, qv):
    """ Integral path t_k -> sum_{i<k} eta[i] (qv[i+1] - qv[i]) """
    return running_ito(eta, qv)

def running_jump(field, driver):
    """ Integral path t_k -> sum of the field over events booked at nodes <= k
    """
    if len(field.values) != driver.n_jumps:
        raise UsageError('one field value per jump event is needed')
    return GridProcess(driver.grid, np.cumsum(driver.per_node(field.values)))
