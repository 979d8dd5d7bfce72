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
""" Segments, initial data and solution paths of a stochastic functional
differential equation

    dx(t) = f(t, x_t) dt + g(t, x_t) d<B>(t) + h(t, x_t) dB(t)
            + int K(t, x_{t-}, z) L(dt, dz),      x_0 = zeta

where the segment x_t = {x(t + theta), -tau <= theta <= 0} is the history
of the solution on a finite window. Before -tau the history is frozen at
zeta(-tau).
"""
import numpy as np

from gsfde.utils.errors import ConfigurationError, UsageError


###############################################################################
### SEGMENTS ##################################################################
###############################################################################
class Segment(object):
    """ Values of a path on the window grid -tau = theta_0 < ... < theta_w = 0

    ``pre_jump`` tells whether the value at theta = 0 is x(t-) rather
    than x(t).
    """

    def __init__(self, values, dt, pre_jump=False):
        values = np.asarray(values, dtype=float)
        if values.ndim != 1 or len(values) < 2:
            raise UsageError('a segment needs at least two window nodes')
        self.values = values
        self.dt = float(dt)
        self.pre_jump = pre_jump

    def __len__(self):
        return len(self.values)

    def __repr__(self):
        return 'Segment(tau=%r, norm=%r)' % (self.tau, self.norm())

    @property
    def window(self):
        """ Number of steps in the window """
        return len(self.values) - 1

    @property
    def tau(self):
        return self.window * self.dt

    def at(self, lag=0.):
        """ Return psi(-lag); lags beyond tau read psi(-tau) """
        steps = min(int(round(lag / self.dt)), self.window)
        return self.values[self.window - steps]

    def norm(self):
        """ Sup norm over the window """
        return float(np.abs(self.values).max())


class SegmentBatch(object):
    """ Segments of one path at several nodes at once.

    ``history`` holds the initial window followed by the path: history[w + j]
    is x(t_j) for j >= 0 and zeta(j * dt) for -w <= j < 0. ``head``, if
    given, replaces the values at theta = 0 (pre-jump values).

    ``at`` follows the Segment interface and returns one value per node, so
    that vectorized coefficients accept both.
    """

    def __init__(self, history, nodes, window, dt, head=None):
        self.history = history
        self.nodes = np.asarray(nodes, dtype=int)
        self.window = window
        self.dt = dt
        self.head = head

    def __len__(self):
        return len(self.nodes)

    def at(self, lag=0.):
        steps = min(int(round(lag / self.dt)), self.window)
        if steps == 0 and self.head is not None:
            return self.head
        return self.history[self.nodes + self.window - steps]

    def norm(self):
        """ Sup norm of each segment """
        index = self.nodes[:, np.newaxis] + np.arange(self.window + 1)
        values = np.abs(self.history[index])
        if self.head is not None:
            values[:, -1] = np.abs(self.head)
        return values.max(axis=1)


###############################################################################
### INITIAL DATA ##############################################################
###############################################################################
class InitialData(object):
    """ Deterministic initial segment zeta
    """

    def __init__(self, segment):
        self.segment = segment

    def __repr__(self):
        return 'InitialData(zeta0=%r, tau=%r)' % (self.zeta0, self.segment.tau)

    @classmethod
    def constant(cls, value, tau, dt):
        """ zeta(theta) = value """
        window = max(1, int(round(tau / dt)))
        return cls(Segment(np.full(window + 1, float(value)), dt))

    @classmethod
    def linear(cls, value, slope, tau, dt):
        """ zeta(theta) = value + slope * theta """
        window = max(1, int(round(tau / dt)))
        theta = dt * np.arange(-window, 1)
        return cls(Segment(value + slope * theta, dt))

    @property
    def zeta0(self):
        return float(self.segment.at(0.))

    @property
    def window(self):
        return self.segment.window

    @property
    def dt(self):
        return self.segment.dt

    def norm_sq(self):
        """ ||zeta||^2 (zeta is deterministic, so also E||zeta||^2) """
        return self.segment.norm() ** 2

    def resample(self, dt):
        """ The same initial segment on a window grid of step ``dt``,
        linearly interpolated (exact for constant and linear data).
        """
        window = max(1, int(round(self.segment.tau / dt)))
        theta = self.dt * np.arange(-self.window, 1)
        target = dt * np.arange(-window, 1)
        return InitialData(Segment(np.interp(target, theta, self.segment.values),
                                   dt))


###############################################################################
### SOLUTION PATH #############################################################
###############################################################################
class SolutionPath(object):
    """ A solved path on a TimeGrid.

    ``values`` are the cadlag values x(t_i); ``pre_values`` the left limits
    x(t_i-), which differ from ``values`` only at nodes where the driver
    jumps; ``jumps`` the jump contribution booked at each node.
    """

    def __init__(self, grid, values, pre_values=None, jumps=None, driver=None,
                 iteration=None):
        values = np.asarray(values, dtype=float)
        if values.shape != (len(grid),):
            raise UsageError('a solution needs n_steps + 1 values')
        self.grid = grid
        self.values = values
        self.pre_values = values if pre_values is None else \
            np.asarray(pre_values, dtype=float)
        self.jumps = np.zeros(len(grid)) if jumps is None else jumps
        self.driver = driver
        self.iteration = iteration

    def __repr__(self):
        return 'SolutionPath(%r, iteration=%r)' % (self.grid, self.iteration)

    @property
    def jump_nodes(self):
        return np.unique(self.driver.jump_nodes) if self.driver is not None \
            else np.array([], dtype=int)

    def sup_square(self, start=0, stop=None):
        """ max |x|^2 over the nodes start..stop (left limits included) """
        stop = len(self.grid) if stop is None else stop + 1
        return float(max(np.max(self.values[start:stop] ** 2),
                         np.max(self.pre_values[start:stop] ** 2)))

    def history(self, initial):
        """ Initial window followed by the path, see SegmentBatch """
        return np.concatenate((initial.segment.values[:-1], self.values))


###############################################################################
### MODEL #####################################################################
###############################################################################
class SFDEModel(object):
    """ Coefficients, initial data and time grid of one equation
    """

    def __init__(self, coefficients, initial, grid):
        if not np.isclose(initial.dt, grid.dt, rtol=1e-9, atol=0.):
            raise UsageError('initial segment and grid steps differ (%s != %s)'
                             % (initial.dt, grid.dt))
        # lags beyond tau would be clamped to the end of the window
        if coefficients.max_lag > initial.segment.tau + initial.dt / 2.:
            raise ConfigurationError('the coefficients look back %s, beyond the '
                                     'delay window %s'
                                     % (coefficients.max_lag, initial.segment.tau),
                                     'delay.tau')
        self.coefficients = coefficients
        self.initial = initial
        self.grid = grid

    def __repr__(self):
        return 'SFDEModel(%r, %r, %r)' % (self.coefficients, self.initial,
                                          self.grid)
