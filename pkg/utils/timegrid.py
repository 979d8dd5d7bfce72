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
""" Time grids, uncertainty scenarios and driver paths.

A G-Levy driver is realized as a finite family of scenarios. Each scenario
pairs a volatility control (the continuous G-Brownian part lives in the
band [sigma_lo, sigma_hi]) with a compound Poisson jump measure. One
driver path is one draw of one scenario, fully determined by its seed.
"""
from math import sqrt

import numpy as np
from numpy.polynomial.legendre import leggauss

from gsfde.utils.errors import ConfigurationError, UsageError


# Per (scenario, path) seeds are seed_base + scenario * SEED_STRIDE + path
SEED_STRIDE = 2 ** 32

# Stream tags, so that the draws of one path never overlap
BROWNIAN_STREAM = 0
JUMP_STREAM = 1
CONTROL_STREAM = 2


###############################################################################
### UTILITY FUNCTIONS #########################################################
###############################################################################
def derive_seed(seed_base, scenario_index, path_index):
    """ Return the seed of path ``path_index`` of scenario ``scenario_index``
    """
    return int(seed_base) + int(scenario_index) * SEED_STRIDE + int(path_index)

def random_stream(seed, *tags):
    """ Return a numpy Generator for ``seed``, separated by ``tags``
    """
    if seed < 0:
        raise UsageError('seeds must be non negative (got %s)' % seed)
    return np.random.default_rng([int(seed)] + [int(t) for t in tags])


###############################################################################
### TIME GRID #################################################################
###############################################################################
class TimeGrid(object):
    """ Uniform partition 0 = t_0 < t_1 < ... < t_n = T of [0, T]
    """

    def __init__(self, horizon, n_steps):
        horizon = float(horizon)
        if not (np.isfinite(horizon) and horizon > 0):
            raise ConfigurationError('horizon must be a positive time (got %s)'
                                     % horizon, 'grid.horizon')
        if int(n_steps) != n_steps or n_steps < 1:
            raise ConfigurationError('n_steps must be a positive integer (got %s)'
                                     % n_steps, 'grid.n_steps')
        self.horizon = horizon
        self.n_steps = int(n_steps)
        self.dt = horizon / self.n_steps
        # linspace pins both end points exactly
        self.nodes = np.linspace(0., horizon, self.n_steps + 1)

    def __len__(self):
        return self.n_steps + 1

    def __eq__(self, other):
        return (isinstance(other, TimeGrid) and self.horizon == other.horizon
                and self.n_steps == other.n_steps)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.horizon, self.n_steps))

    def __repr__(self):
        return 'TimeGrid(horizon=%r, n_steps=%r)' % (self.horizon, self.n_steps)

    def window_steps(self, tau):
        """ Number of grid steps covering a delay window of length ``tau``
        (at least one)
        """
        if not tau > 0:
            raise ConfigurationError('delay window must be positive (got %s)'
                                     % tau, 'delay.tau')
        return max(1, int(round(tau / self.dt)))

    def index_of(self, times):
        """ Node index k such that t_{k-1} < t <= t_k, i.e. the node at which
        an event happening at time t is booked.
        """
        return np.searchsorted(self.nodes, times, side='left')


###############################################################################
### VOLATILITY CONTROLS #######################################################
###############################################################################
class VolatilityControl(object):
    """ An adapted volatility control sigma(t) living in the band
    [sigma_lo, sigma_hi].

    Concrete controls implement ``_evaluate`` and return sigma(t_i) for
    i = 0..n_steps-1, the value applied on [t_i, t_{i+1}).
    """
    kind = None

    def __init__(self, band, dim=1):
        try:
            sigma_lo, sigma_hi = [float(b) for b in band]
        except (TypeError, ValueError):
            raise ConfigurationError('band must be a pair [lo, hi]', 'band')
        if not 0 <= sigma_lo <= sigma_hi:
            raise ConfigurationError('invalid volatility band [%s, %s]'
                                     % (sigma_lo, sigma_hi), 'band')
        if dim != 1:
            raise ConfigurationError('only scalar drivers are supported', 'dim')
        self.sigma_lo = sigma_lo
        self.sigma_hi = sigma_hi
        self.dim = dim

    def __repr__(self):
        return '%s(band=[%r, %r])' % (self.__class__.__name__,
                                      self.sigma_lo, self.sigma_hi)

    def _evaluate(self, grid, seed):
        raise NotImplementedError

    def evaluate(self, grid, seed=0):
        """ Return the array of sigma(t_i), i = 0..n_steps-1
        """
        return np.asarray(self._evaluate(grid, seed), dtype=float)


class ConstantControl(VolatilityControl):
    """ sigma(t) = value for all t (default: the upper edge of the band)
    """
    kind = 'constant'

    def __init__(self, band, value=None, dim=1):
        super(ConstantControl, self).__init__(band, dim)
        value = self.sigma_hi if value is None else float(value)
        if not self.sigma_lo <= value <= self.sigma_hi:
            raise ConfigurationError('constant volatility %s outside the band'
                                     % value, 'value')
        self.value = value

    def _evaluate(self, grid, seed):
        return np.full(grid.n_steps, self.value)


class BangBangControl(VolatilityControl):
    """ sigma(t) alternates between sigma_hi and sigma_lo every ``period``,
    starting at sigma_hi.
    """
    kind = 'bang_bang'

    def __init__(self, band, period=0.1, dim=1):
        super(BangBangControl, self).__init__(band, dim)
        if not period > 0:
            raise ConfigurationError('period must be positive', 'period')
        self.period = float(period)

    def _evaluate(self, grid, seed):
        steps = max(1, int(round(self.period / grid.dt)))
        block = np.arange(grid.n_steps) // steps
        return np.where(block % 2 == 0, self.sigma_hi, self.sigma_lo)


class PiecewiseRandomControl(VolatilityControl):
    """ sigma(t) is redrawn uniformly in the band at the start of each
    ``period``. The draws use their own stream (shifted by ``seed_offset``)
    and never look at the driver, hence the control is adapted.
    """
    kind = 'piecewise_random'

    def __init__(self, band, period=0.1, seed_offset=0, dim=1):
        super(PiecewiseRandomControl, self).__init__(band, dim)
        if not period > 0:
            raise ConfigurationError('period must be positive', 'period')
        if int(seed_offset) != seed_offset or seed_offset < 0:
            raise ConfigurationError('seed_offset must be a non negative integer',
                                     'seed_offset')
        self.period = float(period)
        self.seed_offset = int(seed_offset)

    def _evaluate(self, grid, seed):
        steps = max(1, int(round(self.period / grid.dt)))
        block = np.arange(grid.n_steps) // steps
        rng = random_stream(seed, CONTROL_STREAM, self.seed_offset)
        levels = rng.uniform(self.sigma_lo, self.sigma_hi, block[-1] + 1)
        return levels[block]


CONTROLS = {
    'constant': ConstantControl,
    'bang_bang': BangBangControl,
    'piecewise_random': PiecewiseRandomControl,
    }

def build_control(kind, band, **params):
    """ Build a volatility control from its ``kind`` name
    """
    try:
        klass = CONTROLS[kind]
    except KeyError:
        raise ConfigurationError('unknown control kind %r (expected one of %s)'
                                 % (kind, ', '.join(sorted(CONTROLS))), 'kind')
    return klass(band, **params)


###############################################################################
### JUMP LAWS #################################################################
###############################################################################
class JumpLaw(object):
    """ Law of the jump sizes of a compound Poisson scenario. The measure
    lives on R minus {0}: no law may put mass on 0.
    """

    def sample(self, rng, size):
        raise NotImplementedError

    def quadrature(self):
        """ Return (points, weights) such that E[phi(z)] = sum(w * phi(p)),
        exactly for atoms, by Gauss-Legendre for densities.
        """
        raise NotImplementedError

    def expect(self, func):
        """ E[func(z)] under the law; ``func`` may return arrays """
        points, weights = self.quadrature()
        return sum(w * func(p) for p, w in zip(points, weights))

    def first_moment(self):
        return float(self.expect(abs))

    def second_moment(self):
        return float(self.expect(lambda z: z * z))


class AtomJumpLaw(JumpLaw):
    """ Discrete law: size ``values[k]`` with probability ``probs[k]``
    """
    kind = 'atoms'

    def __init__(self, values, probs=None):
        values = np.asarray(values, dtype=float)
        if values.ndim != 1 or not len(values):
            raise ConfigurationError('atom list must be a nonempty list',
                                     'levy.law.values')
        if probs is None:
            probs = np.full(len(values), 1. / len(values))
        probs = np.asarray(probs, dtype=float)
        if probs.shape != values.shape:
            raise ConfigurationError('values and probs lengths differ',
                                     'levy.law.probs')
        if (probs < 0).any() or not np.isclose(probs.sum(), 1.):
            raise ConfigurationError('probs must be non negative and sum to 1',
                                     'levy.law.probs')
        if (values == 0).any() or not np.isfinite(values).all():
            raise ConfigurationError('jump law has an atom at 0 (or a non finite '
                                     'atom)', 'levy.law.values')
        self.values = values
        self.probs = probs / probs.sum()

    def __repr__(self):
        return 'AtomJumpLaw(values=%r, probs=%r)' % (self.values.tolist(),
                                                     self.probs.tolist())

    def sample(self, rng, size):
        return rng.choice(self.values, size=size, p=self.probs)

    def quadrature(self):
        return self.values, self.probs


class UniformJumpLaw(JumpLaw):
    """ Uniform law on [low, high], an interval that does not contain 0
    """
    kind = 'uniform'
    nb_points = 16

    def __init__(self, low, high):
        low, high = float(low), float(high)
        if not low < high:
            raise ConfigurationError('uniform jump law needs low < high',
                                     'levy.law')
        if low <= 0 <= high:
            raise ConfigurationError('uniform jump interval [%s, %s] contains 0'
                                     % (low, high), 'levy.law')
        self.low = low
        self.high = high

    def __repr__(self):
        return 'UniformJumpLaw(low=%r, high=%r)' % (self.low, self.high)

    def sample(self, rng, size):
        return rng.uniform(self.low, self.high, size)

    def quadrature(self):
        points, weights = leggauss(self.nb_points)
        half = (self.high - self.low) / 2.
        return self.low + half * (points + 1.), weights / 2.


JUMP_LAWS = {'atoms': AtomJumpLaw, 'uniform': UniformJumpLaw}


###############################################################################
### LEVY SCENARIO AND FAMILY ##################################################
###############################################################################
class LevyScenario(object):
    """ Compound Poisson jump measure nu(dz) = intensity * law(dz)
    """

    def __init__(self, intensity=0., law=None, dim=1):
        intensity = float(intensity)
        if not (np.isfinite(intensity) and intensity >= 0):
            raise ConfigurationError('intensity must be non negative (got %s)'
                                     % intensity, 'levy.intensity')
        if dim != 1:
            raise ConfigurationError('only scalar drivers are supported', 'dim')
        self.intensity = intensity
        self.law = law if law is not None else AtomJumpLaw([1.])
        self.dim = dim

    def __repr__(self):
        return 'LevyScenario(intensity=%r, law=%r)' % (self.intensity, self.law)

    @property
    def alpha(self):
        """ First moment bound: E|x^d(t)| <= alpha * t """
        return self.intensity * self.law.first_moment()

    def nu_integral(self, func):
        """ Return the integral of ``func(z)`` against nu(dz) """
        if not self.intensity:
            return 0. * func(self.law.quadrature()[0][0])
        return self.intensity * self.law.expect(func)


class ScenarioFamily(object):
    """ Ordered, nonempty list of (VolatilityControl, LevyScenario) pairs.
    The supremum over the family stands for the sublinear expectation.
    """

    def __init__(self, scenarios):
        self.scenarios = [tuple(s) for s in scenarios]
        if not self.scenarios:
            raise ConfigurationError('a scenario family cannot be empty',
                                     'scenarios')

    def __len__(self):
        return len(self.scenarios)

    def __iter__(self):
        return iter(self.scenarios)

    def __getitem__(self, index):
        return self.scenarios[index]

    def __repr__(self):
        return 'ScenarioFamily(%r)' % (self.scenarios,)

    @classmethod
    def singleton(cls, sigma, intensity=0., law=None):
        """ One scenario with constant volatility ``sigma`` """
        return cls([(ConstantControl((sigma, sigma)),
                     LevyScenario(intensity, law))])

    @classmethod
    def from_sigmas(cls, sigmas, intensity=0., law=None):
        """ One constant volatility scenario per value in ``sigmas`` """
        return cls([(ConstantControl((s, s)), LevyScenario(intensity, law))
                    for s in sigmas])

    @property
    def sigma_bar(self):
        """ Upper edge of the volatility uncertainty """
        return max(control.sigma_hi for control, _ in self.scenarios)

    def generate(self, grid, scenario_index, path_index, seed_base):
        """ Generate path ``path_index`` of scenario ``scenario_index`` """
        control, levy = self.scenarios[scenario_index]
        seed = derive_seed(seed_base, scenario_index, path_index)
        return generate_path(grid, control, levy, seed, scenario=scenario_index)


###############################################################################
### DRIVING PATH ##############################################################
###############################################################################
class DrivingPath(object):
    """ One realized scenario of the driver: the continuous part B and its
    quadratic variation at the nodes, and the jump events.
    """

    def __init__(self, grid, B, qv, jump_times=(), jump_sizes=(),
                 seed=None, scenario=None):
        B = np.asarray(B, dtype=float)
        qv = np.asarray(qv, dtype=float)
        if B.shape != (len(grid),) or qv.shape != (len(grid),):
            raise UsageError('driver values must have n_steps + 1 entries')
        if B[0] != 0 or qv[0] != 0:
            raise UsageError('driver paths start at 0')
        jump_times = np.asarray(jump_times, dtype=float)
        jump_sizes = np.asarray(jump_sizes, dtype=float)
        if jump_times.shape != jump_sizes.shape:
            raise UsageError('jump times and sizes lengths differ')
        if len(jump_times):
            if jump_times[0] <= 0 or jump_times[-1] > grid.horizon:
                raise UsageError('jump times must lie in (0, T]')
            if (np.diff(jump_times) < 0).any():
                raise UsageError('jump times must be sorted')
            if (jump_sizes == 0).any():
                raise UsageError('jump sizes cannot be 0')
        self.grid = grid
        self.B = B
        self.qv = qv
        self.jump_times = jump_times
        self.jump_sizes = jump_sizes
        self.jump_nodes = grid.index_of(jump_times)
        self.seed = seed
        self.scenario = scenario

    def __repr__(self):
        return ('DrivingPath(scenario=%r, seed=%r, n_jumps=%d)'
                % (self.scenario, self.seed, self.n_jumps))

    @property
    def n_jumps(self):
        return len(self.jump_times)

    def jump_mass(self):
        """ Total absolute jump size """
        return float(np.abs(self.jump_sizes).sum())

    def per_node(self, values=None):
        """ Book per event ``values`` (default: the jump sizes) on the node
        of each event; returns an array of n_steps + 1 sums.
        """
        if values is None:
            values = self.jump_sizes
        return np.bincount(self.jump_nodes, weights=values,
                           minlength=len(self.grid)).astype(float)


###############################################################################
### GENERATION ################################################################
###############################################################################
def quadratic_variation(B):
    """ qv[k] = sum_{i<k} (B[i+1] - B[i])**2 """
    increments = np.diff(np.asarray(B, dtype=float))
    return np.concatenate(([0.], np.cumsum(increments * increments)))

def generate_brownian(grid, control, seed):
    """ Return (B, qv) with B[i+1] = B[i] + sigma(t_i) sqrt(dt) xi_i
    """
    rng = random_stream(seed, BROWNIAN_STREAM)
    xi = rng.standard_normal(grid.n_steps)
    sigma = control.evaluate(grid, seed)
    B = np.concatenate(([0.], np.cumsum(sigma * sqrt(grid.dt) * xi)))
    return B, quadratic_variation(B)

def generate_jumps(grid, levy, seed):
    """ Return (times, sizes) of a compound Poisson stream on (0, T]
    """
    rng = random_stream(seed, JUMP_STREAM)
    count = rng.poisson(levy.intensity * grid.horizon)
    # T - U with U uniform on [0, T) lies in (0, T]
    times = np.sort(grid.horizon - rng.uniform(0., grid.horizon, count))
    sizes = np.asarray(levy.law.sample(rng, count), dtype=float)
    return times, sizes

def generate_path(grid, control, levy, seed, scenario=None):
    """ Generate one DrivingPath, deterministic given ``seed``
    """
    B, qv = generate_brownian(grid, control, seed)
    times, sizes = generate_jumps(grid, levy, seed)
    return DrivingPath(grid, B, qv, times, sizes, seed=seed, scenario=scenario)
