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
""" Coefficient library.

A Coefficients object provides f (``drift``), g (``qv_coefficient``),
h (``diffusion``) and K (``jump``), together with the growth constant c1
and the Lipschitz constant c2 its author declares. Coefficients read the
segment through ``seg.at(lag)`` only, so they accept a single Segment as
well as a SegmentBatch (one value per node).
"""
import re
from collections import namedtuple

import numpy as np

from gsfde.utils.errors import ConfigurationError
from gsfde.utils.timegrid import random_stream
from gsfde.sfde.model import Segment


AUDIT_STREAM = 3

AuditReport = namedtuple('AuditReport', 'name worst constant holds n_probes')


###############################################################################
### BASE COEFFICIENTS #########################################################
###############################################################################
class Coefficients(object):
    """ Zero coefficients; concrete models override what they need.

    Parameters
    ----------

    c1: declared growth constant,
        |f|^2 v |g|^2 v |h|^2 v int |K|^2 nu(dz) <= c1 (1 + ||x||^2)

    c2: declared Lipschitz constant, same with squared differences and
        c2 ||y - x||^2 on the right

    If a constant is not given, the one derived from the parameters
    (``natural_constants``) is used.
    """
    name = 'zero'
    lags = (0.,)

    def __init__(self, c1=None, c2=None):
        natural = self.natural_constants()
        self.c1 = natural[0] if c1 is None else float(c1)
        self.c2 = natural[1] if c2 is None else float(c2)
        if not (self.c1 >= 0 and self.c2 >= 0):
            raise ConfigurationError('declared constants must be non negative',
                                     'model.c1' if not self.c1 >= 0 else 'model.c2')

    def __repr__(self):
        return '%s(c1=%r, c2=%r)' % (self.__class__.__name__, self.c1, self.c2)

    def natural_constants(self, family=None):
        """ (c1, c2) implied by the parameters """
        return 0., 0.

    def drift(self, t, seg):
        return 0. * seg.at(0.)

    def qv_coefficient(self, t, seg):
        return 0. * seg.at(0.)

    def diffusion(self, t, seg):
        return 0. * seg.at(0.)

    def jump(self, t, seg, z):
        return 0. * seg.at(0.) * z

    def nu_square(self, t, seg, levy):
        """ int |K(t, seg, z)|^2 nu(dz) """
        return levy.nu_integral(lambda z: self.jump(t, seg, z) ** 2)

    @property
    def max_lag(self):
        return max(self.lags)

    ### audits ################################################################
    def _probes(self, grid, window, n_probes, seed):
        rng = random_stream(seed, AUDIT_STREAM)
        scales = rng.exponential(2., n_probes)
        for scale in scales:
            values = scale * rng.standard_normal(window + 1)
            yield rng.choice(grid.nodes), Segment(values, grid.dt)

    def audit_growth(self, grid, window, family, n_probes=200, seed=0):
        """ Sample the growth condition on random probe segments.

        Returns an AuditReport whose ``worst`` is the largest sampled ratio
        (|f|^2 v |g|^2 v |h|^2 v int |K|^2 nu(dz)) / (1 + ||x||^2).
        """
        worst = 0.
        for t, seg in self._probes(grid, window, n_probes, seed):
            lhs = max(self.drift(t, seg) ** 2, self.qv_coefficient(t, seg) ** 2,
                      self.diffusion(t, seg) ** 2,
                      max(self.nu_square(t, seg, levy) for _, levy in family))
            worst = max(worst, float(lhs) / (1. + seg.norm() ** 2))
        return AuditReport('growth', worst, self.c1,
                           worst <= self.c1 * (1. + 1e-9), n_probes)

    def audit_lipschitz(self, grid, window, family, n_probes=200, seed=0):
        """ Sample the Lipschitz condition on random pairs of probe segments.

        Returns an AuditReport whose ``worst`` is the largest sampled ratio
        of the squared coefficient differences to ||y - x||^2.
        """
        worst = 0.
        probes = list(self._probes(grid, window, 2 * n_probes, seed))
        for (t, x), (_, y) in zip(probes[::2], probes[1::2]):
            distance = Segment(y.values - x.values, grid.dt).norm() ** 2
            if not distance:
                continue
            diffs = [(self.drift(t, y) - self.drift(t, x)) ** 2,
                     (self.qv_coefficient(t, y) - self.qv_coefficient(t, x)) ** 2,
                     (self.diffusion(t, y) - self.diffusion(t, x)) ** 2]
            for _, levy in family:
                diffs.append(levy.nu_integral(
                    lambda z: (self.jump(t, y, z) - self.jump(t, x, z)) ** 2))
            worst = max(worst, float(max(diffs)) / distance)
        return AuditReport('lipschitz', worst, self.c2,
                           worst <= self.c2 * (1. + 1e-9), n_probes)


ZeroCoefficients = Coefficients


###############################################################################
### CONCRETE COEFFICIENTS #####################################################
###############################################################################
class LinearDriftCoefficients(Coefficients):
    """ f(t, psi) = a psi(0) """
    name = 'linear_drift'

    def __init__(self, a, c1=None, c2=None):
        self.a = float(a)
        super(LinearDriftCoefficients, self).__init__(c1, c2)

    def __repr__(self):
        return 'LinearDriftCoefficients(a=%r, c1=%r, c2=%r)' % (self.a, self.c1,
                                                               self.c2)

    def natural_constants(self, family=None):
        return self.a ** 2, self.a ** 2

    def drift(self, t, seg):
        return self.a * seg.at(0.)


class GBMCoefficients(Coefficients):
    """ f(t, psi) = mu psi(0), h(t, psi) = sigma_coef psi(0) """
    name = 'gbm'

    def __init__(self, mu, sigma_coef, c1=None, c2=None):
        self.mu = float(mu)
        self.sigma_coef = float(sigma_coef)
        super(GBMCoefficients, self).__init__(c1, c2)

    def __repr__(self):
        return 'GBMCoefficients(mu=%r, sigma_coef=%r, c1=%r, c2=%r)' % (
            self.mu, self.sigma_coef, self.c1, self.c2)

    def natural_constants(self, family=None):
        c = max(self.mu ** 2, self.sigma_coef ** 2)
        return c, c

    def drift(self, t, seg):
        return self.mu * seg.at(0.)

    def diffusion(self, t, seg):
        return self.sigma_coef * seg.at(0.)


class DelayedLinearCoefficients(Coefficients):
    """ f(t, psi) = a psi(0) + b psi(-lag) """
    name = 'delayed_linear'

    def __init__(self, a, b, lag, c1=None, c2=None):
        self.a = float(a)
        self.b = float(b)
        self.lag = float(lag)
        if not self.lag >= 0:
            raise ConfigurationError('lag must be non negative', 'model.params')
        self.lags = (0., self.lag)
        super(DelayedLinearCoefficients, self).__init__(c1, c2)

    def __repr__(self):
        return 'DelayedLinearCoefficients(a=%r, b=%r, lag=%r, c1=%r, c2=%r)' % (
            self.a, self.b, self.lag, self.c1, self.c2)

    def natural_constants(self, family=None):
        c = (abs(self.a) + abs(self.b)) ** 2
        return c, c

    def drift(self, t, seg):
        return self.a * seg.at(0.) + self.b * seg.at(self.lag)


class JumpLinearCoefficients(Coefficients):
    """ K(t, psi, z) = c psi(0) z """
    name = 'jump_linear'

    def __init__(self, c, c1=None, c2=None):
        self.c = float(c)
        super(JumpLinearCoefficients, self).__init__(c1, c2)

    def __repr__(self):
        return 'JumpLinearCoefficients(c=%r, c1=%r, c2=%r)' % (self.c, self.c1,
                                                              self.c2)

    def natural_constants(self, family=None):
        if family is None:
            return 0., 0.
        second = max(levy.nu_integral(lambda z: z * z) for _, levy in family)
        return self.c ** 2 * second, self.c ** 2 * second

    def jump(self, t, seg, z):
        return self.c * seg.at(0.) * z


COEFFICIENTS = dict((klass.name, klass) for klass in (
    ZeroCoefficients, LinearDriftCoefficients, GBMCoefficients,
    DelayedLinearCoefficients, JumpLinearCoefficients))


###############################################################################
### BUILDING FROM CONFIGURATION ###############################################
###############################################################################
_CALL_RGX = re.compile(r'^\s*(?P<name>\w+)\s*(?:\((?P<args>[^()]*)\))?\s*$')

def parse_model_name(spec):
    """ Split ``"delayed_linear(0.5, 0.2, 0.1)"`` into
    ('delayed_linear', [0.5, 0.2, 0.1]); a bare name has no arguments.
    """
    match = _CALL_RGX.match(spec)
    if match is None:
        raise ConfigurationError('cannot parse model name %r' % spec, 'model.name')
    args = match.group('args')
    try:
        args = [float(a) for a in args.split(',') if a.strip()] if args else []
    except ValueError:
        raise ConfigurationError('model arguments must be numbers (%r)' % spec,
                                 'model.name')
    return match.group('name'), args

def build_coefficients(spec, params=None, c1=None, c2=None):
    """ Build coefficients from a library name, positional arguments in the
    name and/or keyword ``params``.
    """
    name, args = parse_model_name(spec)
    try:
        klass = COEFFICIENTS[name]
    except KeyError:
        raise ConfigurationError('unknown model %r (expected one of %s)'
                                 % (name, ', '.join(sorted(COEFFICIENTS))),
                                 'model.name')
    try:
        return klass(*args, c1=c1, c2=c2, **(params or {}))
    except TypeError as err:
        raise ConfigurationError('invalid parameters for %s: %s' % (name, err),
                                 'model.params')
