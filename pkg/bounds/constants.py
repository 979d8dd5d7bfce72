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
""" Constants of the moment bounds and closed form right hand sides.

Notations: c1 (growth) and c2 (Lipschitz) are the declared coefficient
constants, k1, k2, k3 the constants of the moment inequalities for the
d<B>, dB and jump integrals, T the horizon and z = E||zeta||^2.

    k_hat = (1 + k1) T + k2 + k3
    M     = 4 c2 (T + T k1 + k2 + k3)
    C     = 4 c (T + T k1 + k2 + k3) (1 + z) T     with c = c2, c1, max(c1, c2)
"""
from collections import namedtuple
from math import exp, log

from scipy.special import gammaln, xlogy

from gsfde.utils.errors import UsageError


BoundConstants = namedtuple('BoundConstants',
                            'c1 c2 k1 k2 k3 horizon zeta_norm_sq '
                            'k_hat M C_theorem C_proof C_safe')


def default_bdg_constants(sigma_bar=1.):
    """ Default (k1, k2, k3) for a volatility band bounded by ``sigma_bar``:
    Cauchy-Schwarz against d<B> <= sigma_bar^2 dt for k1, Doob for k2, and a
    conservative compound Poisson value for k3.
    """
    return sigma_bar ** 4, 4. * sigma_bar ** 2, 8.

def compute_constants(c1, c2, k1, k2, k3, horizon, zeta_norm_sq):
    """ Assemble the BoundConstants """
    for name, value in (('c1', c1), ('c2', c2), ('k1', k1), ('k2', k2),
                        ('k3', k3), ('zeta_norm_sq', zeta_norm_sq)):
        if not value >= 0:
            raise UsageError('%s must be non negative (got %s)' % (name, value))
    if not horizon > 0:
        raise UsageError('horizon must be positive (got %s)' % horizon)
    c1, c2, k1, k2, k3 = [float(v) for v in (c1, c2, k1, k2, k3)]
    T, z = float(horizon), float(zeta_norm_sq)
    k_hat = (1. + k1) * T + k2 + k3
    base = T + T * k1 + k2 + k3
    return BoundConstants(c1, c2, k1, k2, k3, T, z, k_hat,
                          4. * c2 * base,
                          4. * c2 * base * (1. + z) * T,
                          4. * c1 * base * (1. + z) * T,
                          4. * max(c1, c2) * base * (1. + z) * T)

def with_horizon(constants, horizon):
    """ Same constants for another horizon """
    c = constants
    return compute_constants(c.c1, c.c2, c.k1, c.k2, c.k3, horizon,
                             c.zeta_norm_sq)


###############################################################################
### RIGHT HAND SIDES ##########################################################
###############################################################################
def boundedness_rhs(constants):
    """ 5 [(1 + c1 k T) z + c1 k T] exp(5 c1 k T), the Gronwall consequence
    for E sup_{0<=s<=T} |x(s)|^2
    """
    c = constants
    ckt = c.c1 * c.k_hat * c.horizon
    return 5. * ((1. + ckt) * c.zeta_norm_sq + ckt) * exp(5. * ckt)

def boundedness_statement_rhs(constants):
    """ z + 5 (1 + c1 k T) exp(5 c1 k T), the bound as stated for the sup
    over (-inf, T]
    """
    c = constants
    ckt = c.c1 * c.k_hat * c.horizon
    return c.zeta_norm_sq + 5. * (1. + ckt) * exp(5. * ckt)

def boundedness_extended_rhs(constants):
    """ z + boundedness_rhs, for the sup over (-inf, T] """
    return constants.zeta_norm_sq + boundedness_rhs(constants)

def picard_envelope(constants, n, t=None):
    """ C_safe (M t)^n / n! """
    c = constants
    t = c.horizon if t is None else t
    if not c.C_safe:
        return 0.
    return c.C_safe * exp(xlogy(n, c.M * t) - gammaln(n + 1))

def error_envelope(constants, n):
    """ C_safe (M T)^n / n! exp(M T), bound of E sup |x^n - x|^2 """
    c = constants
    return picard_envelope(c, n) * exp(c.M * c.horizon)

def picard_capacity_rhs(constants, n):
    """ 2^n C_safe (M T)^n / n!, bound of nu(sup |x^{n+1} - x^n|^2 > 2^-n) """
    if not constants.C_safe:
        return 0.
    return exp(n * log(2.)) * picard_envelope(constants, n)

def exponential_rate(constants):
    """ 5/2 c1 k, bound of limsup (1/t) log |x(t)| """
    return 2.5 * constants.c1 * constants.k_hat

def window_threshold(constants, m, epsilon):
    """ exp((5 c1 k + epsilon) m); inf when out of range """
    try:
        return exp((5. * constants.c1 * constants.k_hat + epsilon) * m)
    except OverflowError:
        return float('inf')

def window_capacity_rhs(constants, m, epsilon):
    """ 5 [(1 + c1 k T) z + c1 k T] exp(-epsilon m), bound of the capacity
    of {sup_{m-1<=t<=m} |x(t)|^2 > window_threshold}
    """
    c = constants
    ckt = c.c1 * c.k_hat * c.horizon
    return 5. * ((1. + ckt) * c.zeta_norm_sq + ckt) * exp(-epsilon * m)
