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
""" Exceptions raised by gsfde.

Each exception class carries the exit code the command line runner
returns when it is not caught earlier.
"""


class Error(Exception):
    """ Base class of all gsfde errors """
    exit_code = 1


class ConfigurationError(Error, ValueError):
    """ Invalid experiment configuration (or invalid scenario parameters).

    ``key`` is the path of the offending configuration key, such as
    ``scenarios[0].band``, when it is known.
    """
    exit_code = 2

    def __init__(self, message, key=None):
        self.reason = message
        if key:
            message = '%s: %s' % (key, message)
        super(ConfigurationError, self).__init__(message)
        self.key = key


class UsageError(Error, ValueError):
    """ A function was called outside of its contract """
    exit_code = 2


class EvaluationError(Error):
    """ A path functional returned a non finite value """
    exit_code = 3

    def __init__(self, message, scenario=None, path=None):
        if scenario is not None:
            message = '%s (scenario %s, path %s)' % (message, scenario, path)
        super(EvaluationError, self).__init__(message)
        self.scenario = scenario
        self.path = path


class DivergenceError(Error):
    """ The numerical state of a solve became non finite.

    ``partial``, when given, is the solution computed so far: finite before
    ``node``, NaN from ``node`` on.
    """
    exit_code = 3

    def __init__(self, message, node=None, partial=None):
        if node is not None:
            message = '%s at node %s' % (message, node)
        super(DivergenceError, self).__init__(message)
        self.node = node
        self.partial = partial
