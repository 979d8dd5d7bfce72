# pylint: disable-msg=W0622
# copyright 2026 LOGILAB S.A. (Paris, FRANCE), all rights reserved.
# contact http://www.logilab.fr/ -- mailto:contact@logilab.fr
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
"""gsfde packaging information."""
__docformat__ = "restructuredtext en"

distname = 'gsfde'
modname = 'gsfde'

numversion = (0, 1, 0)
version = '.'.join([str(num) for num in numversion])

license = 'LGPL' # 2.1 or later
description = ("Numerical laboratory for stochastic functional differential "
               "equations under volatility and jump uncertainty")
web = "https://www.logilab.org/project/gsfde"
author = "Logilab"
author_email = "contact@logilab.fr"

classifiers = [
    'Programming Language :: Python',
    'Programming Language :: Python :: 3',
    'Topic :: Scientific/Engineering :: Mathematics',
    'Topic :: Software Development :: Libraries :: Python Modules',
]

__depends__ = {
    'numpy': '>= 1.17',
    'scipy': None,
}

__recommends__ = {}

entry_points = {
    'console_scripts': ['gsfde = gsfde.cli:main'],
}

package_data = {'gsfde.data': ['*.json']}

python_requires = '>= 3.6'
