# SPDX-License-Identifier: Apache-2.0
"""Descent solver for set optimization problems with smooth selections.

The heavy lifting lives in the C++ extension module ``_setopt``; this
package re-exports its public names.
"""

try:  # packaged layout: extension lives inside the package
    from setopt._setopt import *  # noqa: F401,F403
except ImportError:  # build-tree layout: extension on sys.path
    from _setopt import *  # noqa: F401,F403
