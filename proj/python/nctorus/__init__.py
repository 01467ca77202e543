"""Twisted Fourier algebra on the noncommutative torus.

Energies, minimizing flows, and bound verification; thin bindings over the
C++ core.
"""

from ._nctorus import *  # noqa: F401,F403
from ._nctorus import __version__  # noqa: F401
