"""
Topology and edge-mode entanglement of multi-leg SSH ladders.

The model and its chiral symmetries live in :mod:`sshladder.model`, winding
numbers in :mod:`sshladder.topology`, free-fermion states in
:mod:`sshladder.gaussian`, and the number-resolved edge entanglement and
Bell tests in :mod:`sshladder.entanglement` and :mod:`sshladder.bell`.
:mod:`sshladder.fock` is a brute-force many-body reference for small systems.
"""

__version__ = "0.1.0"

from .bell import *  # noqa: F401,F403
from .entanglement import *  # noqa: F401,F403
from .errors import *  # noqa: F401,F403
from .gaussian import *  # noqa: F401,F403
from .maps import *  # noqa: F401,F403
from .model import *  # noqa: F401,F403
from .sweep import *  # noqa: F401,F403
from .topology import *  # noqa: F401,F403
