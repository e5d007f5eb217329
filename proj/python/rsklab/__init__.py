"""Simulation and exact computation for Schensted insertion growth processes.

The heavy lifting lives in the compiled extension; this package re-exports it.
"""

from rsklab._core import *  # noqa: F401,F403
from rsklab._core import __version__  # noqa: F401
