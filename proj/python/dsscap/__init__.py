"""Capacity and secrecy bounds for heterogeneous distributed storage systems.

All quantities are exact `fractions.Fraction` values; node indices are the
1-based identifiers used in config files.
"""

from ._dsscap import *  # noqa: F401,F403
from ._dsscap import __version__  # noqa: F401
