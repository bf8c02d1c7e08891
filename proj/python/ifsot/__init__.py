"""Python bindings for ifsot."""

from ._ifsot import *  # noqa: F401,F403
from ._ifsot import __version__  # noqa: F401
