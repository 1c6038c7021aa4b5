"""Relativistic pre-collapse simulator (Python bindings)."""

from ._core import *  # noqa: F401,F403
from ._core import __version__, c  # noqa: F401
