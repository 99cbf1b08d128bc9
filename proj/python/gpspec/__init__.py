"""Spectrum of the mode equations for heat flow with memory."""

from ._gpspec import *  # noqa: F401,F403
from ._gpspec import __doc__  # noqa: F401

__version__ = "0.1.0"
