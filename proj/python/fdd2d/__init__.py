"""Transmission policies for two full-duplex D2D pairs."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
