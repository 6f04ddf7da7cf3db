"""Keyhole-model separate channel estimation for RIS-assisted MIMO links."""

from ._core import *  # noqa: F401,F403
from ._core import ArgumentError, FeasibilityError  # noqa: F401

__version__ = "0.1.0"
