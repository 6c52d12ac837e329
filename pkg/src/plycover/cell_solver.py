"""Flat import path for the per-cell solvers in :mod:`plycover.cell`."""

from .cell import *  # noqa: F401,F403
from .cell import __all__  # noqa: F401
