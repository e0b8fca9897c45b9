"""Zeta-regularized determinants of cyclic covers."""

from ._core import *  # noqa: F401,F403
from ._core import ZetaCoverError, VoltageGraph

__all__ = [name for name in dir() if not name.startswith("_")]
