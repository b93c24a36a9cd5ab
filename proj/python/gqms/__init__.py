"""Spectra of one-mode Gaussian quantum Markov semigroups."""

from . import _core
from ._core import *  # noqa: F401,F403

__all__ = [name for name in dir(_core) if not name.startswith("_")]
