"""Vibrational-Hamiltonian quantum resource estimation."""

from vibrest._core import *  # noqa: F401,F403
from vibrest._core import __doc__  # noqa: F401

__version__ = "0.1.0"
