"""Autoresonance capture and arrest in two coupled weakly nonlinear oscillators."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401

__version__ = "0.1.0"
