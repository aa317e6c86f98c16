"""Collective spontaneous emission of small two-level-atom arrays.

Thin package wrapper around the compiled extension; everything public lives
in ``coopem._coopem``.
"""

from ._coopem import *  # noqa: F401,F403
from ._coopem import __version__  # noqa: F401
