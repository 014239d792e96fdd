"""Persistence diagrams, Haar texture masks and topological losses on grayscale images.

Images are 2-D float arrays with values in [0, 1].
"""

from ._topowave import *  # noqa: F401,F403
from ._topowave import TopowaveError

__version__ = "0.1.0"
