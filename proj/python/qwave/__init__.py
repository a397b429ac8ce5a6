"""Quaternionic wavelet frames on periodic sampling boxes."""

import os
import sys

try:
    from ._qwave import *  # noqa: F401,F403  (installed layout)
    from . import _qwave as _core
except ImportError:
    _dir = os.environ.get("QWAVE_MODULE_DIR")
    if not _dir:
        raise
    if _dir not in sys.path:
        sys.path.insert(0, _dir)
    from _qwave import *  # noqa: F401,F403  (build-tree layout)
    import _qwave as _core

__all__ = [n for n in dir(_core) if not n.startswith("_")]
__version__ = "0.1.0"
