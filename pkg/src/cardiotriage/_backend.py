"""Select the compiled kernels when built, else the pure-Python ones.

Set ``CARDIOTRIAGE_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _purepy

try:
    if os.environ.get("CARDIOTRIAGE_PURE_PYTHON"):
        raise ImportError("pure-python backend forced")
    from . import _kernels as kernels
    BACKEND = "cython"
except ImportError:
    kernels = _purepy
    BACKEND = "python"

pairwise_sq = kernels.pairwise_sq
scan_partitions = kernels.scan_partitions

__all__ = ["BACKEND", "kernels", "pairwise_sq", "scan_partitions"]
