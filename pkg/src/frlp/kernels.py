"""Kernel selection: the compiled module when it imports, numpy otherwise.

Set ``FRLP_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _fallback

BACKEND = "python"
_impl = _fallback
if not os.environ.get("FRLP_PURE_PYTHON"):
    try:
        from . import _kernels as _impl  # noqa: F811

        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on the build
        _impl = _fallback

block_means = _impl.block_means
block_oscillation = _impl.block_oscillation
haar_analysis = _impl.haar_analysis
haar_synthesis = _impl.haar_synthesis

__all__ = ["BACKEND", "block_means", "block_oscillation", "haar_analysis", "haar_synthesis"]
