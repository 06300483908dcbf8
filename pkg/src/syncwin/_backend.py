"""Select the compiled kernels when importable, else the pure-Python ones.

Set ``SYNCWIN_PURE=1`` to force the fallback.
"""
import os

if os.environ.get("SYNCWIN_PURE", "") not in ("", "0"):
    from syncwin import _pure as kernels
    COMPILED = False
else:
    try:
        from syncwin import _kernels as kernels
        COMPILED = True
    except ImportError:
        from syncwin import _pure as kernels
        COMPILED = False

__all__ = ["kernels", "COMPILED"]
