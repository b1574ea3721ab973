"""Kernel backend selection.

The compiled extension (``convexdist._core``) is preferred when it imported
cleanly; the pure-Python twin is the fallback. ``CONVEXDIST_BACKEND=pure``
or ``=compiled`` in the environment forces the choice (the latter raises if
the extension is missing).
"""

from __future__ import annotations

import os

from . import _purecore

try:
    from . import _core  # type: ignore[attr-defined]
except ImportError:
    _core = None


def _select():
    forced = os.environ.get("CONVEXDIST_BACKEND", "").strip().lower()
    if forced == "pure":
        return _purecore
    if forced == "compiled":
        if _core is None:
            raise ImportError(
                "CONVEXDIST_BACKEND=compiled but convexdist._core is not built; "
                "reinstall with a working C toolchain or unset the variable"
            )
        return _core
    if forced:
        raise ValueError(f"unknown CONVEXDIST_BACKEND value: {forced!r}")
    return _core if _core is not None else _purecore


impl = _select()


def backend_name() -> str:
    """Name of the active kernel backend: 'compiled' or 'pure'."""
    return "compiled" if impl is not _purecore else "pure"
