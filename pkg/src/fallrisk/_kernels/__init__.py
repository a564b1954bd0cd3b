"""Kernel backend selection.

The compiled extension is preferred when importable; set
FALLRISK_PURE_PYTHON=1 to force the numpy fallback.  Both backends share
the contract documented in _pure.py.
"""

from __future__ import annotations

import os


def load_backend(name: str):
    if name == "pure":
        from . import _pure
        return _pure
    if name == "native":
        from . import _native
        return _native
    raise ValueError(f"unknown kernel backend {name!r}")


def _select():
    if os.environ.get("FALLRISK_PURE_PYTHON", "").strip().lower() in ("1", "true", "yes"):
        return load_backend("pure")
    try:
        return load_backend("native")
    except ImportError:
        return load_backend("pure")


backend = _select()
BACKEND_NAME = backend.NAME
