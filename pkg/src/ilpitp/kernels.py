"""Kernel backend selection.

The compiled Cython kernels are used when the extension imports; otherwise
the pure-Python twins are. Either backend can be requested by name, which is
how the tests cross-check them and how the benchmark compares them.
"""
from __future__ import annotations

from types import ModuleType

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKENDS = ("compiled", "python")
DEFAULT = "compiled" if _ckernels is not None else "python"


def available() -> list[str]:
    return [name for name in BACKENDS if name == "python" or _ckernels is not None]


def get(name: str | None = None) -> ModuleType:
    """Return the kernel module for ``name`` (default: best available)."""
    name = name or DEFAULT
    if name == "python":
        return _pykernels
    if name == "compiled":
        if _ckernels is None:
            raise RuntimeError("compiled kernels are not built; reinstall with Cython available")
        return _ckernels
    raise ValueError(f"unknown kernel backend {name!r}; choose from {BACKENDS}")
