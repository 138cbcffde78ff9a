"""Selects the reduction kernel: compiled extension or pure Python.

Set MTORIC_PURE=1 in the environment to force the pure kernel; tests and
the benchmark switch explicitly via use_kernel().
"""

from __future__ import annotations

import os
from contextlib import contextmanager

from matoric import _pykernel

try:
    from matoric import _speedups
except ImportError:  # extension not built
    _speedups = None

if os.environ.get("MTORIC_PURE"):
    _ACTIVE = _pykernel
else:
    _ACTIVE = _speedups if _speedups is not None else _pykernel

# the compiled index caps the variable count (support words)
C_KERNEL_MAX_VARS = 256


def active(nvars: int | None = None):
    """The kernel module to use; large universes fall back to pure Python."""
    if nvars is not None and nvars > C_KERNEL_MAX_VARS:
        return _pykernel
    return _ACTIVE


def available() -> dict[str, object]:
    out = {"python": _pykernel}
    if _speedups is not None:
        out["c"] = _speedups
    return out


def using_speedups() -> bool:
    return _ACTIVE is not None and _ACTIVE.IMPLEMENTATION == "c"


@contextmanager
def use_kernel(name: str):
    """Temporarily force a kernel ('python' or 'c')."""
    global _ACTIVE
    mods = available()
    if name not in mods:
        raise ValueError(f"kernel {name!r} not available (have {sorted(mods)})")
    prev = _ACTIVE
    _ACTIVE = mods[name]
    try:
        yield mods[name]
    finally:
        _ACTIVE = prev
