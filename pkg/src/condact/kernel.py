"""World-set kernel backend selection.

The compiled extension is preferred when importable; the pure big-int
backend is always available.  ``CONDACT_KERNEL=pure`` or ``=compiled``
forces a backend at import time, and :func:`set_backend` switches at
runtime (used by the benchmark and the parity tests).
"""

from __future__ import annotations

import os

from . import _bitset

try:
    from . import _kernel
except ImportError:
    _kernel = None

_BACKENDS = {"pure": _bitset}
if _kernel is not None:
    _BACKENDS["compiled"] = _kernel


def _initial():
    forced = os.environ.get("CONDACT_KERNEL")
    if forced:
        if forced not in _BACKENDS:
            raise ImportError(
                f"CONDACT_KERNEL={forced!r} but available backends are {sorted(_BACKENDS)}"
            )
        return _BACKENDS[forced]
    return _BACKENDS.get("compiled", _bitset)


_active = _initial()


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_BACKENDS))


def active_backend() -> str:
    return _active.BACKEND


def set_backend(name: str) -> None:
    global _active
    if name not in _BACKENDS:
        raise ValueError(f"unknown backend {name!r}; available: {sorted(_BACKENDS)}")
    _active = _BACKENDS[name]


def model_bitset(program, n_atoms: int) -> int:
    """Model set of a postfix formula program, one bit per world index."""
    return _active.model_bitset(program, n_atoms)
