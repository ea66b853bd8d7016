"""Backend selection for the lattice-box kernels.

The compiled extension is used when it was built; otherwise the numpy
implementation.  Call :func:`use_backend` to force one.
"""

from __future__ import annotations

from types import ModuleType

from . import _pykernels

try:
    from . import _ckernels  # type: ignore[attr-defined]
except ImportError:  # extension not built
    _ckernels = None

__all__ = ["available_backends", "backend_name", "use_backend", "scan_epsilon", "prune_box"]

_active: ModuleType = _ckernels if _ckernels is not None else _pykernels


def available_backends() -> list[str]:
    return (["cython"] if _ckernels is not None else []) + ["numpy"]


def backend_name() -> str:
    return "cython" if _active is _ckernels and _ckernels is not None else "numpy"


def use_backend(name: str) -> str:
    """Select "cython", "numpy" or "auto"; returns the previous backend name."""
    global _active
    prev = backend_name()
    if name == "auto":
        _active = _ckernels if _ckernels is not None else _pykernels
    elif name == "numpy":
        _active = _pykernels
    elif name == "cython":
        if _ckernels is None:
            raise RuntimeError("compiled kernels are not built")
        _active = _ckernels
    else:
        raise ValueError(f"unknown backend {name!r}")
    return prev


def scan_epsilon(*args, **kwargs):
    return _active.scan_epsilon(*args, **kwargs)


def prune_box(*args, **kwargs):
    return _active.prune_box(*args, **kwargs)
