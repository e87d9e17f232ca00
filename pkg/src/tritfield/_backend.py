"""Kernel backend selection.

The compiled extension is preferred when it is built; otherwise the
pure-Python kernels are used.  Set ``TRITFIELD_BACKEND=python`` to force the
fallback (e.g. for benchmarking) or ``TRITFIELD_BACKEND=compiled`` to fail
loudly when the extension is missing.
"""

import os

from . import _kernels_py


def load_backend(name):
    """Return the kernel module for an explicit backend name."""
    if name == "python":
        return _kernels_py
    if name == "compiled":
        from . import _kernels

        return _kernels
    raise ValueError(f"unknown backend {name!r}")


def _select():
    forced = os.environ.get("TRITFIELD_BACKEND", "").strip().lower()
    if forced in ("python", "py"):
        return _kernels_py
    if forced in ("compiled", "c"):
        return load_backend("compiled")
    if forced not in ("", "auto"):
        raise ValueError(f"unknown TRITFIELD_BACKEND {forced!r}")
    try:
        return load_backend("compiled")
    except ImportError:
        return _kernels_py


kernels = _select()


def backend_name():
    return kernels.backend_name


def available_backends():
    names = ["python"]
    try:
        load_backend("compiled")
    except ImportError:
        pass
    else:
        names.insert(0, "compiled")
    return names
