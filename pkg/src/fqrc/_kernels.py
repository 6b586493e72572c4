"""Kernel backend selection.

The compiled extension is used when it imports; otherwise the numpy
fallback. Set ``FQRC_PURE_PYTHON=1`` to force the fallback.
"""

import os

from fqrc import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("FQRC_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from fqrc import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _pykernels

bin_counts = _impl.bin_counts
memberships = _impl.memberships
class_products = _impl.class_products


def get_backend(name=None):
    """Return the kernel module for ``name`` ("cython" / "python"), or the active one."""
    if name is None:
        return _impl
    if name == "python":
        return _pykernels
    if name == "cython":
        from fqrc import _ckernels

        return _ckernels
    raise ValueError(f"unknown kernel backend {name!r}")
