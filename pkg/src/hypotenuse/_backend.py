"""Kernel backend selection.

The compiled extension is used when it imports; ``HYPOTENUSE_BACKEND``
(``compiled`` or ``python``) forces a choice. Tests and benchmarks switch
backends at runtime with :func:`using`.
"""
import contextlib
import os

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

_BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    _BACKENDS["compiled"] = _ckernels


def available():
    return sorted(_BACKENDS)


def _resolve(name):
    if name in (None, "", "auto"):
        return _ckernels if _ckernels is not None else _pykernels
    try:
        return _BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} not available; have {available()}") from None


_active = _resolve(os.environ.get("HYPOTENUSE_BACKEND"))


def kernels():
    """Return the active kernel module."""
    return _active


def set_backend(name):
    global _active
    _active = _resolve(name)
    return _active.NAME


@contextlib.contextmanager
def using(name):
    global _active
    previous = _active
    _active = _resolve(name)
    try:
        yield _active
    finally:
        _active = previous
