"""Backend selection for the hot kernels.

The compiled extension is preferred; setting ``TRIPLEXP_BACKEND=numpy``
forces the NumPy fallback (useful for testing that path).
"""
import importlib
import logging
import os

log = logging.getLogger(__name__)

BACKENDS = ("cython", "numpy")
_MODULES = {"cython": "triplexp._ckernels", "numpy": "triplexp._pykernels"}


def load(name):
    """Import one backend by name; raises ImportError if unavailable."""
    if name not in _MODULES:
        raise ValueError(f"unknown backend {name!r}; expected one of {BACKENDS}")
    return importlib.import_module(_MODULES[name])


def available():
    out = []
    for name in BACKENDS:
        try:
            load(name)
        except ImportError:
            continue
        out.append(name)
    return out


def _select():
    wanted = os.environ.get("TRIPLEXP_BACKEND", "").strip().lower()
    if wanted:
        return load(wanted)
    try:
        return load("cython")
    except ImportError:
        log.info("compiled kernels unavailable, using numpy fallback")
        return load("numpy")


_impl = _select()
BACKEND = _impl.NAME

energy_naive = _impl.energy_naive
energy_fast = _impl.energy_fast
triple_direct = _impl.triple_direct
bilinear = _impl.bilinear
