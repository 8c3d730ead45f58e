"""Selects the compute backend (numba JIT kernels or pure numpy).

The backend is chosen once at import from the ``YULESIMON_BACKEND``
environment variable:

* ``auto`` (default) -- numba if it imports, else numpy with a warning;
* ``numba`` -- require the JIT kernels, fail if numba is unavailable;
* ``numpy`` -- force the vectorized pure-numpy kernels.

``set_backend`` switches at runtime (mainly for tests and benchmarks).
Within one backend every stream is bit-reproducible; across backends the
integer stream layer is identical but float variates may differ in the
last ulp, so cross-backend agreement is statistical, not bitwise.
"""

import os
import warnings

_VALID = ("auto", "numba", "numpy")

_module = None
_name = None


def _import_backend(name):
    if name == "numpy":
        from . import _kernels_numpy
        return _kernels_numpy, "numpy"
    from . import _kernels_numba
    return _kernels_numba, "numba"


def set_backend(name):
    """Activate a backend by name ('auto', 'numba' or 'numpy')."""
    global _module, _name
    if name not in _VALID:
        raise ValueError(
            f"unknown backend {name!r}; expected one of {_VALID}")
    if name == "auto":
        try:
            _module, _name = _import_backend("numba")
        except ImportError:
            warnings.warn("numba unavailable; falling back to numpy kernels",
                          RuntimeWarning, stacklevel=2)
            _module, _name = _import_backend("numpy")
    else:
        _module, _name = _import_backend(name)
    return _name


def backend_name():
    """Name of the active backend ('numba' or 'numpy')."""
    return _name


def kernels():
    """The active kernel module."""
    return _module


set_backend(os.environ.get("YULESIMON_BACKEND", "auto").strip().lower())
