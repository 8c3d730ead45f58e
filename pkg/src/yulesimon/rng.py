"""Deterministic random number generation with explicit state.

``RngState`` wraps a 64-bit stream key plus a call counter.  Every
sampling method consumes exactly one counter tick regardless of batch
size or rejection behaviour, so the mapping from (seed, call sequence)
to output is fixed: the same seed always reproduces the same stream, and
skipping or reordering whole calls never silently shifts later draws.

Streams for independent components (chains, replicate datasets) come
from ``spawn``/``child_seed`` rather than seed arithmetic.
"""

import math

import numpy as np

from . import _streams
from .backend import kernels
from .errors import ParameterError

_MAX_SEED = (1 << 64) - 1


def _check_positive(name, value):
    if not (isinstance(value, (int, float, np.integer, np.floating))
            and math.isfinite(float(value)) and float(value) > 0.0):
        raise ParameterError(f"{name} must be a positive finite number, "
                             f"got {value!r}")
    return float(value)


class RngState:
    """Counter-based generator state.

    Parameters
    ----------
    seed : int
        Any integer in [0, 2**64).  Distinct seeds give statistically
        independent streams.

    Notes
    -----
    Scalar draws are the ``size=None`` case of the batch draws: both
    address the stream as (key, call, index) with index 0, 1, ...; a
    scalar call and a size-1 batch therefore produce the same value.
    """

    __slots__ = ("seed", "_key", "_counter", "_spawned")

    def __init__(self, seed=0):
        if not isinstance(seed, (int, np.integer)) or isinstance(seed, bool):
            raise ParameterError(f"seed must be an integer, got {seed!r}")
        if not 0 <= int(seed) <= _MAX_SEED:
            raise ParameterError("seed must be in [0, 2**64)")
        self.seed = int(seed)
        self._key = _streams.key_from_seed(self.seed)
        self._counter = 0
        self._spawned = 0

    @classmethod
    def _from_key(cls, key):
        obj = cls.__new__(cls)
        obj.seed = None
        obj._key = key & _streams.MASK64
        obj._counter = 0
        obj._spawned = 0
        return obj

    def __repr__(self):
        return (f"RngState(seed={self.seed}, key=0x{self._key:016x}, "
                f"counter={self._counter})")

    @property
    def counter(self):
        """Number of sampling calls consumed so far."""
        return self._counter

    def _next_call(self):
        call = self._counter
        self._counter += 1
        return np.uint64(call)

    def _raw(self):
        return np.uint64(self._key)

    def spawn(self):
        """Return a new independent ``RngState`` derived from this one."""
        child = RngState._from_key(_streams.child_key(self._key, self._spawned))
        self._spawned += 1
        return child

    def child_seed(self, index):
        """A reproducible 64-bit integer seed for sub-component ``index``."""
        if not isinstance(index, (int, np.integer)) or int(index) < 0:
            raise ParameterError(f"index must be a nonnegative integer, "
                                 f"got {index!r}")
        return _streams.child_seed(self._key, int(index))

    @staticmethod
    def _batch(size):
        if size is None:
            return 1
        n = int(size)
        if n < 0:
            raise ParameterError(f"size must be nonnegative, got {size!r}")
        return n

    @staticmethod
    def _unwrap(arr, size):
        if size is None:
            return arr[0].item()
        return arr

    def next_uniform(self, size=None):
        """Uniform draws on the open interval (0, 1)."""
        n = self._batch(size)
        out = kernels().uniforms(self._raw(), self._next_call(), n)
        return self._unwrap(out, size)

    def sample_normal(self, size=None):
        """Standard normal draws (inverse-CDF transform)."""
        n = self._batch(size)
        out = kernels().normals(self._raw(), self._next_call(), n)
        return self._unwrap(out, size)

    def sample_gamma(self, shape, rate, size=None):
        """Gamma draws under the shape/RATE parameterization.

        The density is b^a x^(a-1) e^(-bx) / Gamma(a); mean shape/rate.
        """
        shape = _check_positive("shape", shape)
        rate = _check_positive("rate", rate)
        n = self._batch(size)
        out = kernels().gammas(self._raw(), self._next_call(), shape, rate, n)
        return self._unwrap(out, size)

    def sample_beta(self, alpha, beta, size=None):
        """Beta(alpha, beta) draws, strictly inside (0, 1)."""
        alpha = _check_positive("alpha", alpha)
        beta = _check_positive("beta", beta)
        n = self._batch(size)
        out = kernels().betas(self._raw(), self._next_call(), alpha, beta, n)
        return self._unwrap(out, size)

    def sample_geometric(self, p, size=None):
        """Geometric draws on {1, 2, ...} with success probability p."""
        try:
            p = float(p)
        except (TypeError, ValueError):
            raise ParameterError(f"p must be a number, got {p!r}") from None
        if not (0.0 < p <= 1.0):
            raise ParameterError(f"p must be in (0, 1], got {p!r}")
        n = self._batch(size)
        out = kernels().geometrics(self._raw(), self._next_call(), p, n)
        return self._unwrap(out, size)
