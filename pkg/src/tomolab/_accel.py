"""Hot numeric kernels with a numba path and a pure-numpy fallback.

The numba path is used when numba imports cleanly and the environment
variable ``TOMOLAB_DISABLE_NUMBA`` is unset (or set to ``0``).  Both
implementations are always importable so tests and the benchmark can
compare them directly.
"""

from __future__ import annotations

import contextlib
import math
import os

import numpy as np

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False

_ENV_FLAG = "TOMOLAB_DISABLE_NUMBA"
_CHUNK = 256


def _env_disabled():
    return os.environ.get(_ENV_FLAG, "0").strip().lower() not in ("", "0", "false", "no")


# ---------------------------------------------------------------- numpy path


def hermite_table_numpy(nmax, x):
    x = np.asarray(x, dtype=np.float64)
    out = np.empty((nmax + 1, x.size))
    out[0] = math.pi ** -0.25 * np.exp(-0.5 * x * x)
    if nmax >= 1:
        out[1] = math.sqrt(2.0) * x * out[0]
    for n in range(1, nmax):
        out[n + 1] = (x * math.sqrt(2.0 / (n + 1)) * out[n]
                      - math.sqrt(n / (n + 1)) * out[n - 1])
    return out


def chirp_sum_numpy(a, y, x, csc):
    """sum_j a[j] * exp(-1j * x[i] * y[j] * csc) for every i."""
    out = np.empty(x.size, dtype=np.complex128)
    for start in range(0, x.size, _CHUNK):
        xs = x[start:start + _CHUNK]
        out[start:start + _CHUNK] = np.exp(-1j * csc * np.outer(xs, y)) @ a
    return out


def neg_xlogx_sum_numpy(w, weights):
    mask = w > 1e-300
    wm = w[mask]
    return float(-np.sum(weights[mask] * wm * np.log(wm)))


def power_sum_numpy(w, alpha, weights):
    mask = w > 0.0
    return float(np.sum(weights[mask] * w[mask] ** alpha))


# ---------------------------------------------------------------- numba path

if HAVE_NUMBA:
    _jit = numba.njit(cache=True, nogil=True)

    @_jit
    def hermite_table_numba(nmax, x):
        n_x = x.size
        out = np.empty((nmax + 1, n_x))
        c0 = math.pi ** -0.25
        for i in range(n_x):
            out[0, i] = c0 * math.exp(-0.5 * x[i] * x[i])
        if nmax >= 1:
            s2 = math.sqrt(2.0)
            for i in range(n_x):
                out[1, i] = s2 * x[i] * out[0, i]
        for n in range(1, nmax):
            a = math.sqrt(2.0 / (n + 1))
            b = math.sqrt(n / (n + 1))
            for i in range(n_x):
                out[n + 1, i] = x[i] * a * out[n, i] - b * out[n - 1, i]
        return out

    @_jit
    def chirp_sum_numba(a, y, x, csc):
        out = np.empty(x.size, dtype=np.complex128)
        for i in range(x.size):
            re = 0.0
            im = 0.0
            k = -x[i] * csc
            for j in range(y.size):
                ph = k * y[j]
                c = math.cos(ph)
                s = math.sin(ph)
                re += a[j].real * c - a[j].imag * s
                im += a[j].real * s + a[j].imag * c
            out[i] = complex(re, im)
        return out

    @_jit
    def neg_xlogx_sum_numba(w, weights):
        acc = 0.0
        for i in range(w.size):
            if w[i] > 1e-300:
                acc -= weights[i] * w[i] * math.log(w[i])
        return acc

    @_jit
    def power_sum_numba(w, alpha, weights):
        acc = 0.0
        for i in range(w.size):
            if w[i] > 0.0:
                acc += weights[i] * w[i] ** alpha
        return acc

else:  # pragma: no cover
    hermite_table_numba = hermite_table_numpy
    chirp_sum_numba = chirp_sum_numpy
    neg_xlogx_sum_numba = neg_xlogx_sum_numpy
    power_sum_numba = power_sum_numpy


_BACKENDS = {
    "numpy": {
        "hermite_table": hermite_table_numpy,
        "chirp_sum": chirp_sum_numpy,
        "neg_xlogx_sum": neg_xlogx_sum_numpy,
        "power_sum": power_sum_numpy,
    },
    "numba": {
        "hermite_table": hermite_table_numba,
        "chirp_sum": chirp_sum_numba,
        "neg_xlogx_sum": neg_xlogx_sum_numba,
        "power_sum": power_sum_numba,
    },
}

_active = "numba" if HAVE_NUMBA and not _env_disabled() else "numpy"


def backend():
    """Name of the kernel backend currently in use."""
    return _active


def set_backend(name):
    global _active
    if name not in _BACKENDS:
        raise ValueError(f"unknown backend {name!r}; choose from {sorted(_BACKENDS)}")
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is not importable")
    _active = name


@contextlib.contextmanager
def using_backend(name):
    previous = _active
    set_backend(name)
    try:
        yield
    finally:
        set_backend(previous)


def hermite_table(nmax, x):
    """Rows 0..nmax of normalized Hermite functions evaluated at ``x``."""
    x = np.ascontiguousarray(x, dtype=np.float64).ravel()
    return _BACKENDS[_active]["hermite_table"](int(nmax), x)


def chirp_sum(a, y, x, csc):
    a = np.ascontiguousarray(a, dtype=np.complex128)
    y = np.ascontiguousarray(y, dtype=np.float64)
    x = np.ascontiguousarray(x, dtype=np.float64)
    return _BACKENDS[_active]["chirp_sum"](a, y, x, float(csc))


def neg_xlogx_sum(w, weights):
    w = np.ascontiguousarray(w, dtype=np.float64).ravel()
    weights = np.ascontiguousarray(weights, dtype=np.float64).ravel()
    return float(_BACKENDS[_active]["neg_xlogx_sum"](w, weights))


def power_sum(w, alpha, weights):
    w = np.ascontiguousarray(w, dtype=np.float64).ravel()
    weights = np.ascontiguousarray(weights, dtype=np.float64).ravel()
    return float(_BACKENDS[_active]["power_sum"](w, float(alpha), weights))
