"""Kernel backend selection.

The compiled ``_ckernels`` extension is used when it was built; otherwise
the numpy fallback in ``_pykernels`` is used.  Set ``IMFILT_BACKEND=python``
to force the fallback.
"""
import os
from contextlib import contextmanager
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

_BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    _BACKENDS["cython"] = _ckernels


def available():
    return sorted(_BACKENDS)


def get(name=None):
    if name is None:
        return kernels
    try:
        return _BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} is not available; have {available()}") from None


def _default():
    wanted = os.environ.get("IMFILT_BACKEND", "").strip().lower()
    if wanted:
        return get(wanted)
    return _BACKENDS.get("cython", _pykernels)


kernels = _default()


def run_banded(fn, padded, halo, workers, *args):
    """Evaluate a valid-region kernel over horizontal bands in parallel.

    ``halo`` is the number of extra padded rows each side of an output row.
    Output rows are independent, so banding never changes the result.
    """
    out_h = padded.shape[0] - 2 * halo
    if workers is None or workers <= 1 or out_h < 2:
        return fn(padded, *args)
    nbands = min(workers, out_h)
    edges = np.linspace(0, out_h, nbands + 1).astype(int)
    bands = [
        np.ascontiguousarray(padded[lo : hi + 2 * halo])
        for lo, hi in zip(edges[:-1], edges[1:])
    ]
    with ThreadPoolExecutor(max_workers=nbands) as pool:
        parts = list(pool.map(lambda band: fn(band, *args), bands))
    return np.concatenate(parts, axis=0)


@contextmanager
def use(name):
    """Temporarily route every filter through the named backend."""
    global kernels
    previous = kernels
    kernels = get(name)
    try:
        yield kernels
    finally:
        kernels = previous
