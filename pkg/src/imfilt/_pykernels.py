"""Pure numpy implementations of the hot kernels.

Every function takes an already border-extended array and returns results
for the "valid" region only.  Floating-point accumulation follows the
same offset order as the compiled kernels so both backends agree bit for
bit.
"""
import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

NAME = "python"


def box_sums(padded, r):
    """Exact integer sums over every ``(2r+1)**2`` window."""
    s = 2 * r + 1
    h, w = padded.shape[0] - 2 * r, padded.shape[1] - 2 * r
    integral = np.zeros((padded.shape[0] + 1, padded.shape[1] + 1), dtype=np.int64)
    np.cumsum(np.cumsum(padded, axis=0, dtype=np.int64), axis=1, out=integral[1:, 1:])
    return (
        integral[s : s + h, s : s + w]
        - integral[:h, s : s + w]
        - integral[s : s + h, :w]
        + integral[:h, :w]
    )


def correlate(padded, kernel):
    kh, kw = kernel.shape
    h, w = padded.shape[0] - kh + 1, padded.shape[1] - kw + 1
    src = padded.astype(np.float64, copy=False)
    acc = np.zeros((h, w), dtype=np.float64)
    for a in range(kh):
        for b in range(kw):
            acc += kernel[a, b] * src[a : a + h, b : b + w]
    return acc


def median(padded, W):
    s = 2 * W + 1
    windows = sliding_window_view(padded, (s, s))
    flat = windows.reshape(windows.shape[0], windows.shape[1], s * s)
    k = (s * s) // 2
    return np.partition(flat, k, axis=-1)[..., k]


def bilateral(padded, spatial, lut):
    side = spatial.shape[0]
    r = side // 2
    h, w = padded.shape[0] - 2 * r, padded.shape[1] - 2 * r
    center = padded[r : r + h, r : r + w].astype(np.int16)
    num = np.zeros((h, w), dtype=np.float64)
    den = np.zeros((h, w), dtype=np.float64)
    for a in range(side):
        for b in range(side):
            window = padded[a : a + h, b : b + w]
            wgt = spatial[a, b] * lut[np.abs(window.astype(np.int16) - center)]
            num += wgt * window
            den += wgt
    return num / den
