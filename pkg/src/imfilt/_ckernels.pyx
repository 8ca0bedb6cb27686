# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels in ``_pykernels``.

Same contracts, same accumulation order.  All loops run without the GIL so
row bands can be processed from a thread pool.
"""
import numpy as np
cimport numpy as cnp

cnp.import_array()

NAME = "cython"


def box_sums(const unsigned char[:, ::1] padded, Py_ssize_t r):
    cdef Py_ssize_t s = 2 * r + 1
    cdef Py_ssize_t ph = padded.shape[0], pw = padded.shape[1]
    cdef Py_ssize_t h = ph - 2 * r, w = pw - 2 * r
    out = np.empty((h, w), dtype=np.int64)
    colsum_arr = np.zeros(pw, dtype=np.int64)
    cdef long long[:, ::1] o = out
    cdef long long[::1] col = colsum_arr
    cdef Py_ssize_t i, j, k
    cdef long long acc
    with nogil:
        for j in range(pw):
            for k in range(s):
                col[j] += padded[k, j]
        for i in range(h):
            if i > 0:
                for j in range(pw):
                    col[j] += padded[i + s - 1, j] - padded[i - 1, j]
            acc = 0
            for j in range(s):
                acc += col[j]
            o[i, 0] = acc
            for j in range(1, w):
                acc += col[j + s - 1] - col[j - 1]
                o[i, j] = acc
    return out


def correlate(padded, const double[:, ::1] kernel):
    cdef const double[:, ::1] src = np.ascontiguousarray(padded, dtype=np.float64)
    cdef Py_ssize_t kh = kernel.shape[0], kw = kernel.shape[1]
    cdef Py_ssize_t h = src.shape[0] - kh + 1, w = src.shape[1] - kw + 1
    out = np.empty((h, w), dtype=np.float64)
    cdef double[:, ::1] o = out
    cdef Py_ssize_t i, j, a, b
    cdef double acc
    with nogil:
        for i in range(h):
            for j in range(w):
                acc = 0.0
                for a in range(kh):
                    for b in range(kw):
                        acc = acc + kernel[a, b] * src[i + a, j + b]
                o[i, j] = acc
    return out


def median(const unsigned char[:, ::1] padded, Py_ssize_t W):
    """Sliding-histogram median (Huang): the median and the count of
    values below it are updated incrementally as the window slides."""
    cdef Py_ssize_t s = 2 * W + 1
    cdef Py_ssize_t h = padded.shape[0] - 2 * W, w = padded.shape[1] - 2 * W
    cdef Py_ssize_t rank = (s * s) // 2
    out = np.empty((h, w), dtype=np.uint8)
    cdef unsigned char[:, ::1] o = out
    cdef Py_ssize_t hist[256]
    cdef Py_ssize_t i, j, k, v, med, below
    with nogil:
        for i in range(h):
            for v in range(256):
                hist[v] = 0
            for k in range(s):
                for j in range(s):
                    hist[padded[i + k, j]] += 1
            med = 0
            below = 0
            for j in range(w):
                if j > 0:
                    for k in range(s):
                        v = padded[i + k, j - 1]
                        hist[v] -= 1
                        if v < med:
                            below -= 1
                        v = padded[i + k, j + s - 1]
                        hist[v] += 1
                        if v < med:
                            below += 1
                # below = number of window values < med
                while below > rank:
                    med -= 1
                    below -= hist[med]
                while below + hist[med] <= rank:
                    below += hist[med]
                    med += 1
                o[i, j] = <unsigned char>med
    return out


def bilateral(const unsigned char[:, ::1] padded, const double[:, ::1] spatial,
              const double[::1] lut):
    cdef Py_ssize_t side = spatial.shape[0]
    cdef Py_ssize_t r = side // 2
    cdef Py_ssize_t h = padded.shape[0] - 2 * r, w = padded.shape[1] - 2 * r
    out = np.empty((h, w), dtype=np.float64)
    cdef double[:, ::1] o = out
    cdef Py_ssize_t i, j, a, b
    cdef int c, v, d
    cdef double num, den, wgt
    with nogil:
        for i in range(h):
            for j in range(w):
                c = padded[i + r, j + r]
                num = 0.0
                den = 0.0
                for a in range(side):
                    for b in range(side):
                        v = padded[i + a, j + b]
                        d = v - c
                        if d < 0:
                            d = -d
                        wgt = spatial[a, b] * lut[d]
                        num = num + wgt * <double>v
                        den = den + wgt
                o[i, j] = num / den
    return out
