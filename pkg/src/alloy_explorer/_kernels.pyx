# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled per-event scan kernels.

Drop-in replacements for ``_kernels_np`` (same contracts, same tie-breaking),
selected by ``alloy_explorer.kernels`` when the extension built. Both loops
release the GIL, so concurrent sessions can scan the shared table in
parallel.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport sqrt

BACKEND = "cython"


cdef inline bint _worse(double d1, cnp.int64_t i1, double d2, cnp.int64_t i2) noexcept nogil:
    # lexicographic (distance, row index): larger sorts later
    return d1 > d2 or (d1 == d2 and i1 > i2)


def classify_rows(
    const double[:, ::1] values,
    const cnp.int64_t[::1] col_idx,
    const double[::1] lo,
    const double[::1] hi,
    const double[::1] lo_soft,
    const double[::1] hi_soft,
):
    """Label rows 0 (inside every hard interval), 1 (inside every widened
    interval), else 2. Zero active columns labels everything 0."""
    cdef Py_ssize_t n = values.shape[0]
    cdef Py_ssize_t m = col_idx.shape[0]
    labels_arr = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] labels = labels_arr
    cdef Py_ssize_t i, d
    cdef cnp.int64_t c
    cdef double v
    cdef unsigned char label
    with nogil:
        for i in range(n):
            label = 0
            for d in range(m):
                c = col_idx[d]
                v = values[i, c]
                if v < lo_soft[d] or v > hi_soft[d]:
                    label = 2
                    break
                if v < lo[d] or v > hi[d]:
                    label = 1
            labels[i] = label
    return labels_arr


def select_nearest(
    const double[:, ::1] values,
    const cnp.int64_t[::1] col_idx,
    const double[::1] target,
    Py_ssize_t k,
):
    """Indices and Euclidean distances of the k rows closest to ``target``
    over the ``col_idx`` dimensions, sorted by (distance, row index).

    Single pass with a bounded max-heap of size k: O(n log k), exact.
    """
    cdef Py_ssize_t n = values.shape[0]
    cdef Py_ssize_t m = col_idx.shape[0]
    if k > n:
        k = n
    out_idx = np.empty(k, dtype=np.int64)
    out_dist = np.empty(k, dtype=np.float64)
    cdef cnp.int64_t[::1] hidx = out_idx
    cdef double[::1] hdist = out_dist
    cdef Py_ssize_t size = 0
    cdef Py_ssize_t i, d, pos, parent, child, right
    cdef double dist, diff, td
    cdef cnp.int64_t ti

    with nogil:
        for i in range(n):
            dist = 0.0
            for d in range(m):
                diff = values[i, col_idx[d]] - target[d]
                dist += diff * diff
            if size < k:
                # grow the heap: append then sift up
                hdist[size] = dist
                hidx[size] = i
                pos = size
                size += 1
                while pos > 0:
                    parent = (pos - 1) >> 1
                    if _worse(hdist[pos], hidx[pos], hdist[parent], hidx[parent]):
                        td = hdist[pos]; hdist[pos] = hdist[parent]; hdist[parent] = td
                        ti = hidx[pos]; hidx[pos] = hidx[parent]; hidx[parent] = ti
                        pos = parent
                    else:
                        break
            elif _worse(hdist[0], hidx[0], dist, <cnp.int64_t> i):
                # candidate beats the current worst: replace root, sift down
                hdist[0] = dist
                hidx[0] = i
                pos = 0
                while True:
                    child = 2 * pos + 1
                    if child >= k:
                        break
                    right = child + 1
                    if right < k and _worse(hdist[right], hidx[right], hdist[child], hidx[child]):
                        child = right
                    if _worse(hdist[child], hidx[child], hdist[pos], hidx[pos]):
                        td = hdist[pos]; hdist[pos] = hdist[child]; hdist[child] = td
                        ti = hidx[pos]; hidx[pos] = hidx[child]; hidx[child] = ti
                        pos = child
                    else:
                        break

        # in-place heapsort: extract the max to the tail repeatedly,
        # leaving the array ascending by (distance, index)
        for i in range(size - 1, 0, -1):
            td = hdist[0]; hdist[0] = hdist[i]; hdist[i] = td
            ti = hidx[0]; hidx[0] = hidx[i]; hidx[i] = ti
            pos = 0
            while True:
                child = 2 * pos + 1
                if child >= i:
                    break
                right = child + 1
                if right < i and _worse(hdist[right], hidx[right], hdist[child], hidx[child]):
                    child = right
                if _worse(hdist[child], hidx[child], hdist[pos], hidx[pos]):
                    td = hdist[pos]; hdist[pos] = hdist[child]; hdist[child] = td
                    ti = hidx[pos]; hidx[pos] = hidx[child]; hidx[child] = ti
                    pos = child
                else:
                    break

        for i in range(size):
            hdist[i] = sqrt(hdist[i])

    return out_idx, out_dist
