# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled dispersion-window scan; hot path of batch fixation detection.

Semantics are pinned by the pure twin in ``_idt_py.py``: identical branch
expressions on IEEE doubles, so both backends yield identical windows.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def scan_windows(object x, object y, object valid,
                 double threshold_px, double min_duration_ms, double rate_hz):
    """See ``gazekit._kernels._idt_py.scan_windows``."""
    cdef double[::1] xs = np.ascontiguousarray(x, dtype=np.float64)
    cdef double[::1] ys = np.ascontiguousarray(y, dtype=np.float64)
    cdef unsigned char[::1] ok = np.ascontiguousarray(valid, dtype=np.uint8)

    cdef Py_ssize_t n = xs.shape[0]
    out_arr = np.empty((n, 2), dtype=np.int64)
    cdef cnp.int64_t[:, ::1] out = out_arr
    cdef Py_ssize_t m = 0

    cdef Py_ssize_t ws = -1, we = -1, i
    cdef double minx = 0.0, maxx = 0.0, miny = 0.0, maxy = 0.0
    cdef double xi, yi, nminx, nmaxx, nminy, nmaxy

    for i in range(n):
        if not ok[i]:
            if ws >= 0 and (we - ws + 1) * 1000.0 / rate_hz >= min_duration_ms:
                out[m, 0] = ws
                out[m, 1] = we
                m += 1
            ws = -1
            continue
        xi = xs[i]
        yi = ys[i]
        if ws < 0:
            ws = we = i
            minx = maxx = xi
            miny = maxy = yi
            continue
        nminx = xi if xi < minx else minx
        nmaxx = xi if xi > maxx else maxx
        nminy = yi if yi < miny else miny
        nmaxy = yi if yi > maxy else maxy
        if (nmaxx - nminx) + (nmaxy - nminy) <= threshold_px:
            minx = nminx
            maxx = nmaxx
            miny = nminy
            maxy = nmaxy
            we = i
        else:
            if (we - ws + 1) * 1000.0 / rate_hz >= min_duration_ms:
                out[m, 0] = ws
                out[m, 1] = we
                m += 1
            ws = we = i
            minx = maxx = xi
            miny = maxy = yi
    if ws >= 0 and (we - ws + 1) * 1000.0 / rate_hz >= min_duration_ms:
        out[m, 0] = ws
        out[m, 1] = we
        m += 1

    return out_arr[:m].copy()
