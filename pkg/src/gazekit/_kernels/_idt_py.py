"""Pure-Python dispersion-window scan; reference twin of the compiled kernel.

Both backends must take the same branches on the same floats, so the extent
test and the duration gate below are written exactly as in ``_idt.pyx``.
"""

from __future__ import annotations

import numpy as np


def scan_windows(x, y, valid, threshold_px, min_duration_ms, rate_hz):
    """Scan a time-ordered stream and return fixation windows.

    Grows a window while (max_x - min_x) + (max_y - min_y) stays within
    ``threshold_px``; a breaking sample seeds the next window, an invalid
    sample hard-terminates the current one. Windows whose sample count spans
    at least ``min_duration_ms`` (count / rate * 1000) are kept.

    Returns an int64 array of shape (m, 2) with inclusive [start, end]
    indices into the input arrays.
    """
    xs = np.asarray(x, dtype=np.float64).tolist()
    ys = np.asarray(y, dtype=np.float64).tolist()
    ok = np.asarray(valid, dtype=np.uint8).tolist()

    out: list[tuple[int, int]] = []
    ws = -1  # window start index, -1 = no open window
    we = -1
    minx = maxx = miny = maxy = 0.0

    def close() -> None:
        nonlocal ws
        if ws >= 0 and (we - ws + 1) * 1000.0 / rate_hz >= min_duration_ms:
            out.append((ws, we))
        ws = -1

    for i in range(len(xs)):
        if not ok[i]:
            close()
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
            minx, maxx, miny, maxy = nminx, nmaxx, nminy, nmaxy
            we = i
        else:
            close()
            ws = we = i
            minx = maxx = xi
            miny = maxy = yi
    close()

    return np.array(out, dtype=np.int64).reshape(len(out), 2)
