"""Kernel backend selection: compiled extension if built, pure Python otherwise.

``GAZEKIT_PURE_PYTHON=1`` forces the fallback; the benchmark and parity tests
reach both implementations through ``pure_scan_windows`` /
``compiled_scan_windows`` regardless of the selection.
"""

import os

from gazekit._kernels._idt_py import scan_windows as pure_scan_windows

compiled_scan_windows = None
try:
    from gazekit._kernels._idt import scan_windows as compiled_scan_windows
except ImportError:
    pass

if os.environ.get("GAZEKIT_PURE_PYTHON") or compiled_scan_windows is None:
    scan_windows = pure_scan_windows
    BACKEND = "python"
else:
    scan_windows = compiled_scan_windows
    BACKEND = "cython"
