"""Select the compiled kernels when available.

Set ``DIRAC_CHORDS_PURE=1`` to force the pure-Python implementation.
"""
import os

IMPLEMENTATION = "python"

if os.environ.get("DIRAC_CHORDS_PURE", "") not in ("", "0"):
    from ._kernels_py import cycle_counts, neighbour_tables, s_histogram
else:
    try:
        from ._kernels import cycle_counts, neighbour_tables, s_histogram

        IMPLEMENTATION = "compiled"
    except ImportError:  # extension not built
        from ._kernels_py import cycle_counts, neighbour_tables, s_histogram

__all__ = ["IMPLEMENTATION", "cycle_counts", "neighbour_tables", "s_histogram"]
