"""Numeric kernel selection.

The compiled extension is preferred when it imported cleanly; setting the
environment variable ``MINKPLANE_PURE=1`` forces the pure-Python kernels
(useful for benchmarking and debugging).  ``IMPLEMENTATION`` records which
one is active.
"""

import os

if os.environ.get("MINKPLANE_PURE"):
    from ._pure import (  # noqa: F401
        circle_thetas_pnorm,
        circle_thetas_polyline,
        gauge_pnorm,
        gauge_polyline,
    )

    IMPLEMENTATION = "pure"
else:
    try:
        from ._speedups import (  # noqa: F401
            circle_thetas_pnorm,
            circle_thetas_polyline,
            gauge_pnorm,
            gauge_polyline,
        )

        IMPLEMENTATION = "speedups"
    except ImportError:
        from ._pure import (  # noqa: F401
            circle_thetas_pnorm,
            circle_thetas_polyline,
            gauge_pnorm,
            gauge_polyline,
        )

        IMPLEMENTATION = "pure"
