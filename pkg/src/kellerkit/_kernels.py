"""Kernel backend selection.

The compiled ``_speedups`` extension is used when it was built; otherwise
the pure-Python implementation is imported. Set ``KELLERKIT_PURE_PYTHON=1``
to force the fallback.
"""

import os

if os.environ.get("KELLERKIT_PURE_PYTHON"):
    from ._pykernels import *  # noqa: F401,F403
    from ._pykernels import BACKEND
else:
    try:
        from ._speedups import *  # noqa: F401,F403
        from ._speedups import BACKEND
    except ImportError:
        from ._pykernels import *  # noqa: F401,F403
        from ._pykernels import BACKEND
