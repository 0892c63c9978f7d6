"""Kernel selection: compiled extension if built, numpy fallback otherwise.

Set CCGKIT_PURE_PYTHON=1 to force the fallback (used by the kernel
benchmark and the equivalence tests).
"""

import os

if os.environ.get("CCGKIT_PURE_PYTHON") == "1":
    from . import _kernel_py as impl
else:
    try:
        from . import _kernel as impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernel_py as impl

BASIC = impl.BASIC
AT_LOWER = impl.AT_LOWER
AT_UPPER = impl.AT_UPPER
FREE = impl.FREE
COMPILED = impl.COMPILED

choose_entering = impl.choose_entering
ratio_test = impl.ratio_test
do_pivot = impl.do_pivot
