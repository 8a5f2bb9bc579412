"""Backend selection for the hot linear-algebra kernel.

The compiled ``_ckernels`` extension is used when it was built and the modulus
fits in 64-bit arithmetic; otherwise the pure-Python twin runs.  Set
``SUBPAIR_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pykernels
from ._pykernels import TRUNCPOLY, ZMOD

_c = None
if os.environ.get("SUBPAIR_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _c
    except ImportError:  # extension not built
        _c = None

BACKEND = "cython" if _c is not None else "python"

__all__ = ["BACKEND", "TRUNCPOLY", "ZMOD", "howell_form", "py_howell_form"]

py_howell_form = _pykernels.howell_form


def howell_form(rows, ncols, p, n, kind):
    """Howell form of ``rows`` (iterables of encoded ints) over the chain ring."""
    if _c is not None and p**n <= _c.MAX_MODULUS:
        return _c.howell_form(rows, ncols, p, n, kind)
    return _pykernels.howell_form(rows, ncols, p, n, kind)
