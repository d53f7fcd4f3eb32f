"""Select the elimination kernel: compiled if importable, else pure Python.

Set ``ACSLIE_PURE_PYTHON=1`` to force the fallback.
"""
import os

from acslie import _elim

BACKEND = "python"
int_rref = _elim.int_rref

if not os.environ.get("ACSLIE_PURE_PYTHON"):
    try:
        from acslie import _elim_c
    except ImportError:
        pass
    else:
        int_rref = _elim_c.int_rref
        BACKEND = "cython"
