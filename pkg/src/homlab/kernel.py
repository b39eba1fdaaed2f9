"""Selects the search kernel at import time.

The compiled extension is used when it was built; otherwise the pure-Python
reference kernel is used.  Set ``HOMLAB_PURE_PYTHON=1`` to force the
fallback.
"""
import os

from . import _pysearch

DONE = _pysearch.DONE
LIMIT = _pysearch.LIMIT
BUDGET = _pysearch.BUDGET

python_search = _pysearch.search

try:
    from ._ckernel import search as compiled_search
except ImportError:  # extension not built
    compiled_search = None

if compiled_search is not None and not os.environ.get("HOMLAB_PURE_PYTHON"):
    search = compiled_search
    BACKEND = "compiled"
else:
    search = python_search
    BACKEND = "python"


def get_search(backend: str | None = None):
    """Return a kernel by name ("compiled", "python") or the default one."""
    if backend is None:
        return search
    if backend == "python":
        return python_search
    if backend == "compiled":
        if compiled_search is None:
            raise RuntimeError("compiled kernel is not available in this build")
        return compiled_search
    raise ValueError(f"unknown backend {backend!r}")
