"""Backend selection for the elimination kernel.

The compiled module is used when it imported cleanly; setting
``TORUSKT_PURE_PYTHON=1`` forces the pure-Python path. A block whose entries
leave 64-bit range in the compiled kernel is redone in Python.
"""

from __future__ import annotations

import os

from toruskt import _kernel_py
from toruskt._kernel_py import BudgetExhausted

try:
    from toruskt import _kernel_c
except ImportError:  # extension not built
    _kernel_c = None

if os.environ.get("TORUSKT_PURE_PYTHON", "") not in ("", "0"):
    _kernel_c = None

BACKEND = "compiled" if _kernel_c is not None else "python"

__all__ = ["BACKEND", "BudgetExhausted", "diagonal_entries"]


def diagonal_entries(rows, budget=None, backend=None):
    """Absolute pivots of a unimodular diagonalization, plus the work spent.

    ``backend`` may be "python" or "compiled" to bypass the automatic choice.
    """
    use = backend or BACKEND
    if use == "compiled":
        if _kernel_c is None:
            raise RuntimeError("compiled kernel is not available")
        try:
            return _kernel_c.diagonal_entries(rows, budget)
        except OverflowError:
            pass
    return _kernel_py.diagonal_entries(rows, budget)
