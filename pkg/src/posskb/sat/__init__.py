"""Satisfiability kernel with a compiled core and a pure-Python fallback.

The compiled extension (``posskb.sat._core``, built from Cython) is selected
at import time when present; otherwise the pure-Python implementation takes
over with identical verdicts.  ``POSSKB_SAT_BACKEND`` forces the choice:
``pure``, ``compiled``, or ``auto`` (default).
"""

from __future__ import annotations

import os
from typing import Callable, Sequence

SatSolver = Callable[[int, Sequence[Sequence[int]]], bool]


def load_backend(name: str) -> SatSolver:
    """Load a named backend; raises ImportError if it is unavailable."""
    if name == "pure":
        from . import _pure

        return _pure.satisfiable
    if name in ("compiled", "cython"):
        from . import _core  # type: ignore[attr-defined]

        return _core.satisfiable
    raise ValueError(f"unknown SAT backend {name!r} (expected 'pure' or 'compiled')")


def available_backends() -> tuple[str, ...]:
    names = ["pure"]
    try:
        load_backend("compiled")
    except ImportError:
        pass
    else:
        names.insert(0, "compiled")
    return tuple(names)


def _select() -> tuple[str, SatSolver]:
    requested = os.environ.get("POSSKB_SAT_BACKEND", "auto").strip().lower()
    if requested in ("", "auto"):
        try:
            return "compiled", load_backend("compiled")
        except ImportError:
            return "pure", load_backend("pure")
    return requested, load_backend(requested)


BACKEND, satisfiable = _select()
