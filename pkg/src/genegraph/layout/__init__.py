"""Deterministic spring-electrical layout with a compiled hot kernel.

The per-step force accumulation is the only hot loop in the engine; it is
implemented twice with identical semantics: a Cython extension
(``_speedup``) and a vectorized numpy fallback (``_kernel_py``). The
extension is picked automatically at import when available; set
``GENEGRAPH_PURE_PYTHON=1`` to force the fallback. ``benchmarks/`` holds a
script comparing the two.
"""

from .engine import (
    LayoutParams,
    LayoutState,
    active_kernel,
    init_layout,
    layout_graph,
    potential_energy,
    run_until_converged,
    step,
)

__all__ = [
    "LayoutParams",
    "LayoutState",
    "active_kernel",
    "init_layout",
    "layout_graph",
    "potential_energy",
    "run_until_converged",
    "step",
]
