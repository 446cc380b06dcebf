"""Spring-electrical layout engine.

Forces per step: pairwise repulsion k_r / d^2 (distance floored at 1e-6,
zero-separation pairs exert no force), spring attraction k_a * w * (d - L0)
along each weighted edge, and linear gravity g * (center - p). Velocities
are damped multiplicatively and per-node displacement is clamped to
max_step, which keeps every trajectory bounded. A run converges when the
total displacement of one step drops below epsilon.

Everything is deterministic: initial positions come from a splitmix64
stream over the seed, and node/edge iteration order is fixed, so identical
(graph, params) reproduce layouts bit for bit.
"""

import os
from dataclasses import dataclass, field, replace

import numpy as np

from ..errors import BadParameter

if os.environ.get("GENEGRAPH_PURE_PYTHON"):
    from . import _kernel_py as _kernel

    _KERNEL_NAME = "python"
else:
    try:
        from . import _speedup as _kernel

        _KERNEL_NAME = "compiled"
    except ImportError:
        from . import _kernel_py as _kernel

        _KERNEL_NAME = "python"

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15

DISTANCE_FLOOR = 1e-6


def active_kernel() -> str:
    """Which step kernel is in use: "compiled" or "python"."""
    return _KERNEL_NAME


@dataclass(frozen=True)
class LayoutParams:
    repulsion: float = 5000.0
    stiffness: float = 0.05
    rest_length: float = 60.0
    damping: float = 0.85
    gravity: float = 0.02
    max_step: float = 20.0
    epsilon: float = 0.5
    max_iters: int = 2000
    seed: int = 0
    canvas_width: float = 1000.0
    canvas_height: float = 1000.0

    def __post_init__(self):
        if self.repulsion <= 0:
            raise BadParameter("repulsion must be positive")
        if self.stiffness <= 0:
            raise BadParameter("stiffness must be positive")
        if self.rest_length <= 0:
            raise BadParameter("rest length must be positive")
        if not 0.0 < self.damping < 1.0:
            raise BadParameter("damping must be in (0, 1)")
        if self.gravity < 0:
            raise BadParameter("gravity must be >= 0")
        if self.max_step <= 0:
            raise BadParameter("max_step must be positive")
        # epsilon 0 is allowed: it forces a full max_iters run
        if self.epsilon < 0:
            raise BadParameter("epsilon must be >= 0")
        if self.max_iters < 1:
            raise BadParameter("max_iters must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise BadParameter("seed must fit in 64 unsigned bits")

    @property
    def center(self) -> tuple[float, float]:
        return self.canvas_width / 2.0, self.canvas_height / 2.0


@dataclass(frozen=True)
class LayoutState:
    positions: np.ndarray  # (n, 2) float64
    velocities: np.ndarray  # (n, 2) float64
    iteration: int = 0
    converged: bool = False


def _uniform_stream(seed: int, count: int) -> np.ndarray:
    """count doubles in [0, 1) from splitmix64; platform independent."""
    out = np.empty(count, dtype=np.float64)
    state = seed & _MASK64
    for i in range(count):
        state = (state + _GOLDEN) & _MASK64
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        z ^= z >> 31
        out[i] = (z >> 11) * 2.0**-53
    return out


def init_layout(node_count: int, params: LayoutParams) -> LayoutState:
    """Seeded initial state: positions uniform in the unit box around the
    canvas center, velocities zero."""
    if node_count < 1:
        raise BadParameter(f"node_count must be >= 1, got {node_count}")
    cx, cy = params.center
    u = _uniform_stream(params.seed, 2 * node_count)
    positions = np.empty((node_count, 2), dtype=np.float64)
    positions[:, 0] = cx - 0.5 + u[0::2]
    positions[:, 1] = cy - 0.5 + u[1::2]
    velocities = np.zeros((node_count, 2), dtype=np.float64)
    return LayoutState(positions, velocities)


def _edge_arrays(edges, node_count: int):
    ea = np.asarray([e[0] for e in edges], dtype=np.int64)
    eb = np.asarray([e[1] for e in edges], dtype=np.int64)
    ew = np.asarray([e[2] for e in edges], dtype=np.float64)
    if len(ea) and (ea.min() < 0 or ea.max() >= node_count
                    or eb.min() < 0 or eb.max() >= node_count):
        raise BadParameter("edge endpoint outside the node range")
    return ea, eb, ew


def step(state: LayoutState, edges, params: LayoutParams) -> LayoutState:
    """One force-integration step; returns a new state, never mutates."""
    n = state.positions.shape[0]
    ea, eb, ew = _edge_arrays(edges, n)
    pos = state.positions.copy()
    vel = state.velocities.copy()
    cx, cy = params.center
    total = _kernel.step_arrays(
        pos, vel, ea, eb, ew,
        params.repulsion, params.stiffness, params.rest_length,
        params.damping, params.gravity, cx, cy, params.max_step,
    )
    return LayoutState(pos, vel, state.iteration + 1, total < params.epsilon)


def run_until_converged(state: LayoutState, edges, params: LayoutParams) -> LayoutState:
    """Iterate step until convergence or params.max_iters iterations."""
    n = state.positions.shape[0]
    ea, eb, ew = _edge_arrays(edges, n)
    pos = state.positions.copy()
    vel = state.velocities.copy()
    cx, cy = params.center
    iteration = state.iteration
    converged = state.converged
    while not converged and iteration < params.max_iters:
        total = _kernel.step_arrays(
            pos, vel, ea, eb, ew,
            params.repulsion, params.stiffness, params.rest_length,
            params.damping, params.gravity, cx, cy, params.max_step,
        )
        iteration += 1
        converged = total < params.epsilon
    return LayoutState(pos, vel, iteration, converged)


def layout_graph(node_count: int, edges, params: LayoutParams) -> LayoutState:
    return run_until_converged(init_layout(node_count, params), edges, params)


def potential_energy(positions: np.ndarray, edges, params: LayoutParams) -> float:
    """Spring-electrical potential of a configuration (diagnostic)."""
    pos = np.asarray(positions, dtype=np.float64)
    n = pos.shape[0]
    total = 0.0
    for i in range(n):
        diff = pos[i] - pos[i + 1 :]
        d = np.sqrt(diff[:, 0] ** 2 + diff[:, 1] ** 2)
        total += float(np.sum(params.repulsion / np.maximum(d, DISTANCE_FLOOR)))
    for a, b, w in edges:
        d = float(np.sqrt(np.sum((pos[int(a)] - pos[int(b)]) ** 2)))
        total += 0.5 * params.stiffness * w * (d - params.rest_length) ** 2
    cx, cy = params.center
    total += 0.5 * params.gravity * float(
        np.sum((pos[:, 0] - cx) ** 2 + (pos[:, 1] - cy) ** 2)
    )
    return total
