"""Pure-numpy fallback for the layout step kernel.

Implements exactly the same arithmetic as the Cython version in
``_speedup.pyx`` (same expressions, same operand order) so the two kernels
agree to float rounding. Repulsion is evaluated in row blocks to keep the
pairwise temporaries bounded on larger graphs.
"""

import numpy as np

_FLOOR = 1e-6
_BLOCK = 256


def step_arrays(pos, vel, ea, eb, ew,
                repulsion, stiffness, rest_length,
                damping, gravity, cx, cy, max_step):
    """Advance positions/velocities in place; returns total displacement."""
    n = pos.shape[0]
    force = np.zeros_like(pos)

    for start in range(0, n, _BLOCK):
        stop = min(start + _BLOCK, n)
        diff = pos[start:stop, None, :] - pos[None, :, :]  # (b, n, 2)
        d = np.sqrt(diff[..., 0] ** 2 + diff[..., 1] ** 2)
        df = np.maximum(d, _FLOOR)
        scale = repulsion / (df * df * df)  # k_r/d^2 along diff/d
        force[start:stop, 0] += np.sum(diff[..., 0] * scale, axis=1)
        force[start:stop, 1] += np.sum(diff[..., 1] * scale, axis=1)

    if len(ea):
        delta = pos[eb] - pos[ea]
        d = np.sqrt(delta[:, 0] ** 2 + delta[:, 1] ** 2)
        df = np.maximum(d, _FLOOR)
        f = stiffness * ew * (df - rest_length) / df
        np.add.at(force, ea, delta * f[:, None])
        np.add.at(force, eb, -(delta * f[:, None]))

    force[:, 0] += gravity * (cx - pos[:, 0])
    force[:, 1] += gravity * (cy - pos[:, 1])

    vel[:] = (vel + force) * damping
    speed = np.sqrt(vel[:, 0] ** 2 + vel[:, 1] ** 2)
    # clamp the velocity itself, not just the step: otherwise tightly packed
    # nodes bank unbounded momentum and never settle
    clamped = speed > max_step
    factor = np.ones_like(speed)
    factor[clamped] = max_step / speed[clamped]
    vel *= factor[:, None]
    pos += vel
    return float(np.sum(np.minimum(speed, max_step)))
