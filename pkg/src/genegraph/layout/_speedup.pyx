# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled step kernel for the spring-electrical layout.

Semantics are pinned by the numpy fallback in ``_kernel_py``; keep the two
in sync expression by expression.
"""

from libc.math cimport sqrt

import numpy as np


def step_arrays(double[:, ::1] pos, double[:, ::1] vel,
                long long[::1] ea, long long[::1] eb, double[::1] ew,
                double repulsion, double stiffness, double rest_length,
                double damping, double gravity, double cx, double cy,
                double max_step):
    """Advance positions/velocities in place; returns total displacement."""
    cdef Py_ssize_t n = pos.shape[0]
    cdef Py_ssize_t m = ea.shape[0]
    force_arr = np.zeros((n, 2), dtype=np.float64)
    cdef double[:, ::1] force = force_arr
    cdef Py_ssize_t i, j, k, a, b
    cdef double dx, dy, d, df, scale, f, fx, fy, vx, vy, sp, fac
    cdef double floor = 1e-6
    cdef double total = 0.0

    for i in range(n):
        for j in range(i + 1, n):
            dx = pos[i, 0] - pos[j, 0]
            dy = pos[i, 1] - pos[j, 1]
            d = sqrt(dx * dx + dy * dy)
            df = d if d > floor else floor
            scale = repulsion / (df * df * df)
            force[i, 0] += dx * scale
            force[i, 1] += dy * scale
            force[j, 0] -= dx * scale
            force[j, 1] -= dy * scale

    for k in range(m):
        a = <Py_ssize_t> ea[k]
        b = <Py_ssize_t> eb[k]
        dx = pos[b, 0] - pos[a, 0]
        dy = pos[b, 1] - pos[a, 1]
        d = sqrt(dx * dx + dy * dy)
        df = d if d > floor else floor
        f = stiffness * ew[k] * (df - rest_length) / df
        force[a, 0] += dx * f
        force[a, 1] += dy * f
        force[b, 0] -= dx * f
        force[b, 1] -= dy * f

    for i in range(n):
        fx = force[i, 0] + gravity * (cx - pos[i, 0])
        fy = force[i, 1] + gravity * (cy - pos[i, 1])
        vx = (vel[i, 0] + fx) * damping
        vy = (vel[i, 1] + fy) * damping
        sp = sqrt(vx * vx + vy * vy)
        # clamp the velocity itself, not just the step: otherwise tightly
        # packed nodes bank unbounded momentum and never settle
        if sp > max_step:
            fac = max_step / sp
            vx *= fac
            vy *= fac
            total += max_step
        else:
            total += sp
        vel[i, 0] = vx
        vel[i, 1] = vy
        pos[i, 0] += vx
        pos[i, 1] += vy
    return total
