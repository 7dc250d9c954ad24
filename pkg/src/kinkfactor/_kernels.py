"""Hot loops: RK4 on the frame ODE and the damped leapfrog update.

Each kernel has a numba ``@njit`` build and a pure-numpy build with the same
signature and the same floating-point operation order. The numba path is
used when numba imports and ``KINKFACTOR_NO_NUMBA`` is unset (or ``0``).
"""
import os

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover
    njit = None

_flag = os.environ.get("KINKFACTOR_NO_NUMBA", "").strip().lower()
USE_NUMBA = njit is not None and _flag in ("", "0", "false", "no")
BACKEND = "numba" if USE_NUMBA else "numpy"


def _rk4_frame_py(alpha, lam, f0, fp0, step, nsteps, blowup):
    inv = 1.0 / ((1.0 - alpha) * (1.0 + alpha))
    damp = alpha * lam
    fs = np.empty(nsteps + 1)
    ps = np.empty(nsteps + 1)
    f = f0
    p = fp0
    fs[0] = f
    ps[0] = p
    h = step
    h2 = 0.5 * step
    for i in range(nsteps):
        k1f = p
        k1p = (-damp * p - f + f * f * f) * inv
        ff = f + h2 * k1f
        pp = p + h2 * k1p
        k2f = pp
        k2p = (-damp * pp - ff + ff * ff * ff) * inv
        ff = f + h2 * k2f
        pp = p + h2 * k2p
        k3f = pp
        k3p = (-damp * pp - ff + ff * ff * ff) * inv
        ff = f + h * k3f
        pp = p + h * k3p
        k4f = pp
        k4p = (-damp * pp - ff + ff * ff * ff) * inv
        f = f + (h / 6.0) * (k1f + 2.0 * k2f + 2.0 * k3f + k4f)
        p = p + (h / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)
        if not (abs(f) <= blowup and abs(p) < np.inf):
            return fs, ps, i + 1, True
        fs[i + 1] = f
        ps[i + 1] = p
    return fs, ps, nsteps + 1, False


def _leapfrog_np(u_prev, u_curr, dt, dx, lam, nsteps):
    """Advance ``nsteps`` in place; returns steps completed before a non-finite value."""
    r = (dt * dt) / (dx * dx)
    dt2 = dt * dt
    d = 0.5 * lam * dt
    den = 1.0 + d
    u_next = u_curr.copy()
    for s in range(nsteps):
        u = u_curr[1:-1]
        up = u_prev[1:-1]
        with np.errstate(over="ignore", invalid="ignore"):
            u_next[1:-1] = (2.0 * u - up + r * (u_curr[2:] - 2.0 * u + u_curr[:-2])
                            + dt2 * (u - u * u * u) + d * up) / den
        u_next[0] = u_curr[0]
        u_next[-1] = u_curr[-1]
        if not np.isfinite(u_next).all():
            return s
        u_prev[:] = u_curr
        u_curr[:] = u_next
    return nsteps


def _leapfrog_loop(u_prev, u_curr, dt, dx, lam, nsteps):
    n = u_curr.shape[0]
    r = (dt * dt) / (dx * dx)
    dt2 = dt * dt
    d = 0.5 * lam * dt
    den = 1.0 + d
    u_next = u_curr.copy()
    for s in range(nsteps):
        ok = True
        for i in range(1, n - 1):
            u = u_curr[i]
            up = u_prev[i]
            v = (2.0 * u - up + r * (u_curr[i + 1] - 2.0 * u + u_curr[i - 1])
                 + dt2 * (u - u * u * u) + d * up) / den
            if not (abs(v) < np.inf):
                ok = False
            u_next[i] = v
        u_next[0] = u_curr[0]
        u_next[n - 1] = u_curr[n - 1]
        if not ok:
            return s
        for i in range(n):
            u_prev[i] = u_curr[i]
            u_curr[i] = u_next[i]
    return nsteps


rk4_frame_numpy = _rk4_frame_py
leapfrog_numpy = _leapfrog_np

if njit is not None:
    rk4_frame_numba = njit(cache=True)(_rk4_frame_py)
    leapfrog_numba = njit(cache=True)(_leapfrog_loop)
else:  # pragma: no cover
    rk4_frame_numba = None
    leapfrog_numba = None

if USE_NUMBA:
    rk4_frame = rk4_frame_numba
    leapfrog = leapfrog_numba
else:
    rk4_frame = rk4_frame_numpy
    leapfrog = leapfrog_numpy
