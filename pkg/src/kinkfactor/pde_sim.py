"""Finite-difference simulation of ``u_tt - u_xx + lambda0 u_t - u + u^3 = 0``.

Leapfrog in time with the damping term centered between ``u_next`` and
``u_prev``; Dirichlet values clamped to the kink's asymptotic states.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import DomainError, InstabilityError, NoFrontError, PlacementError
from .factorizer import KinkSolution, kink_eval

MIN_CLEARANCE = 10.0
MIN_CELLS = 100
MIN_FIT_POINTS = 10


@dataclass(frozen=True)
class GridConfig:
    lambda0: float
    x_min: float = -40.0
    x_max: float = 80.0
    dx: float = 0.05
    dt: float = 0.02
    t_max: float = 30.0
    output_every: int = 25

    def __post_init__(self):
        if not self.dx > 0 or not self.dt > 0:
            raise DomainError("dx and dt must be positive")
        if self.dt > 0.5 * self.dx * (1 + 1e-12):
            raise DomainError(f"CFL: dt={self.dt} exceeds 0.5*dx={0.5 * self.dx}")
        cells = (self.x_max - self.x_min) / self.dx
        if abs(cells - round(cells)) > 1e-9 * max(1.0, cells) or round(cells) < MIN_CELLS:
            raise DomainError(f"(x_max - x_min)/dx = {cells} must be an integer >= {MIN_CELLS}")
        if self.output_every < 1 or self.t_max <= 0:
            raise DomainError("output_every >= 1 and t_max > 0 required")
        if self.lambda0 < 0:
            raise DomainError("lambda0 must be >= 0")

    @property
    def n_cells(self) -> int:
        return int(round((self.x_max - self.x_min) / self.dx))

    @property
    def x(self) -> np.ndarray:
        return self.x_min + self.dx * np.arange(self.n_cells + 1)

    @property
    def n_steps(self) -> int:
        return int(round(self.t_max / self.dt))


@dataclass(eq=False)
class FieldState:
    u_prev: np.ndarray
    u_curr: np.ndarray
    t: float = 0.0

    def copy(self) -> FieldState:
        return FieldState(self.u_prev.copy(), self.u_curr.copy(), self.t)


@dataclass(frozen=True, eq=False)
class SpeedFit:
    crossings: list
    speed: float
    intercept: float
    rms_residual: float


@dataclass(eq=False)
class SimulationResult:
    x: np.ndarray
    snapshots: list = field(default_factory=list)  # (t, u) pairs
    crossings: list = field(default_factory=list)  # (t, x_cross) pairs
    level: float = 0.0


def init_state(cfg: GridConfig, kink, alpha: float) -> FieldState:
    """Place ``kink`` (a :class:`KinkSolution` or a constant) at ``t = 0`` and ``t = -dt``."""
    x = cfg.x
    if not isinstance(kink, KinkSolution):
        u = np.full_like(x, float(kink))
        return FieldState(u.copy(), u, 0.0)
    front = kink.tau0
    if front - cfg.x_min < MIN_CLEARANCE or cfg.x_max - front < MIN_CLEARANCE:
        raise PlacementError(f"front at x={front} is within {MIN_CLEARANCE} of a boundary")
    u_curr = kink_eval(kink, x)[0]
    u_prev = kink_eval(kink, x + alpha * cfg.dt)[0]
    for u in (u_prev, u_curr):
        u[0] = kink.left_value
        u[-1] = kink.right_value
    return FieldState(u_prev, u_curr, 0.0)


def _advance(state: FieldState, cfg: GridConfig, nsteps: int) -> FieldState:
    done = _kernels.leapfrog(state.u_prev, state.u_curr, cfg.dt, cfg.dx, cfg.lambda0, nsteps)
    if done < nsteps:
        raise InstabilityError(state.t + (done + 1) * cfg.dt)
    state.t += nsteps * cfg.dt
    return state


def step(state: FieldState, cfg: GridConfig) -> FieldState:
    """One leapfrog step; returns a new state and leaves ``state`` untouched."""
    return _advance(state.copy(), cfg, 1)


def front_position(x, u, level):
    """Leftmost x where ``u`` crosses ``level`` (linear interpolation), or None."""
    d = u - level
    idx = np.nonzero((d[:-1] == 0.0) | (d[:-1] * d[1:] < 0.0))[0]
    if idx.size == 0:
        return None
    i = idx[0]
    if d[i] == 0.0:
        return float(x[i])
    return float(x[i] + (x[i + 1] - x[i]) * d[i] / (d[i] - d[i + 1]))


def run(cfg: GridConfig, kink, alpha: float, keep_snapshots: bool = True) -> SimulationResult:
    """Step to ``t_max``, logging the ``r_target/2`` crossing every ``output_every`` steps."""
    state = init_state(cfg, kink, alpha)
    level = 0.5 * kink.r_target if isinstance(kink, KinkSolution) else math.nan
    res = SimulationResult(x=cfg.x, level=level)

    def record():
        if keep_snapshots:
            res.snapshots.append((state.t, state.u_curr.copy()))
        if not math.isnan(level):
            xc = front_position(res.x, state.u_curr, level)
            if xc is not None:
                res.crossings.append((state.t, xc))

    record()
    remaining = cfg.n_steps
    while remaining > 0:
        k = min(cfg.output_every, remaining)
        _advance(state, cfg, k)
        remaining -= k
        record()
    return res


def measure_speed(crossings, t_window=None) -> SpeedFit:
    """Least-squares slope of front position against time.

    The default window is ``[5, 0.8 * t_last]``.
    """
    pts = sorted((float(t), float(x)) for t, x in crossings)
    if not pts:
        raise NoFrontError("no front crossings recorded")
    if t_window is None:
        t_window = (5.0, 0.8 * pts[-1][0])
    lo, hi = t_window
    sel = [(t, x) for t, x in pts if lo <= t <= hi]
    if len(sel) < MIN_FIT_POINTS:
        raise NoFrontError(f"{len(sel)} crossings in window {t_window}; need {MIN_FIT_POINTS}")
    t, x = np.array(sel).T
    design = np.column_stack((t, np.ones_like(t)))
    (slope, icpt), *_ = np.linalg.lstsq(design, x, rcond=None)
    rms = float(np.sqrt(np.mean((x - (slope * t + icpt)) ** 2)))
    return SpeedFit(sel, float(slope), float(icpt), rms)


def energy(state: FieldState, cfg: GridConfig) -> float:
    """Discrete energy between the two stored time levels.

    ``sum dx [u_t^2/2 + u_x^2/2 - u^2/2 + u^4/4]`` with ``u_t`` the difference
    of the two levels, the gradient term as the product of both levels'
    gradients and the potential averaged over the two levels. Pointwise terms
    use trapezoid weights so a constant field integrates over ``x_max - x_min``.
    """
    dx, dt = cfg.dx, cfg.dt
    u0, u1 = state.u_prev, state.u_curr
    w = np.full(u1.shape, dx)
    w[0] = w[-1] = 0.5 * dx
    ut = (u1 - u0) / dt
    pot = 0.5 * ((-0.5 * u1**2 + 0.25 * u1**4) + (-0.5 * u0**2 + 0.25 * u0**4))
    grad = (np.diff(u1) / dx) * (np.diff(u0) / dx)
    return float(np.sum(w * (0.5 * ut**2 + pot)) + np.sum(dx * 0.5 * grad))
