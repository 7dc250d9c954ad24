"""Shooting checks for the frame ODE ``(1-alpha^2) f'' + alpha lambda0 f' + f - f^3 = 0``."""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import _kernels
from .errors import DomainError, NoFrontError, SingularFrameError
from .factorizer import KinkSolution, kink_eval

BLOWUP = 1e3
TRANSIENT_FRACTION = 0.1
SETTLE_TOL = 1e-6

MONOTONE_FRONT = "monotone-front"
OSCILLATORY = "oscillatory"
DIVERGED = "diverged"
# monotone, or a single turn, but not yet at an equilibrium
UNDETERMINED = "undetermined"


@dataclass(frozen=True, eq=False)
class Trajectory:
    taus: np.ndarray
    values: np.ndarray  # shape (n, 2): columns f, f'
    alpha: float
    lambda0: float
    step: float
    diverged: bool = False

    @property
    def f(self) -> np.ndarray:
        return self.values[:, 0]

    @property
    def fprime(self) -> np.ndarray:
        return self.values[:, 1]


def integrate(alpha, lambda0, f0, fp0, tau_span=(0.0, 20.0), step=1e-3) -> Trajectory:
    """Fixed-step classical RK4 from ``(f0, fp0)`` at ``tau_span[0]``.

    The run stops early, with ``diverged=True``, once ``|f|`` exceeds 1e3.
    """
    if abs(alpha) == 1.0:
        raise SingularFrameError("|alpha| = 1")
    t0, t1 = map(float, tau_span)
    if not step > 0 or not t1 > t0:
        raise DomainError("need step > 0 and a nonempty tau span")
    nsteps = int(round((t1 - t0) / step))
    fs, ps, n, diverged = _kernels.rk4_frame(float(alpha), float(lambda0), float(f0), float(fp0),
                                             float(step), nsteps, BLOWUP)
    taus = t0 + step * np.arange(n)
    values = np.column_stack((fs[:n], ps[:n]))
    return Trajectory(taus, values, float(alpha), float(lambda0), float(step), bool(diverged))


def _crossing(taus, f, level):
    d = f - level
    hit = np.nonzero(d == 0.0)[0]
    sc = np.nonzero(d[:-1] * d[1:] < 0.0)[0]
    cands = []
    if hit.size:
        cands.append((hit[0], taus[hit[0]]))
    if sc.size:
        i = sc[0]
        cands.append((i, taus[i] + (taus[i + 1] - taus[i]) * d[i] / (d[i] - d[i + 1])))
    if not cands:
        return None
    return min(cands)[1]


def compare_to_kink(traj: Trajectory, k: KinkSolution) -> float:
    """Max deviation from ``k`` after re-centering it on the trajectory's midpoint crossing."""
    if traj.diverged:
        raise DomainError("trajectory diverged")
    level = 0.5 * k.r_target
    tc = None if level == 0.0 else _crossing(traj.taus, traj.f, level)
    if tc is None:
        raise NoFrontError(f"trajectory never crosses {level}")
    shifted = replace(k, tau0=float(tc))
    return float(np.max(np.abs(traj.f - kink_eval(shifted, traj.taus)[0])))


def count_sign_changes(x) -> int:
    s = np.sign(x)
    s = s[s != 0]
    return int(np.count_nonzero(s[1:] != s[:-1]))


def classify(traj: Trajectory) -> str:
    """Qualitative type of a trajectory.

    After dropping the first 10% of samples: two or more sign changes of f'
    is oscillatory; no sign change with ``|f - f^3| < 1e-6`` at the end is a
    monotone front. Anything else (a single turn, or a monotone tail that
    has not reached an equilibrium) is ``undetermined``.
    """
    if traj.diverged:
        return DIVERGED
    n0 = int(math.ceil(TRANSIENT_FRACTION * (len(traj.taus) - 1)))
    changes = count_sign_changes(traj.fprime[n0:])
    if changes >= 2:
        return OSCILLATORY
    f_end = traj.f[-1]
    if changes == 0 and abs(f_end - f_end**3) < SETTLE_TOL:
        return MONOTONE_FRONT
    return UNDETERMINED


def shoot_from_midpoint(alpha, lambda0, k: KinkSolution, tau_span=(0.0, 20.0), step=1e-3) -> Trajectory:
    """Integrate from the kink midpoint ``(r/2, f'(tau0))`` over ``tau_span``."""
    _, fp_mid, _ = kink_eval(k, k.tau0)
    return integrate(alpha, lambda0, 0.5 * k.r_target, fp_mid, tau_span, step)
