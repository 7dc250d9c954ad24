"""Traveling frame ``tau = x - alpha t`` and the admissible (alpha, lambda0) curves.

Two curve families are provided:

``paper``
    ``alpha**2 +/- (sqrt(2)/3) lambda0 alpha - 1 = 0``, obtained by matching
    ``beta = alpha lambda0 / (1 - alpha**2)`` to ``+/-3/sqrt(2)`` while keeping
    the nonlinearity ``f - f**3`` unscaled.
``exact``
    Dividing the frame ODE ``(1 - alpha**2) f'' + alpha lambda0 f' + f - f**3 = 0``
    by ``1 - alpha**2`` scales the nonlinearity too, so the admissible damping
    becomes ``+/-(3/sqrt(2)) / sqrt(1 - alpha**2)`` and the curve is
    ``alpha**2 (2 lambda0**2 + 9) = 9``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .algebra import Poly, quadratic_roots
from .errors import NotAdmissibleError, RangeError, SingularFrameError
from .factorizer import KinkSolution, enumerate_factorizations, kink_eval, kink_from

SQRT2_3 = math.sqrt(2.0) / 3.0
BETA_FACTOR = 3.0 / math.sqrt(2.0)
ON_CURVE_TOL = 1e-9


class Branch(str, enum.Enum):
    ALPHA1 = "alpha1"
    ALPHA2 = "alpha2"
    ALPHA3 = "alpha3"
    ALPHA4 = "alpha4"
    EXACT_PLUS = "exact_plus"
    EXACT_MINUS = "exact_minus"

    @property
    def is_paper(self) -> bool:
        return self.value.startswith("alpha")


PAPER_BRANCHES = (Branch.ALPHA1, Branch.ALPHA2, Branch.ALPHA3, Branch.ALPHA4)
EXACT_BRANCHES = (Branch.EXACT_PLUS, Branch.EXACT_MINUS)
MODELS = ("paper", "exact")


@dataclass(frozen=True)
class TravelingFrame:
    alpha: float
    lambda0: float

    @property
    def beta(self) -> float:
        return beta_of(self.alpha, self.lambda0)


@dataclass(frozen=True)
class CurvePoint:
    lambda0: float
    alpha: float
    branch: Branch
    residual: float

    @property
    def subluminal(self) -> bool:
        """False for paper-branch points with ``|alpha| >= 1`` (no exact kink there)."""
        return abs(self.alpha) < 1.0


def beta_of(alpha: float, lambda0: float) -> float:
    if abs(alpha) == 1.0:
        raise SingularFrameError("|alpha| = 1: the frame equation loses its second-order term")
    return alpha * lambda0 / ((1.0 - alpha) * (1.0 + alpha))


def paper_residual(alpha: float, lambda0: float, branch: Branch) -> float:
    sign = 1.0 if branch in (Branch.ALPHA1, Branch.ALPHA2) else -1.0
    return abs(alpha * alpha + sign * SQRT2_3 * lambda0 * alpha - 1.0)


def exact_residual(alpha: float, lambda0: float) -> float:
    return abs(alpha * alpha * (2.0 * lambda0 * lambda0 + 9.0) - 9.0)


def paper_alphas(lambda0: float) -> tuple[CurvePoint, CurvePoint, CurvePoint, CurvePoint]:
    """alpha1 > alpha2 from the upper-sign quadratic, alpha3 > alpha4 from the lower."""
    if lambda0 < 0:
        raise RangeError("lambda0 must be >= 0")
    b = SQRT2_3 * lambda0
    a1, a2 = quadratic_roots(1.0, b, -1.0).roots
    a3, a4 = quadratic_roots(1.0, -b, -1.0).roots
    return tuple(
        CurvePoint(lambda0, a, br, paper_residual(a, lambda0, br))
        for a, br in zip((a1, a2, a3, a4), PAPER_BRANCHES)
    )


def _exact_condition(alpha: float, lambda0: float, sign: float) -> float:
    # alpha lambda0/(1-alpha^2) = sign*BETA_FACTOR/sqrt(1-alpha^2), times (1-alpha^2)
    return alpha * lambda0 - sign * BETA_FACTOR * math.sqrt((1.0 - alpha) * (1.0 + alpha))


def exact_alpha_closed_form(lambda0: float) -> float:
    return 3.0 / math.sqrt(2.0 * lambda0 * lambda0 + 9.0)


def exact_alphas(lambda0: float) -> tuple[CurvePoint, CurvePoint]:
    """Velocities ``(+alpha, -alpha)`` on the exact admissibility curve.

    Solved by bracketing root-finding on the admissibility condition and then
    checked against ``3/sqrt(2 lambda0**2 + 9)``.
    """
    if not lambda0 > 0:
        raise NotAdmissibleError("the exact branch needs lambda0 > 0 (lambda0 = 0 is the |alpha| = 1 limit)")
    plus = brentq(_exact_condition, 0.0, 1.0, args=(lambda0, 1.0), xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=200)
    minus = brentq(_exact_condition, -1.0, 0.0, args=(lambda0, -1.0), xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=200)
    ref = exact_alpha_closed_form(lambda0)
    if abs(plus - ref) > 1e-12 or abs(minus + ref) > 1e-12:
        raise ArithmeticError(f"root finder disagrees with closed form at lambda0={lambda0}")
    return (
        CurvePoint(lambda0, plus, Branch.EXACT_PLUS, exact_residual(plus, lambda0)),
        CurvePoint(lambda0, minus, Branch.EXACT_MINUS, exact_residual(minus, lambda0)),
    )


def exact_kink(alpha: float, lambda0: float, target: float = -1.0, tau0: float = 0.0) -> KinkSolution:
    """Kink of the frame ODE at an exact-branch point, connecting 0 and ``target``.

    ``target=-1`` gives ``f = -1/(1 + exp(kappa tau))`` with ``kappa`` of the
    sign of ``alpha``: the -1 state sits behind a front moving with velocity
    ``alpha``. ``kink.beta`` is the standard-form damping ``alpha lambda0/(1-alpha**2)``.
    """
    if target not in (-1.0, 1.0):
        raise NotAdmissibleError("target must be -1 or +1")
    if not lambda0 > 0:
        raise NotAdmissibleError("exact kinks need lambda0 > 0")
    if abs(alpha) >= 1.0:
        raise NotAdmissibleError("exact kinks need |alpha| < 1")
    ref = exact_alpha_closed_form(lambda0)
    if abs(abs(alpha) - ref) > ON_CURVE_TOL or alpha == 0.0:
        raise NotAdmissibleError(f"(alpha={alpha}, lambda0={lambda0}) is not on the exact curve (|alpha| = {ref})")
    scale = 1.0 / ((1.0 - alpha) * (1.0 + alpha))
    beta = beta_of(alpha, lambda0)
    facts = [
        fa for fa in enumerate_factorizations(Poly([0.0, scale, 0.0, -scale]))
        if abs(fa.r1 - target) < 1e-12 and math.copysign(1.0, fa.beta) == math.copysign(1.0, beta)
    ]
    fact = min(facts, key=lambda fa: abs(fa.beta - beta))
    if abs(fact.beta - beta) > 1e-6 * max(1.0, abs(beta)):
        raise NotAdmissibleError("no factorization matches the frame damping")
    return kink_from(fact, tau0)


def frame_residual(alpha: float, lambda0: float, k: KinkSolution, tau):
    """``(1 - alpha**2) f'' + alpha lambda0 f' + f - f**3`` along ``k``."""
    f, fp, fpp = kink_eval(k, tau)
    return (1.0 - alpha) * (1.0 + alpha) * fpp + alpha * lambda0 * fp + f - f**3


def sweep_curves(model: str, lambda0_min: float, lambda0_max: float, n: int) -> list[CurvePoint]:
    """Sample every branch of ``model`` on ``n`` equispaced lambda0 values.

    Output is ordered by branch, then lambda0. On the exact model the
    lambda0 = 0 sample is the ``|alpha| = 1`` limit point.
    """
    if model not in MODELS:
        raise RangeError(f"unknown model {model!r}")
    if not (0.0 <= lambda0_min < lambda0_max) or int(n) < 2:
        raise RangeError("need 0 <= lambda0_min < lambda0_max and n >= 2")
    lams = np.linspace(lambda0_min, lambda0_max, int(n))
    if model == "paper":
        per = [paper_alphas(float(lam)) for lam in lams]
    else:
        per = []
        for lam in lams:
            lam = float(lam)
            if lam == 0.0:
                per.append((CurvePoint(0.0, 1.0, Branch.EXACT_PLUS, 0.0),
                            CurvePoint(0.0, -1.0, Branch.EXACT_MINUS, 0.0)))
            else:
                per.append(exact_alphas(lam))
    rows = [list(col) for col in zip(*per)]
    return [p for col in rows for p in col]
