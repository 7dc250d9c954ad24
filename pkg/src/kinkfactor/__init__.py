"""Closed-form traveling kinks of the damped cubic wave equation.

``u_tt - u_xx + lambda0 u_t - u + u^3 = 0`` admits logistic fronts moving at
speed ``alpha`` only on special curves in the (alpha, lambda0) plane. This
package finds them by factorizing the traveling-frame ODE and checks them
against RK4 shooting and a finite-difference simulation.
"""
__version__ = "0.1.0"

from .algebra import Poly, RootPair, poly_derivative, poly_eval, quadratic_roots
from .factorizer import (
    Factorization,
    KinkSolution,
    SplitCubic,
    enumerate_factorizations,
    kink_eval,
    kink_from,
    ode_residual,
    split_cubic,
)
from .frame import (
    Branch,
    CurvePoint,
    TravelingFrame,
    beta_of,
    exact_alphas,
    exact_kink,
    paper_alphas,
    sweep_curves,
)

__all__ = [
    "Poly", "RootPair", "poly_eval", "poly_derivative", "quadratic_roots",
    "SplitCubic", "Factorization", "KinkSolution", "split_cubic", "enumerate_factorizations",
    "kink_from", "kink_eval", "ode_residual",
    "Branch", "CurvePoint", "TravelingFrame", "beta_of", "paper_alphas", "exact_alphas",
    "exact_kink", "sweep_curves",
]
