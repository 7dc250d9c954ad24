"""Factorization of ``f'' + beta f' + g(f) = 0`` for cubic ``g`` with ``g(0) = 0``.

The operator is written as ``(D - phi2(f)) (D - phi1(f)) f`` with linear
factors ``phi1 = a (f - r1)`` and ``phi2 = (c/a) (f - r2)``. Expanding gives
``g = f phi1 phi2`` and ``beta = -(phi1 + phi2 + f dphi1/df)``; the ``f``
coefficient of the latter vanishes iff ``a**2 = -c/2``, which leaves the
constant ``beta = a r1 + (c/a) r2``. Every solution of ``f' = phi1(f) f``
then solves the second-order equation, and that first-order equation
integrates to a logistic front.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import expit

from .algebra import COMPLEX_PAIR, Poly, as_poly, poly_eval, quadratic_roots
from .errors import (
    DegenerateNonlinearityError,
    NoRealSplitError,
    TrivialKinkError,
    UnsupportedNonlinearityError,
)


@dataclass(frozen=True)
class SplitCubic:
    """``g(f) = c * f * (f - r1) * (f - r2)`` with ``r1 <= r2``."""

    c: float
    r1: float
    r2: float

    def to_poly(self) -> Poly:
        return Poly([0.0, 1.0]) * Poly([-self.r1, 1.0]) * Poly([-self.r2, 1.0]) * self.c


@dataclass(frozen=True)
class Factorization:
    a: float
    r1: float
    r2: float
    c: float
    beta: float

    @property
    def phi1(self) -> Poly:
        return Poly([-self.a * self.r1, self.a])

    @property
    def phi2(self) -> Poly:
        b = self.c / self.a
        return Poly([-b * self.r2, b])

    def product(self) -> Poly:
        """``f * phi1 * phi2``; equals ``g`` up to rounding."""
        return Poly([0.0, 1.0]) * self.phi1 * self.phi2

    def beta_poly(self) -> Poly:
        """``-(phi1 + phi2 + f dphi1/df)`` as a polynomial in ``f``.

        Its linear coefficient is the constancy defect ``-(2a + c/a)``.
        """
        f_dphi1 = Poly([0.0, self.a])
        return (self.phi1 + self.phi2 + f_dphi1) * -1.0


@dataclass(frozen=True)
class KinkSolution:
    """Logistic front ``f(tau) = r_target / (1 + exp(kappa (tau - tau0)))``."""

    r_target: float
    kappa: float
    tau0: float = 0.0
    beta: float = 0.0

    def __call__(self, tau):
        return kink_eval(self, tau)[0]

    @property
    def left_value(self) -> float:
        """Limit as tau -> -inf."""
        if self.kappa > 0:
            return self.r_target
        if self.kappa < 0:
            return 0.0
        return 0.5 * self.r_target

    @property
    def right_value(self) -> float:
        if self.kappa > 0:
            return 0.0
        if self.kappa < 0:
            return self.r_target
        return 0.5 * self.r_target


def split_cubic(g) -> SplitCubic:
    g = as_poly(g)
    cs = g.coeffs
    if cs[0] != 0.0:
        raise UnsupportedNonlinearityError("g(0) must be 0")
    if g.degree < 3:
        raise DegenerateNonlinearityError("cubic coefficient of g is zero")
    if g.degree > 3:
        raise UnsupportedNonlinearityError(f"g has degree {g.degree}; only cubics are supported")
    c = cs[3]
    roots = quadratic_roots(cs[3], cs[2], cs[1])
    if roots.kind == COMPLEX_PAIR:
        raise NoRealSplitError("no real split: g(f)/f has complex roots")
    hi, lo = roots.roots
    return SplitCubic(c=c, r1=lo, r2=hi)


def enumerate_factorizations(g) -> list[Factorization]:
    """All real factorizations with constant beta.

    Ordered by sign of ``a`` (positive first), then by ``r1`` ascending.
    Returns ``[]`` when ``c > 0``.
    """
    s = split_cubic(g)
    if s.c == 0.0:
        raise DegenerateNonlinearityError("c = 0")
    if s.c > 0.0:
        return []
    mag = math.sqrt(-s.c / 2.0)
    out = []
    for a in (mag, -mag):
        for r1, r2 in ((s.r1, s.r2), (s.r2, s.r1)):
            out.append(Factorization(a=a, r1=r1, r2=r2, c=s.c, beta=a * r1 + (s.c / a) * r2))
    return out


def kink_from(fact: Factorization, tau0: float = 0.0) -> KinkSolution:
    if fact.a == 0.0:
        raise DegenerateNonlinearityError("a = 0")
    if fact.r1 == 0.0:
        # f' = a f^2 has no bounded front
        raise TrivialKinkError("r1 = 0 gives no bounded kink")
    return KinkSolution(r_target=fact.r1, kappa=fact.a * fact.r1, tau0=float(tau0), beta=fact.beta)


def kink_eval(k: KinkSolution, tau):
    """Closed-form ``(f, f', f'')`` of the logistic front.

    With ``s = 1/(1 + e^z)``, ``z = kappa (tau - tau0)``:
    ``f = r s``, ``f' = -r kappa s (1-s)``, ``f'' = r kappa**2 s (1-s) tanh(z/2)``.
    """
    z = k.kappa * (np.asarray(tau, dtype=float) - k.tau0)
    s = expit(-z)
    s1 = expit(z)
    f = k.r_target * s
    fp = -k.r_target * k.kappa * s * s1
    fpp = k.r_target * k.kappa**2 * s * s1 * np.tanh(0.5 * z)
    if np.ndim(z) == 0:
        return float(f), float(fp), float(fpp)
    return f, fp, fpp


def ode_residual(g, beta: float, k: KinkSolution, tau):
    """``f'' + beta f' + g(f)`` along the kink."""
    f, fp, fpp = kink_eval(k, tau)
    return fpp + beta * fp + poly_eval(g, f)
