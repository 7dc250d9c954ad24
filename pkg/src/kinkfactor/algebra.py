"""Dense real polynomials of degree <= 4 and a stable quadratic solver."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import DegenerateInputError

MAX_DEGREE = 4

TWO_REAL = "two-real"
DOUBLE_REAL = "double-real"
COMPLEX_PAIR = "complex-pair"


@dataclass(frozen=True, init=False)
class Poly:
    """Polynomial in ``f``; ``coeffs[i]`` multiplies ``f**i``.

    Trailing zero coefficients are stripped on construction, so the zero
    polynomial is stored as ``(0.0,)``.
    """

    coeffs: tuple[float, ...]

    def __init__(self, coeffs: Sequence[float]):
        cs = [float(c) for c in coeffs] or [0.0]
        while len(cs) > 1 and cs[-1] == 0.0:
            cs.pop()
        if len(cs) - 1 > MAX_DEGREE:
            raise DegenerateInputError(f"degree {len(cs) - 1} exceeds {MAX_DEGREE}")
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        # zero polynomial reported as degree 0
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return self.coeffs == (0.0,)

    def __call__(self, x):
        return poly_eval(self, x)

    def __add__(self, other: Poly) -> Poly:
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0.0,) * (n - len(self.coeffs))
        b = other.coeffs + (0.0,) * (n - len(other.coeffs))
        return Poly([x + y for x, y in zip(a, b)])

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly([c * float(other) for c in self.coeffs])
        out = [0.0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__


@dataclass(frozen=True)
class RootPair:
    kind: str
    roots: tuple[float, float]

    @property
    def is_real(self) -> bool:
        return self.kind != COMPLEX_PAIR


def as_poly(p) -> Poly:
    return p if isinstance(p, Poly) else Poly(p)


def poly_eval(p, x):
    """Horner evaluation; works elementwise on numpy arrays."""
    cs = as_poly(p).coeffs
    acc = cs[-1] + 0.0 * x
    for c in reversed(cs[:-1]):
        acc = acc * x + c
    return acc


def poly_derivative(p) -> Poly:
    cs = as_poly(p).coeffs
    if len(cs) == 1:
        return Poly([0.0])
    return Poly([i * c for i, c in enumerate(cs) if i > 0])


def quadratic_roots(c2: float, c1: float, c0: float) -> RootPair:
    """Roots of ``c2*x**2 + c1*x + c0``.

    Uses the cancellation-free branch ``q = -(c1 + sign(c1)*sqrt(D))/2`` and
    recovers the partner root from the product ``c0/c2``. Real roots come
    back in descending order; a complex pair is returned as ``(re, im)``
    with ``im > 0``.
    """
    if c2 == 0.0:
        raise DegenerateInputError("leading coefficient c2 must be nonzero")
    disc = c1 * c1 - 4.0 * c2 * c0
    tol = 1e-14 * max(1.0, c1 * c1, abs(c2 * c0))
    if abs(disc) <= tol:
        r = -c1 / (2.0 * c2)
        return RootPair(DOUBLE_REAL, (r, r))
    if disc < 0.0:
        return RootPair(COMPLEX_PAIR, (-c1 / (2.0 * c2), math.sqrt(-disc) / (2.0 * abs(c2))))
    q = -0.5 * (c1 + math.copysign(math.sqrt(disc), c1))
    x1, x2 = q / c2, c0 / q
    return RootPair(TWO_REAL, (max(x1, x2), min(x1, x2)))
