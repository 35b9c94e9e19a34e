"""Extremes of the limiting demerit formulae.

The shift parameters are eliminated first (the best offset of ``Omega(x, .)``
is known exactly), leaving a one-variable problem in ``Lambda`` which is
solved by a dense grid, a bounded golden-section refinement and, where the
closed forms give a derivative with a sign change, a final root polish of
that derivative.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .asym import (
    AsymptoticCase,
    Family,
    Subcase,
    acdf,
    omega,
    phi_closed,
    phi_prime,
    psi_closed,
    psi_prime,
)
from .errors import BadArgs, NoSignChange, ZeroX

LAMBDA_MAX = 4.0
GRID_STEP = 1e-3
REFINE_TOL = 1e-10


@dataclass(frozen=True)
class CubicSpec:
    """``a3 x**3 + a2 x**2 + a1 x + a0`` with a bracket isolating one real root."""

    coeffs: tuple[float, float, float, float]
    bracket: tuple[float, float]

    def __call__(self, x: float) -> float:
        a3, a2, a1, a0 = self.coeffs
        return ((a3 * x + a2) * x + a1) * x + a0

    def __str__(self) -> str:
        a3, a2, a1, a0 = self.coeffs
        return f"{a3:g}x^3{a2:+g}x^2{a1:+g}x{a0:+g}"


def cubic_root(spec: CubicSpec) -> float:
    """The unique root of the cubic inside ``spec.bracket``."""
    lo, hi = spec.bracket
    flo, fhi = spec(lo), spec(hi)
    if flo == 0:
        return float(lo)
    if fhi == 0:
        return float(hi)
    if flo * fhi > 0:
        raise NoSignChange(f"{spec} has no sign change on [{lo}, {hi}]")
    return float(brentq(spec, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200))


CUBIC_LAMBDA_TRUNC = CubicSpec((2, 0, -6, 3), (0.5, 1.0))
CUBIC_LAMBDA_APP = CubicSpec((1, 0, -12, 12), (1.0, 2.0))
CUBIC_MIN_PAIR = CubicSpec((6, -42, 54, -19), (0.0, 0.7))
CUBIC_MIN_QUADRATIC = CubicSpec((3, -33, 33, -7), (0.0, 2 / 3))
CUBIC_MF_PAIR = CubicSpec((19, -54, 42, -6), (1.3, 2.0))
CUBIC_MF_QUADRATIC = CubicSpec((7, -33, 33, -3), (3.0, 4.0))

LAMBDA_TRUNC = cubic_root(CUBIC_LAMBDA_TRUNC)
LAMBDA_APP = cubic_root(CUBIC_LAMBDA_APP)
MIN_CDF_PAIR = cubic_root(CUBIC_MIN_PAIR)
MIN_CDF_QUADRATIC = cubic_root(CUBIC_MIN_QUADRATIC)
MAX_CMF_PAIR = cubic_root(CUBIC_MF_PAIR)
MAX_CMF_QUADRATIC = cubic_root(CUBIC_MF_QUADRATIC)


@dataclass(frozen=True)
class ShiftSet:
    """Minimisers of ``y -> Omega(x, y)``: ``[lo, hi] + period * Z``."""

    period: float
    lo: float
    hi: float
    value: float

    def contains(self, y: float, tol: float = 1e-12) -> bool:
        r = (y - self.lo) % self.period
        return r <= self.hi - self.lo + tol or r >= self.period - tol

    @property
    def center(self) -> float:
        return (self.lo + self.hi) / 2


def optimal_shift_set(x: float) -> ShiftSet:
    """Where ``Omega(x, y)`` is smallest as a function of y, and the smallest value."""
    if x == 0:
        raise ZeroX("x must be nonzero")
    ax = abs(float(x))
    value = omega(ax, ax / 2)
    if ax <= 2:
        return ShiftSet(ax, ax / 2, ax / 2, value)
    return ShiftSet(ax, 1.0, ax - 1.0, value)


@dataclass(frozen=True)
class OptimumReport:
    subcase: Subcase
    argmin: dict
    min_value: float
    matched_root: float
    residual: float
    cubic: CubicSpec | None = None


def _optimal_parameters(subcase: Subcase, lam: float, family: Family, p: int) -> dict:
    """Shift parameters minimising the formula at this Lambda."""
    best_y = optimal_shift_set(1.0 / lam).center
    params: dict = {}
    if subcase in (Subcase.SAME, Subcase.QUADRATIC):
        params["delta"] = best_y * lam
    if subcase in (Subcase.REVERSING, Subcase.QUADRATIC):
        # 1 + Sigma'/Lambda = best_y
        sigma_prime = (best_y - 1.0) * lam
        shift = 0.5 if family is Family.ADDITIVE and p % 2 == 1 else 0.0
        params["sigma"] = sigma_prime - shift
    return params


def reduced_objective(subcase: Subcase, lam: float, family: Family = Family.ADDITIVE, p: int = 2) -> float:
    """The formula with its shift variables set optimally for this Lambda."""
    params = _optimal_parameters(subcase, lam, family, p)
    return acdf(AsymptoticCase(family, subcase, lam, p=p, **params))


def _reduced_derivative(subcase: Subcase, lam: float) -> float:
    if subcase is Subcase.UNRELATED:
        return phi_prime(lam)
    if subcase is Subcase.QUADRATIC:
        return -4 / 3 + phi_prime(lam) + 2 * psi_prime(lam)
    return -2 / 3 + phi_prime(lam) + psi_prime(lam)


def reduced_closed(subcase: Subcase, lam: float) -> float:
    """Closed form of :func:`reduced_objective` in terms of Phi and Psi."""
    if subcase is Subcase.UNRELATED:
        return phi_closed(lam)
    if subcase is Subcase.QUADRATIC:
        return -4 / 3 * lam + phi_closed(lam) + 2 * psi_closed(lam)
    return -2 / 3 * lam + phi_closed(lam) + psi_closed(lam)


_MATCH = {
    Subcase.SAME: CUBIC_MIN_PAIR,
    Subcase.REVERSING: CUBIC_MIN_PAIR,
    Subcase.QUADRATIC: CUBIC_MIN_QUADRATIC,
    Subcase.UNRELATED: None,
}


def minimize_acdf(subcase: Subcase | str, family: Family | str | None = None, p: int = 2) -> OptimumReport:
    """Global minimum over Lambda in (0, 4] and the optimal shifts."""
    subcase = Subcase(subcase) if isinstance(subcase, str) else subcase
    if family is None:
        family = Family.MULTIPLICATIVE if subcase is Subcase.QUADRATIC else Family.ADDITIVE
    family = Family(family) if isinstance(family, str) else family
    if subcase is Subcase.QUADRATIC and family is not Family.MULTIPLICATIVE:
        raise BadArgs("the quadratic subcase is multiplicative only")

    def obj(lam: float) -> float:
        return reduced_objective(subcase, lam, family, p)

    grid = np.arange(1, int(round(LAMBDA_MAX / GRID_STEP)) + 1) * GRID_STEP
    values = np.array([obj(x) for x in grid])
    i = int(np.argmin(values))  # first occurrence: ties resolve to the smallest Lambda
    lo = grid[max(i - 1, 0)] if i > 0 else grid[0] / 2
    hi = grid[min(i + 1, grid.size - 1)]
    res = minimize_scalar(obj, bounds=(lo, hi), method="bounded", options={"xatol": REFINE_TOL})
    lam = float(res.x)
    if subcase is not Subcase.UNRELATED:
        # the minimum is smooth; polish with the derivative's root
        a, b = lam - 1e-6, lam + 1e-6
        if _reduced_derivative(subcase, a) < 0 < _reduced_derivative(subcase, b):
            lam = float(brentq(lambda t: _reduced_derivative(subcase, t), a, b, xtol=1e-15))
    value = obj(lam)
    if values[i] < value:
        lam, value = float(grid[i]), float(values[i])
    cubic = _MATCH[subcase]
    root = 1.0 if cubic is None else cubic_root(cubic)
    argmin = {"lam": lam, **_optimal_parameters(subcase, lam, family, p)}
    if subcase is Subcase.UNRELATED:
        argmin["lam_interval"] = (0.0, 1.0)
    return OptimumReport(subcase, argmin, value, root, abs(value - root), cubic)


def appended_reversing_value() -> float:
    """Limiting CDF of reversing pairs at Lambda_app with the best shift sum."""
    return acdf(AsymptoticCase(Family.ADDITIVE, Subcase.REVERSING, LAMBDA_APP, sigma=0.5 - LAMBDA_APP))
