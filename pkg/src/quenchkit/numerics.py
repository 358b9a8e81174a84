"""Quadrature, fixed-step ODE integration, and finite differences.

These routines serve double duty: the finite-difference helper is production
code (it realizes the force as the negative slope of the energy curve), while
the quadrature and ODE integrators act as independent oracles for the closed
forms implemented elsewhere in the package.  They are deliberately simple and
reproducible -- adaptive Simpson bisection and classical fixed-step RK4, no
adaptive step controllers -- so that a reimplementation in any language
produces the same numbers.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np


class QuadratureConvergenceError(ArithmeticError):
    """Subdivision budget exhausted before the tolerance was met.

    Carries the best available estimate in ``best_estimate``.
    """

    def __init__(self, message: str, best_estimate: float):
        super().__init__(message)
        self.best_estimate = best_estimate


class OdeDivergenceError(ArithmeticError):
    """The ODE integration produced non-finite intermediate values."""


@dataclass(frozen=True)
class QuadratureSpec:
    """Absolute tolerance and bisection-depth budget for `integrate`."""

    tolerance: float = 1e-10
    max_subdivisions: int = 48

    def __post_init__(self):
        if not self.tolerance > 0.0:
            raise ValueError(f"tolerance must be positive, got {self.tolerance}")
        if self.max_subdivisions < 1:
            raise ValueError(
                f"max_subdivisions must be >= 1, got {self.max_subdivisions}"
            )


@dataclass(frozen=True)
class OdeSpec:
    """Resolution for `ode_evolve`, as RK4 steps per drive period.

    The integration window passed to `ode_evolve` is treated as one drive
    period; callers integrating over several periods, or systems whose
    internal frequencies exceed the drive, scale the count accordingly.  The
    floor of 100 keeps even the fastest relevant frequency sampled by at
    least ~20 points per period in the intended usage.
    """

    steps_per_period: int = 10_000

    def __post_init__(self):
        if self.steps_per_period < 100:
            raise ValueError(
                f"steps_per_period must be >= 100, got {self.steps_per_period}"
            )


class OdeResult(NamedTuple):
    state: np.ndarray
    norm_drift: float


def integrate(
    f: Callable[[float], float],
    a: float,
    b: float,
    spec: QuadratureSpec | None = None,
) -> float:
    """Integrate ``f`` over ``[a, b]`` by adaptive Simpson bisection.

    Parameters
    ----------
    f : callable
        Real-valued integrand of one real variable, finite on ``[a, b]``.
    a, b : float
        Integration bounds, ``a <= b``.
    spec : QuadratureSpec, optional
        Absolute tolerance and subdivision budget.

    Returns
    -------
    float
        Approximation with estimated absolute error below ``spec.tolerance``.

    Raises
    ------
    QuadratureConvergenceError
        If some subinterval hits the subdivision budget before meeting its
        share of the tolerance.  The best estimate is attached.
    """
    if spec is None:
        spec = QuadratureSpec()
    if a > b:
        raise ValueError(f"bounds must satisfy a <= b, got a={a}, b={b}")
    if a == b:
        return 0.0
    fa = f(a)
    fb = f(b)
    m = 0.5 * (a + b)
    fm = f(m)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    value, converged = _simpson_panel(
        f, a, b, fa, fm, fb, whole, spec.tolerance, spec.max_subdivisions
    )
    if not converged:
        raise QuadratureConvergenceError(
            f"quadrature on [{a}, {b}] did not reach tolerance "
            f"{spec.tolerance} within {spec.max_subdivisions} subdivisions",
            best_estimate=value,
        )
    return value


def _simpson_panel(f, a, b, fa, fm, fb, whole, tol, depth):
    m = 0.5 * (a + b)
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = f(lm)
    frm = f(rm)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    delta = left + right - whole
    # 15 = 2^4 - 1: Richardson factor for Simpson's O(h^4) error
    if abs(delta) <= 15.0 * tol:
        return left + right + delta / 15.0, True
    if depth <= 0:
        return left + right + delta / 15.0, False
    lval, lok = _simpson_panel(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
    rval, rok = _simpson_panel(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    return lval + rval, lok and rok


def ode_evolve(
    rhs: Callable[[float, np.ndarray], np.ndarray],
    y0: np.ndarray,
    t_end: float,
    spec: OdeSpec | None = None,
) -> OdeResult:
    """Propagate ``y' = rhs(t, y)`` over ``[0, t_end]`` with classical RK4.

    ``y0`` must be a complex 2-vector normalized to 1 within 1e-12.  The
    returned ``norm_drift`` is the largest deviation of the state norm from
    one seen during the integration; for a Hermitian generator it measures
    pure integrator error.

    Raises
    ------
    OdeDivergenceError
        If the state stops being finite.
    """
    if spec is None:
        spec = OdeSpec()
    y = np.asarray(y0, dtype=complex).copy()
    if y.shape != (2,):
        raise ValueError(f"y0 must be a complex 2-vector, got shape {y.shape}")
    norm0 = float(np.linalg.norm(y))
    if abs(norm0 - 1.0) > 1e-12:
        raise ValueError(f"y0 must be normalized to 1 within 1e-12, |y0| = {norm0}")
    if t_end == 0.0:
        return OdeResult(y, 0.0)
    n = spec.steps_per_period
    h = t_end / n
    drift = 0.0
    with np.errstate(over="ignore", invalid="ignore"):
        for step in range(n):
            t = step * h
            k1 = np.asarray(rhs(t, y))
            k2 = np.asarray(rhs(t + 0.5 * h, y + 0.5 * h * k1))
            k3 = np.asarray(rhs(t + 0.5 * h, y + 0.5 * h * k2))
            k4 = np.asarray(rhs(t + h, y + h * k3))
            y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            norm = float(np.linalg.norm(y))
            if not np.isfinite(norm):
                raise OdeDivergenceError(
                    f"state became non-finite at t = {t + h} (step {step + 1}/{n})"
                )
            drift = max(drift, abs(norm - 1.0))
    return OdeResult(y, drift)


def central_difference(f: Callable[[float], float], x: float, h: float) -> float:
    """Second-order central difference estimate of ``f'(x)`` with step ``h``."""
    if not h > 0.0:
        raise ValueError(f"step must be positive, got {h}")
    return (f(x + h) - f(x - h)) / (2.0 * h)
