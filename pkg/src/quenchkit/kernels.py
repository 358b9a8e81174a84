"""Hot numeric kernels, numba-compiled when available.

Three inner loops dominate the runtime of the scans: the expansion
coefficients of the frozen well state (evaluated up to 10^4 levels per grid
point), the fixed-step RK4 propagator for the driven two-level system, and
the single-cycle return-probability curve (10^4+ grid points).  Each has a
plain NumPy implementation and a scalar-loop twin compiled with
``numba.njit``.

Backend selection happens at import time: numba is used when importable
unless the environment variable ``QUENCHKIT_NO_NUMBA`` is set to a truthy
value (1/true/yes/on).  ``BACKEND`` records the choice.  The uncompiled
implementations stay importable either way; ``benchmarks/bench_backends.py``
times the two side by side.
"""

from __future__ import annotations

import math
import os

import numpy as np

_FLAG = os.environ.get("QUENCHKIT_NO_NUMBA", "").strip().lower()
NUMBA_DISABLED = _FLAG in {"1", "true", "yes", "on"}

try:
    import numba
except ImportError:  # pragma: no cover - exercised via QUENCHKIT_NO_NUMBA instead
    numba = None

NUMBA_AVAILABLE = numba is not None


def _expansion_coefficients_loop(gamma, n_max, resonance_tol):
    # Overlap of the old ground state with post-quench level n, n = 1..n_max.
    b = np.zeros(n_max)
    if abs(gamma - 1.0) <= resonance_tol:
        b[0] = 1.0
        return b
    if gamma < 1.0:
        pref = 2.0 * math.sqrt(gamma) * math.sin(math.pi * gamma)
        for i in range(n_max):
            n = float(i + 1)
            sign = -1.0 if i % 2 == 0 else 1.0  # (-1)^n, n odd -> -1
            b[i] = sign * pref * n / (math.pi * (gamma * gamma - n * n))
        return b
    nearest = int(math.floor(gamma + 0.5))
    resonant = 1 <= nearest <= n_max and abs(gamma - nearest) <= resonance_tol * nearest
    pref = 2.0 * gamma * math.sqrt(gamma)
    for i in range(n_max):
        n = float(i + 1)
        if resonant and i + 1 == nearest:
            b[i] = 1.0 / math.sqrt(gamma)
        else:
            b[i] = pref * math.sin(n * math.pi / gamma) / (math.pi * (gamma * gamma - n * n))
    return b


def _expansion_coefficients_numpy(gamma, n_max, resonance_tol):
    if abs(gamma - 1.0) <= resonance_tol:
        b = np.zeros(n_max)
        b[0] = 1.0
        return b
    n = np.arange(1.0, n_max + 1.0)
    if gamma < 1.0:
        sign = np.where(n % 2.0 == 1.0, -1.0, 1.0)
        pref = 2.0 * math.sqrt(gamma) * math.sin(math.pi * gamma)
        return sign * pref * n / (np.pi * (gamma * gamma - n * n))
    nearest = int(math.floor(gamma + 0.5))
    resonant = 1 <= nearest <= n_max and abs(gamma - nearest) <= resonance_tol * nearest
    den = np.pi * (gamma * gamma - n * n)
    if resonant:
        den[nearest - 1] = 1.0  # dummy, row is overwritten below
    b = 2.0 * gamma * math.sqrt(gamma) * np.sin(n * np.pi / gamma) / den
    if resonant:
        b[nearest - 1] = 1.0 / math.sqrt(gamma)
    return b


def _spin_rhs(t, y0, y1, alpha, omega, omega0):
    # i dpsi/dt = (omega0/2) n(t).sigma psi with
    # n(t) = (sin a cos wt, sin a sin wt, cos a)
    ca = math.cos(alpha)
    sa = math.sin(alpha)
    ph = omega * t
    off = sa * complex(math.cos(ph), -math.sin(ph))
    g0 = -0.5j * omega0 * (ca * y0 + off * y1)
    g1 = -0.5j * omega0 * (off.conjugate() * y0 - ca * y1)
    return g0, g1


def _spin_rk4_loop(alpha, omega, omega0, t_end, n_steps, up0, dn0, stride):
    # Fixed-step RK4; records the state every `stride` steps (plus t = 0).
    n_rec = n_steps // stride
    states = np.empty((n_rec + 1, 2), np.complex128)
    states[0, 0] = up0
    states[0, 1] = dn0
    h = t_end / n_steps
    y0 = up0
    y1 = dn0
    drift = 0.0
    rec = 1
    for step in range(n_steps):
        t = step * h
        a0, a1 = _spin_rhs(t, y0, y1, alpha, omega, omega0)
        b0, b1 = _spin_rhs(t + 0.5 * h, y0 + 0.5 * h * a0, y1 + 0.5 * h * a1, alpha, omega, omega0)
        c0, c1 = _spin_rhs(t + 0.5 * h, y0 + 0.5 * h * b0, y1 + 0.5 * h * b1, alpha, omega, omega0)
        d0, d1 = _spin_rhs(t + h, y0 + h * c0, y1 + h * c1, alpha, omega, omega0)
        y0 = y0 + (h / 6.0) * (a0 + 2.0 * b0 + 2.0 * c0 + d0)
        y1 = y1 + (h / 6.0) * (a1 + 2.0 * b1 + 2.0 * c1 + d1)
        norm = math.sqrt(abs(y0) ** 2 + abs(y1) ** 2)
        dev = abs(norm - 1.0)
        if dev > drift:
            drift = dev
        if (step + 1) % stride == 0 and rec <= n_rec:
            states[rec, 0] = y0
            states[rec, 1] = y1
            rec += 1
    return states, drift


def _cycle_curve_loop(ratios, alpha):
    # rho after one full drive cycle as a function of x = omega/omega0.
    # mu^2 = x^2 + 1 - 2 x cos(a) in the cancellation-free form.
    out = np.empty(ratios.shape[0])
    ca = math.cos(alpha)
    sh = math.sin(0.5 * alpha)
    for i in range(ratios.shape[0]):
        x = ratios[i]
        mu2 = (x - 1.0) * (x - 1.0) + 4.0 * x * sh * sh
        if mu2 <= 0.0:
            out[i] = 1.0  # degenerate x = 1, alpha = 0: state pinned
            continue
        mu = math.sqrt(mu2)
        phase = math.pi * mu / x
        coef = (1.0 - x * ca) / mu
        c = math.cos(phase)
        s = math.sin(phase)
        out[i] = c * c + coef * coef * s * s
    return out


def _cycle_curve_numpy(ratios, alpha):
    x = np.asarray(ratios, dtype=float)
    ca = math.cos(alpha)
    sh = math.sin(0.5 * alpha)
    mu2 = (x - 1.0) * (x - 1.0) + 4.0 * x * sh * sh
    safe = np.where(mu2 > 0.0, mu2, 1.0)
    mu = np.sqrt(safe)
    phase = np.pi * mu / x
    coef = (1.0 - x * ca) / mu
    c = np.cos(phase)
    s = np.sin(phase)
    rho = c * c + coef * coef * s * s
    return np.where(mu2 > 0.0, rho, 1.0)


NUMPY_IMPLS = {
    "expansion_coefficients": _expansion_coefficients_numpy,
    "spin_rk4": _spin_rk4_loop,
    "cycle_return_curve": _cycle_curve_numpy,
}

_numba_cache: dict | None = None


def numba_impls() -> dict | None:
    """Compile (once) and return the numba kernel set, or None without numba."""
    global _numba_cache
    if numba is None:
        return None
    if _numba_cache is None:
        jit = numba.njit(cache=True)
        rhs = jit(_spin_rhs)

        def _rk4_src(alpha, omega, omega0, t_end, n_steps, up0, dn0, stride):
            n_rec = n_steps // stride
            states = np.empty((n_rec + 1, 2), np.complex128)
            states[0, 0] = up0
            states[0, 1] = dn0
            h = t_end / n_steps
            y0 = up0
            y1 = dn0
            drift = 0.0
            rec = 1
            for step in range(n_steps):
                t = step * h
                a0, a1 = rhs(t, y0, y1, alpha, omega, omega0)
                b0, b1 = rhs(t + 0.5 * h, y0 + 0.5 * h * a0, y1 + 0.5 * h * a1, alpha, omega, omega0)
                c0, c1 = rhs(t + 0.5 * h, y0 + 0.5 * h * b0, y1 + 0.5 * h * b1, alpha, omega, omega0)
                d0, d1 = rhs(t + h, y0 + h * c0, y1 + h * c1, alpha, omega, omega0)
                y0 = y0 + (h / 6.0) * (a0 + 2.0 * b0 + 2.0 * c0 + d0)
                y1 = y1 + (h / 6.0) * (a1 + 2.0 * b1 + 2.0 * c1 + d1)
                norm = math.sqrt(abs(y0) ** 2 + abs(y1) ** 2)
                dev = abs(norm - 1.0)
                if dev > drift:
                    drift = dev
                if (step + 1) % stride == 0 and rec <= n_rec:
                    states[rec, 0] = y0
                    states[rec, 1] = y1
                    rec += 1
            return states, drift

        _numba_cache = {
            "expansion_coefficients": jit(_expansion_coefficients_loop),
            "spin_rk4": numba.njit(cache=False)(_rk4_src),
            "cycle_return_curve": jit(_cycle_curve_loop),
        }
    return _numba_cache


if NUMBA_AVAILABLE and not NUMBA_DISABLED:
    BACKEND = "numba"
    _active = numba_impls()
else:
    BACKEND = "numpy"
    _active = NUMPY_IMPLS

expansion_coefficients = _active["expansion_coefficients"]
spin_rk4 = _active["spin_rk4"]
cycle_return_curve = _active["cycle_return_curve"]
