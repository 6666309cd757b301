"""Numerical propagation of the population equations.

Used as an independent check on the closed-form transients and on the
correlator: the regression construction here never calls the compact
C_LR formula or the closed-form populations.
"""

from __future__ import annotations

import numpy as np
from scipy import integrate, linalg

from ..currents import lead_currents, steady_components
from ..correlator import jump_coefficients
from ..exceptions import DegenerateDynamicsError, IntegrationError, InvalidParameterError
from ..model import Lead, RateSet
from ..populations import Populations, as_initial_condition


def generator(rates: RateSet) -> np.ndarray:
    """Rate matrix acting on the column vector (p0, p1)."""
    r1, r2 = rates.r1, rates.r2
    return np.array([[-r1, r2], [r1, -r2]])


def _check_grid(t_grid) -> np.ndarray:
    t = np.asarray(t_grid, dtype=float).ravel()
    if t.size == 0:
        return t
    if t[0] < 0 or np.any(np.diff(t) < 0):
        raise InvalidParameterError("t_grid must be nondecreasing and start at t >= 0")
    return t


def _propagate_array(x0: np.ndarray, rates: RateSet, t: np.ndarray, method: str) -> np.ndarray:
    m = generator(rates)
    if method == "expm":
        out = np.empty((t.size, 2))
        x, t_prev = x0.copy(), 0.0
        for i, ti in enumerate(t):
            x = linalg.expm(m * (ti - t_prev)) @ x
            out[i] = x
            t_prev = ti
        return out
    if method in ("DOP853", "RK45", "Radau", "LSODA"):
        if t.size == 0:
            return np.empty((0, 2))
        if t[-1] == 0:
            return np.tile(x0, (t.size, 1))
        scale = max(np.abs(x0).max(), 1.0)
        sol = integrate.solve_ivp(
            lambda _, y: m @ y,
            (0.0, t[-1]),
            x0,
            method=method,
            t_eval=t,
            rtol=1e-12,
            atol=1e-14 * scale,
        )
        if not sol.success:
            raise IntegrationError(f"{method} failed: {sol.message} (nfev={sol.nfev})")
        return sol.y.T
    raise InvalidParameterError(f"unknown propagation method {method!r}")


def propagate_ode(init, rates: RateSet, t_grid, method: str = "expm") -> list[Populations]:
    """Populations on ``t_grid`` starting from ``init`` at t = 0.

    ``method`` is "expm" (exact matrix exponential between grid points) or
    any scipy adaptive integrator name, run at rtol 1e-12.
    """
    init = as_initial_condition(init)
    t = _check_grid(t_grid)
    x = _propagate_array(np.array([init.a, init.b]), rates, t, method)
    return [Populations(float(p0), float(p1)) for p0, p1 in x]


def _numerical_steady_state(m: np.ndarray) -> np.ndarray:
    ns = linalg.null_space(m)
    if ns.shape[1] != 1:
        raise DegenerateDynamicsError("rate matrix has no unique steady state")
    v = ns[:, 0]
    return v / v.sum()


def _branch_on_channels(rates: RateSet, lead: Lead, steady_part: np.ndarray, decaying_part: np.ndarray):
    """Branch current of a state split into a steady-shaped part and a decaying part."""
    i1, i2 = lead_currents(rates, Populations(*steady_part), lead)
    comps = steady_components(rates, lead)
    transmission = steady_part.sum() * (comps.i1_a3 + comps.i2_a3)
    _, i2_decay = lead_currents(rates, Populations(*decaying_part), lead)
    return i1 + i2 - transmission + i2_decay


def regression_correlator(rates: RateSet, t_grid, method: str = "expm") -> np.ndarray:
    """S_LR(t) from the quantum regression construction, evaluated numerically.

    The conditional state (a, b) is propagated with the rate matrix. Its
    decaying part is the projection onto the nonzero-eigenvalue mode, the
    remainder is the steady-shaped part; the left branch current is read
    off both and the product of steady branch means is subtracted.
    """
    t = _check_grid(t_grid)
    m = generator(rates)
    a, b = jump_coefficients(rates)
    x0 = np.array([a, b])
    states = _propagate_array(x0, rates, t, method)

    evals = np.linalg.eigvals(m).real
    relax = evals[np.argmin(evals)]
    if not relax < 0:
        raise DegenerateDynamicsError("no relaxing mode: r1 = r2 = 0")
    bar = _numerical_steady_state(m)

    # steady branch means from the decomposition applied to the numerical steady state
    means = [
        _branch_on_channels(rates, lead, bar, np.zeros(2)) for lead in (Lead.L, Lead.R)
    ]
    out = np.empty(t.size)
    for i, (ti, state) in enumerate(zip(t, states)):
        decaying = x0 * np.exp(relax * ti)
        steady_part = state - decaying
        out[i] = _branch_on_channels(rates, Lead.L, steady_part, decaying) - means[0] * means[1]
    return out


def fit_decay_rate(t, values) -> float:
    """Log-linear least-squares decay rate of a single-signed exponential."""
    t = np.asarray(t, dtype=float)
    v = np.asarray(values, dtype=float)
    if np.any(v == 0) or not (np.all(v > 0) or np.all(v < 0)):
        raise InvalidParameterError("values must be nonzero and of one sign")
    slope, _ = np.polyfit(t, np.log(np.abs(v)), 1)
    return -float(slope)
