"""Invariant suite run by ``mzmxcorr --verify``.

Each check reports its worst residual over a handful of grid points from
the sweep configuration. Monte Carlo residuals are in standard errors,
every other residual is an absolute (or, for the correlator, relative)
deviation.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np

from .correlator import cross_correlation_factor, jump_coefficients, steady_branch_means
from .currents import (
    integral_form_currents,
    lead_currents,
    steady_components,
    total_current_closed_form,
)
from .model import Lead, RateSet, compute_rates
from .oracle.montecarlo import estimate_steady_observables, simulate_trajectory, z_scores
from .oracle.ode import regression_correlator
from .populations import Populations, steady_state
from .sweep import SweepConfig

TOLERANCES = {
    "rate_sums": 1e-10,
    "total_current_identity": 1e-10,
    "decomposition_reassembly": 1e-10,
    "integral_vs_product": 1e-9,
    "jump_weight_identity": 1e-12,
    "regression_vs_closed_form": 1e-8,
    "monte_carlo": 3.0,
}


@dataclass
class CheckResult:
    name: str
    status: str  # "pass", "fail" or "skipped"
    residual: float | None
    tolerance: float

    def line(self) -> str:
        res = "-" if self.residual is None else f"{self.residual:.3e}"
        return f"{self.status.upper():7s} {self.name:28s} residual={res:>10s} tol={self.tolerance:.1e}"


@dataclass
class VerifyReport:
    checks: list[CheckResult]

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    @property
    def max_residual(self) -> float:
        vals = [c.residual for c in self.checks if c.residual is not None and c.name != "monte_carlo"]
        return max(vals) if vals else 0.0

    def render(self) -> str:
        lines = [c.line() for c in self.checks]
        lines.append(f"{'OK' if self.ok else 'FAILED'}: max residual {self.max_residual:.3e}")
        return "\n".join(lines)


def corrupt(rates: RateSet, factor: float = 1.01) -> RateSet:
    """Negative control: scale the left gamma_minus rate."""
    gm = (rates.gamma_minus[0] * factor, rates.gamma_minus[1])
    return dataclasses.replace(rates, gamma_minus=gm)


def sample_points(config: SweepConfig, n_ev: int = 5) -> list[tuple[float, float]]:
    evs = config.ev_grid()
    idx = np.unique(np.linspace(0, evs.size - 1, min(n_ev, evs.size)).round().astype(int))
    return [(float(evs[i]), em) for em in config.epsilon_m for i in idx]


def _check(name, residuals) -> CheckResult:
    tol = TOLERANCES[name]
    r = float(max(residuals)) if len(residuals) else 0.0
    return CheckResult(name, "pass" if r <= tol else "fail", r, tol)


def run_verify(config: SweepConfig, corrupt_rates: bool = False) -> VerifyReport:
    config.validate()
    points = sample_points(config)
    res = {k: [] for k in TOLERANCES}
    for ev, em in points:
        params = config.device(ev, em)
        rates = compute_rates(params)
        if corrupt_rates:
            rates = corrupt(rates)
        g = rates.big_gamma
        for k in Lead:
            res["rate_sums"].append(
                abs(rates.gamma_plus[k] + rates.gamma_minus[k] - params.gamma_e(k))
                + abs(rates.gamma_tilde_plus[k] + rates.gamma_tilde_minus[k] - params.gamma_h(k))
            )
        res["rate_sums"].append(abs(rates.r1 + rates.r2 - 2 * params.big_gamma))

        for p1 in (0.0, 0.3, 1.0):
            pops = Populations(1.0 - p1, p1)
            for k in Lead:
                closed = (
                    rates.gamma_plus[k]
                    - rates.gamma_tilde_minus[k]
                    - p1 * (params.gamma_e(k) - params.gamma_h(k))
                )
                res["total_current_identity"].append(abs(sum(lead_currents(rates, pops, k)) - closed))
                res["total_current_identity"].append(
                    abs(total_current_closed_form(rates, pops, k) - closed)
                )

        bar = steady_state(rates)
        for k in Lead:
            comps = steady_components(rates, k)
            res["decomposition_reassembly"].append(abs(comps.total - sum(lead_currents(rates, bar, k))))
            if params.temperature == 0 and not corrupt_rates:
                integ = integral_form_currents(params, k)
                for f in ("i1_a1", "i1_a2", "i1_a3", "i2_a1", "i2_a2", "i2_a3"):
                    res["integral_vs_product"].append(abs(getattr(integ, f) - getattr(comps, f)))

        a, b = jump_coefficients(rates)
        res["jump_weight_identity"].append(abs(a + b - steady_branch_means(rates)[1]))

        corr = cross_correlation_factor(rates)
        t_grid = np.linspace(0.0, 3.0 / g, 50)
        closed = corr.c_lr * np.exp(-corr.decay_rate * t_grid)
        numeric = regression_correlator(rates, t_grid)
        # relative, with an absolute floor where C_LR vanishes
        scale = np.maximum(np.abs(closed), 1e-6 * g * g)
        res["regression_vs_closed_form"].append(float(np.max(np.abs(numeric - closed) / scale)))

        if config.mc_duration is not None:
            traj = simulate_trajectory(rates, config.mc_duration, config.seed)
            zs = z_scores(estimate_steady_observables(traj), rates)
            res["monte_carlo"].append(max(float(np.max(np.abs(v))) for v in zs.values()))

    checks = []
    for name in TOLERANCES:
        if name == "integral_vs_product" and (config.temperature != 0 or corrupt_rates):
            checks.append(CheckResult(name, "skipped", None, TOLERANCES[name]))
        elif name == "monte_carlo" and config.mc_duration is None:
            checks.append(CheckResult(name, "skipped", None, TOLERANCES[name]))
        else:
            checks.append(_check(name, res[name]))
    return VerifyReport(checks)
