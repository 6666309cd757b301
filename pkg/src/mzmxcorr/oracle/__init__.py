"""Independent verification paths: ODE propagation and jump Monte Carlo."""

from .montecarlo import (
    CHANNEL_NAMES,
    JumpRecord,
    Trajectory,
    TrajectoryStats,
    analytic_expectations,
    estimate_steady_observables,
    simulate_ensemble,
    simulate_trajectory,
    write_trajectory,
    z_scores,
)
from .ode import fit_decay_rate, generator, propagate_ode, regression_correlator
