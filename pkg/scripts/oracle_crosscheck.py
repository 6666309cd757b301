"""Compare the closed-form correlator and steady observables against the
ODE regression path and a Monte Carlo trajectory at a few device points.

    python scripts/oracle_crosscheck.py [--duration 1e5] [--seed 0]
"""

import argparse

import numpy as np

from mzmxcorr import DeviceParams, compute_rates, correlator_time_profile, cross_correlation_factor
from mzmxcorr.oracle import estimate_steady_observables, regression_correlator, simulate_trajectory, z_scores

POINTS = [
    DeviceParams.symmetric(1.0, mu_L=4.0, mu_R=4.0),
    DeviceParams.symmetric(1.0, epsilon_m=0.5, mu_L=3.0, mu_R=-3.0),
    DeviceParams(1.0, 1.0, 0.5, 0.5, mu_L=2.0, mu_R=-2.0),
    DeviceParams(0.6, 0.9, 1.2, 0.4, epsilon_m=0.35, mu_L=1.9, mu_R=-0.6),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--duration", type=float, default=1e5, help="trajectory length in units of 1/Gamma")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    print(f"{'#':>2} {'C_LR':>12} {'max rel dev':>12} {'z occ':>7} {'z I_L':>7} {'z I_R':>7}")
    for i, params in enumerate(POINTS):
        rates = compute_rates(params)
        res = cross_correlation_factor(rates)
        t = np.linspace(0, 3 / rates.big_gamma, 50)
        closed = correlator_time_profile(res, t)
        dev = np.max(np.abs(regression_correlator(rates, t) - closed) / np.maximum(np.abs(closed), 1e-300))
        traj = simulate_trajectory(rates, args.duration / rates.big_gamma, seed=args.seed, index=i)
        z = z_scores(estimate_steady_observables(traj), rates)
        zi = z["mean_current"]
        print(f"{i:2d} {res.c_lr:12.6f} {dev:12.2e} {z['occupancy']:7.2f} {zi[0]:7.2f} {zi[1]:7.2f}")


if __name__ == "__main__":
    main()
