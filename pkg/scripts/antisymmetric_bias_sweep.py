"""C_LR against opposite bias mu_L = -mu_R = eV for ideal and split Majorana
modes, with symmetric and asymmetric lead couplings.

    python scripts/antisymmetric_bias_sweep.py [--out-dir results/]
"""

import argparse
from pathlib import Path

from mzmxcorr.sweep import SweepConfig, run_sweep, write_csv

CASES = {
    "equal_couplings": dict(),
    "weak_right_lead": dict(gamma_e_r=0.5, gamma_h_r=0.5),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out-dir", type=Path)
    ap.add_argument("--ev-max", type=float, default=20.0)
    ap.add_argument("--ev-steps", type=int, default=81)
    args = ap.parse_args()

    for name, couplings in CASES.items():
        cfg = SweepConfig(bias_mode="antisymmetric", ev_min=-args.ev_max, ev_max=args.ev_max,
                          ev_steps=args.ev_steps, epsilon_m=(0.0, 0.5, 1.0), **couplings)
        rows = run_sweep(cfg)
        print(f"\n{name}")
        print(f"{'eps_M':>6} {'min C_LR':>12} {'max C_LR':>12} {'C_LR at max eV':>15}")
        for eps in cfg.epsilon_m:
            sel = [r for r in rows if r["epsilon_m"] == eps]
            vals = [r["c_lr"] for r in sel]
            print(f"{eps:6.2f} {min(vals):12.5f} {max(vals):12.5f} {sel[-1]['c_lr']:15.5f}")
        if args.out_dir:
            args.out_dir.mkdir(parents=True, exist_ok=True)
            write_csv(rows, args.out_dir / f"antisymmetric_{name}.csv")


if __name__ == "__main__":
    main()
