"""Bias sweeps of the cross-correlation factor, written as CSV."""

from __future__ import annotations

import csv
import dataclasses
import io
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .correlator import cross_correlation_factor
from .currents import steady_components
from .exceptions import InvalidParameterError
from .model import DeviceParams, Lead, compute_rates

BIAS_MODES = ("symmetric", "antisymmetric")

CSV_COLUMNS = (
    "ev",
    "epsilon_m",
    "i_l_total",
    "i_r_total",
    "i_tilde_l",
    "i_tilde_r",
    "i1_a1_l",
    "i1_a2_l",
    "i1_a3_l",
    "i2_a1_l",
    "i2_a2_l",
    "i2_a3_l",
    "a",
    "b",
    "c_lr",
    "c_lr_over_gamma2",
    "big_gamma",
)


class ConfigError(InvalidParameterError):
    pass


@dataclass
class SweepConfig:
    bias_mode: str = "symmetric"
    ev_min: float = -10.0
    ev_max: float = 10.0
    ev_steps: int = 81
    epsilon_m: tuple[float, ...] = (0.0,)
    gamma_e_l: float = 1.0
    gamma_h_l: float = 1.0
    gamma_e_r: float = 1.0
    gamma_h_r: float = 1.0
    temperature: float = 0.0
    out: str | None = None
    seed: int = 0
    mc_duration: float | None = None
    workers: int = 1

    def __post_init__(self):
        self.epsilon_m = tuple(float(e) for e in self.epsilon_m)

    def validate(self) -> "SweepConfig":
        if self.bias_mode not in BIAS_MODES:
            raise ConfigError(f"bias_mode must be one of {BIAS_MODES}, got {self.bias_mode!r}")
        if self.ev_steps < 2:
            raise ConfigError("ev_steps must be >= 2")
        if not self.ev_min < self.ev_max:
            raise ConfigError("ev_min must be < ev_max")
        if not self.epsilon_m:
            raise ConfigError("epsilon_m list is empty")
        if self.mc_duration is not None and not self.mc_duration > 0:
            raise ConfigError("mc_duration must be > 0")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        try:
            self.device(0.0, self.epsilon_m[0])
        except InvalidParameterError as exc:
            raise ConfigError(str(exc)) from None
        return self

    def device(self, ev: float, epsilon_m: float) -> DeviceParams:
        mu_r = ev if self.bias_mode == "symmetric" else -ev
        return DeviceParams(
            self.gamma_e_l,
            self.gamma_h_l,
            self.gamma_e_r,
            self.gamma_h_r,
            epsilon_m=epsilon_m,
            mu_L=ev,
            mu_R=mu_r,
            temperature=self.temperature,
        )

    def ev_grid(self) -> np.ndarray:
        return np.linspace(self.ev_min, self.ev_max, self.ev_steps)

    def grid(self) -> list[tuple[float, float]]:
        """(eV, epsilon_m) points, epsilon_m outer, eV inner."""
        return [(float(ev), em) for em in self.epsilon_m for ev in self.ev_grid()]


_FIELD_TYPES = {f.name: f.type for f in dataclasses.fields(SweepConfig)}


def _convert(key: str, raw: str):
    raw = raw.strip()
    try:
        if key == "epsilon_m":
            return tuple(float(x) for x in raw.replace(",", " ").split())
        if key in ("ev_steps", "seed", "workers"):
            return int(raw)
        if key in ("out", "bias_mode"):
            return raw or None
        if key == "mc_duration":
            return None if raw.lower() in ("", "none") else float(raw)
        return float(raw)
    except ValueError:
        raise ConfigError(f"bad value for {key}: {raw!r}") from None


def parse_config_text(text: str) -> dict:
    """Parse flat ``key = value`` lines; '#' starts a comment."""
    values = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, raw = line.split("=", 1)
        key = key.strip().lower().replace("-", "_")
        if key not in _FIELD_TYPES:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        values[key] = _convert(key, raw)
    return values


def load_config(path) -> dict:
    return parse_config_text(Path(path).read_text())


def evaluate_point(config: SweepConfig, ev: float, epsilon_m: float) -> dict:
    params = config.device(ev, epsilon_m)
    rates = compute_rates(params)
    left = steady_components(rates, Lead.L)
    right = steady_components(rates, Lead.R)
    corr = cross_correlation_factor(rates)
    g = rates.big_gamma
    return {
        "ev": ev,
        "epsilon_m": epsilon_m,
        "i_l_total": left.total,
        "i_r_total": right.total,
        "i_tilde_l": left.branch,
        "i_tilde_r": right.branch,
        "i1_a1_l": left.i1_a1,
        "i1_a2_l": left.i1_a2,
        "i1_a3_l": left.i1_a3,
        "i2_a1_l": left.i2_a1,
        "i2_a2_l": left.i2_a2,
        "i2_a3_l": left.i2_a3,
        "a": corr.a,
        "b": corr.b,
        "c_lr": corr.c_lr,
        "c_lr_over_gamma2": corr.c_lr / (g * g),
        "big_gamma": g,
    }


def _evaluate_star(args):
    return evaluate_point(*args)


def run_sweep(config: SweepConfig) -> list[dict]:
    """One row per (epsilon_m, eV) grid point, in grid order."""
    config.validate()
    jobs = [(config, ev, em) for ev, em in config.grid()]
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            return list(pool.map(_evaluate_star, jobs, chunksize=16))
    return [_evaluate_star(j) for j in jobs]


def format_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow([format(float(row[c]), ".17g") for c in CSV_COLUMNS])
    return buf.getvalue()


def write_csv(rows: list[dict], path=None) -> None:
    text = format_csv(rows)
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def read_csv(path) -> list[dict]:
    with open(path, newline="") as fh:
        return [{k: float(v) for k, v in row.items()} for row in csv.DictReader(fh)]


__all__ = [
    "BIAS_MODES",
    "CSV_COLUMNS",
    "ConfigError",
    "SweepConfig",
    "evaluate_point",
    "format_csv",
    "load_config",
    "parse_config_text",
    "read_csv",
    "run_sweep",
    "write_csv",
]
