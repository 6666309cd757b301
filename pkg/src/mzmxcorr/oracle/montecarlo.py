"""Continuous-time Monte Carlo of the eight-channel jump process.

Every jump flips the f occupation, so a trajectory alternates between
|0> (exit rate r1) and |1> (exit rate r2). Waiting times and channel
labels are drawn in vectorized chunks; a trajectory is fully determined
by (seed, trajectory index).

Only steady-state observables are estimated here. The branch-current
correlator subtracts flux components that have no per-jump label, so it is
not sampled.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..currents import lead_currents
from ..exceptions import InvalidParameterError
from ..model import Lead, RateSet
from ..populations import steady_state

# Channel index = 4 * lead + kind; kind order matches RateSet.as_array rows.
KIND_NAMES = ("plus", "minus", "tilde_plus", "tilde_minus")
CHANNEL_NAMES = tuple(f"{lead.name}:{kind}" for lead in Lead for kind in KIND_NAMES)
PRE_STATE = np.array([0, 1, 1, 0] * 2)
CHARGE_SIGN = np.array([1, -1, 1, -1] * 2)
CHANNEL_LEAD = np.repeat([0, 1], 4)

_CHUNK = 1 << 16


@dataclass(frozen=True)
class JumpRecord:
    time: float
    channel: int
    state_after: int

    @property
    def channel_name(self) -> str:
        return CHANNEL_NAMES[self.channel]

    @property
    def lead(self) -> Lead:
        return Lead(int(CHANNEL_LEAD[self.channel]))

    @property
    def charge_sign_at_lead(self) -> int:
        return int(CHARGE_SIGN[self.channel])


@dataclass
class Trajectory:
    """Jump times, channel indices and post-jump states of one run."""

    times: np.ndarray
    channels: np.ndarray
    states_after: np.ndarray
    duration: float
    initial_state: int
    seed: int
    index: int = 0
    absorbed: bool = False

    def __len__(self):
        return self.times.size

    def records(self) -> list[JumpRecord]:
        return [
            JumpRecord(float(t), int(c), int(s))
            for t, c, s in zip(self.times, self.channels, self.states_after)
        ]


@dataclass
class TrajectoryStats:
    occupancy: float
    occupancy_se: float
    mean_current: np.ndarray  # per lead
    current_se: np.ndarray
    channel_counts: np.ndarray
    channel_count_se: np.ndarray
    n_jumps: int
    duration: float
    seed: int
    n_batches: int = field(default=0)


def channel_rates(rates: RateSet) -> np.ndarray:
    return rates.as_array().T.ravel()


def _rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(index,)))


def simulate_trajectory(
    rates: RateSet, duration: float, seed: int, initial_state: int = 0, index: int = 0
) -> Trajectory:
    if not duration > 0:
        raise InvalidParameterError(f"duration must be > 0, got {duration}")
    if initial_state not in (0, 1):
        raise InvalidParameterError("initial_state must be 0 or 1")
    rng = _rng(seed, index)
    crates = channel_rates(rates)
    if np.any(crates < 0):
        raise InvalidParameterError("rates must be >= 0")
    exit_rate = np.array([crates[PRE_STATE == s].sum() for s in (0, 1)])
    chan_of = [np.flatnonzero(PRE_STATE == s) for s in (0, 1)]
    probs = [crates[idx] / exit_rate[s] if exit_rate[s] > 0 else None for s, idx in enumerate(chan_of)]

    times, channels = [], []
    t_now, state, absorbed = 0.0, initial_state, False
    while True:
        if exit_rate[state] == 0:
            absorbed = True
            break
        if exit_rate[1 - state] == 0:
            # at most one more jump before absorption
            n = 1
        else:
            n = _CHUNK
        pre = (state + np.arange(n)) % 2
        waits = rng.standard_exponential(n) / exit_rate[pre]
        jump_t = t_now + np.cumsum(waits)
        u = rng.random(n)
        chan = np.empty(n, dtype=np.int64)
        for s in (0, 1):
            sel = pre == s
            if np.any(sel):
                cum = np.cumsum(probs[s])
                k = np.minimum(np.searchsorted(cum, u[sel] * cum[-1], side="right"), cum.size - 1)
                chan[sel] = chan_of[s][k]
        keep = jump_t <= duration
        n_keep = int(np.count_nonzero(keep))
        times.append(jump_t[:n_keep])
        channels.append(chan[:n_keep])
        if n_keep < n:
            break
        t_now = float(jump_t[-1])
        state = (state + n) % 2

    times = np.concatenate(times) if times else np.empty(0)
    channels = np.concatenate(channels) if channels else np.empty(0, dtype=np.int64)
    states_after = (initial_state + 1 + np.arange(times.size)) % 2
    return Trajectory(times, channels, states_after, float(duration), initial_state, seed, index, absorbed)


def simulate_ensemble(
    rates: RateSet, duration: float, seed: int, n_trajectories: int, max_workers: int | None = None
) -> list[Trajectory]:
    """Independent trajectories on streams (seed, 0..n-1), returned in index order."""
    workers = max_workers or min(n_trajectories, os.cpu_count() or 1)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(
            pool.map(lambda i: simulate_trajectory(rates, duration, seed, index=i), range(n_trajectories))
        )


def _occupied_time_until(traj: Trajectory, edges: np.ndarray) -> np.ndarray:
    """Cumulative time spent in |1> from 0 up to each edge."""
    bounds = np.concatenate(([0.0], traj.times))
    states = np.concatenate(([traj.initial_state], traj.states_after))
    seg_len = np.diff(np.concatenate((bounds, [traj.duration])))
    cum = np.concatenate(([0.0], np.cumsum(seg_len * states)))
    knots = np.concatenate((bounds, [traj.duration]))
    # occupied time is piecewise linear between jump times
    return np.interp(edges, knots, cum)


def estimate_steady_observables(traj: Trajectory, n_batches: int = 40) -> TrajectoryStats:
    """Time-averaged occupancy, per-lead currents and channel counts with batch-means errors."""
    if not traj.duration > 0:
        raise InvalidParameterError("duration must be > 0")
    if n_batches < 20:
        raise InvalidParameterError("need at least 20 batches")
    edges = np.linspace(0.0, traj.duration, n_batches + 1)
    width = traj.duration / n_batches
    occ_cum = _occupied_time_until(traj, edges)
    occ_batch = np.diff(occ_cum) / width

    batch_of = np.minimum(np.searchsorted(edges, traj.times, side="left") - 1, n_batches - 1)
    batch_of = np.maximum(batch_of, 0)
    counts = np.zeros((n_batches, 8))
    np.add.at(counts, (batch_of, traj.channels), 1.0)
    signed = counts * CHARGE_SIGN
    cur_batch = np.stack([signed[:, CHANNEL_LEAD == k].sum(axis=1) for k in (0, 1)], axis=1) / width

    def se(x):
        return x.std(axis=0, ddof=1) / np.sqrt(n_batches)

    total_counts = counts.sum(axis=0)
    return TrajectoryStats(
        occupancy=float(occ_cum[-1] / traj.duration),
        occupancy_se=float(se(occ_batch)),
        mean_current=cur_batch.mean(axis=0),
        current_se=se(cur_batch),
        channel_counts=total_counts,
        channel_count_se=se(counts) * n_batches,
        n_jumps=len(traj),
        duration=traj.duration,
        seed=traj.seed,
        n_batches=n_batches,
    )


def analytic_expectations(rates: RateSet, duration: float) -> dict:
    """Steady-state values the estimators should converge to."""
    bar = steady_state(rates)
    currents = np.array([sum(lead_currents(rates, bar, lead)) for lead in Lead])
    pre_prob = np.where(PRE_STATE == 0, bar.p0, bar.p1)
    return {
        "occupancy": bar.p1,
        "mean_current": currents,
        "channel_counts": channel_rates(rates) * pre_prob * duration,
    }


def z_scores(stats: TrajectoryStats, rates: RateSet) -> dict:
    """(estimate - analytic) / standard error for every observable with nonzero error."""
    exp = analytic_expectations(rates, stats.duration)

    def z(est, ref, err):
        est, ref, err = np.atleast_1d(est), np.atleast_1d(ref), np.atleast_1d(err)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.where(err > 0, (est - ref) / err, np.where(est == ref, 0.0, np.inf))
        return out

    return {
        "occupancy": float(z(stats.occupancy, exp["occupancy"], stats.occupancy_se)[0]),
        "mean_current": z(stats.mean_current, exp["mean_current"], stats.current_se),
        "channel_counts": z(stats.channel_counts, exp["channel_counts"], stats.channel_count_se),
    }


def write_trajectory(path, traj: Trajectory) -> None:
    """One jump per line: time, channel name, state after (tab-separated)."""
    with open(path, "w") as fh:
        for t, c, s in zip(traj.times, traj.channels, traj.states_after):
            fh.write(f"{t:.17g}\t{CHANNEL_NAMES[c]}\t{s}\n")
