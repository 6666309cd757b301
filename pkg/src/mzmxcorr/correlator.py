"""Cross correlation of the left/right branch currents.

Observing a branch-current event at the right lead at t = 0 leaves the
device in the unnormalized conditional state a|0><0| + b|1><1|. Evolving
that state and reading off the left branch current gives

    S_LR(t) = [ (b Gt+_L - a Gt-_L) - <I~_L><I~_R> ] exp(-2 Gamma t)
            = C_LR exp(-2 Gamma t),

with Gt = gamma_tilde. Only the LR cross correlator is provided; the
auto-correlators carry shot-noise delta terms not modelled here.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .model import Lead, RateSet

L, R = Lead.L, Lead.R


@dataclass(frozen=True)
class CorrelatorResult:
    a: float
    b: float
    mean_left: float
    mean_right: float
    s1_amplitude: float
    s2_amplitude: float
    c_lr: float
    decay_rate: float

    @property
    def big_gamma(self) -> float:
        return 0.5 * self.decay_rate


class JumpEvent(enum.Enum):
    PAIR_FORMED = "pair_formed"
    PAIR_SPLIT = "pair_split"


def jump_coefficients(rates: RateSet) -> tuple[float, float]:
    gp, gm = rates.gamma_plus, rates.gamma_minus
    tp, tm = rates.gamma_tilde_plus, rates.gamma_tilde_minus
    two_g = 2.0 * rates.big_gamma
    a = (tp[R] * (gp[R] + gp[L]) - gm[R] * (tm[R] + tm[L])) / two_g
    b = (gp[R] * (tp[R] + tp[L]) - tm[R] * (gm[R] + gm[L])) / two_g
    return a, b


def _branch_mean(rates: RateSet, k: Lead) -> float:
    gp, gm = rates.gamma_plus, rates.gamma_minus
    tp, tm = rates.gamma_tilde_plus, rates.gamma_tilde_minus
    two_g = 2.0 * rates.big_gamma
    first = (gp[k] * (tp[L] + tp[R]) - gm[k] * (tm[L] + tm[R])) / two_g
    second = (tp[k] * (gp[L] + gp[R]) - tm[k] * (gm[L] + gm[R])) / two_g
    return first + second


def steady_branch_means(rates: RateSet) -> tuple[float, float]:
    """Steady-state branch currents (<I~_L>, <I~_R>)."""
    return _branch_mean(rates, L), _branch_mean(rates, R)


def cross_correlation_factor(rates: RateSet) -> CorrelatorResult:
    a, b = jump_coefficients(rates)
    mean_l, mean_r = steady_branch_means(rates)
    s1 = mean_l * mean_r
    s2 = b * rates.gamma_tilde_plus[L] - a * rates.gamma_tilde_minus[L]
    return CorrelatorResult(
        a=a,
        b=b,
        mean_left=mean_l,
        mean_right=mean_r,
        s1_amplitude=s1,
        s2_amplitude=s2,
        c_lr=s2 - s1,
        decay_rate=2.0 * rates.big_gamma,
    )


def correlator_time_profile(result: CorrelatorResult, t):
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ValueError("correlator is defined for t >= 0")
    out = result.c_lr * np.exp(-result.decay_rate * t)
    return out if out.ndim else float(out)


def correlator_spectrum(result: CorrelatorResult, omega):
    """Fourier transform of C_LR exp(-2 Gamma |t|): C_LR 4 Gamma / (omega^2 + 4 Gamma^2)."""
    k = result.decay_rate
    w = np.asarray(omega, dtype=float)
    out = result.c_lr * 2.0 * k / (w * w + k * k)
    return out if out.ndim else float(out)


def jump_conditioned_left_current(rates: RateSet, event) -> float:
    """Left branch current right after a pair formation (state |0>) or pair split (state |1>)."""
    event = JumpEvent(event)
    if event is JumpEvent.PAIR_FORMED:
        return -rates.gamma_tilde_minus[L]
    return rates.gamma_tilde_plus[L]

