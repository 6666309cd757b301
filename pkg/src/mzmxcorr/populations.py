"""Occupation dynamics of the f quasiparticle.

The populations obey dp1/dt = r1 p0 - r2 p1 with r1 + r2 = 2 Gamma, so any
initial pair (a, b) = (p0(0), p1(0)) relaxes as

    p(t) = (a + b) p_bar G(t) + (a, b) [1 - G(t)],    G(t) = 1 - exp(-2 Gamma t).

The first term is the steady-state channel, the second the decaying
initial channel. Weights (a, b) need not be normalized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .exceptions import DegenerateDynamicsError, InvalidParameterError
from .model import RateSet


@dataclass(frozen=True)
class Populations:
    p0: float
    p1: float

    @property
    def total(self) -> float:
        return self.p0 + self.p1

    def is_normalized(self, tol: float = 1e-12) -> bool:
        return abs(self.total - 1.0) <= tol and -tol <= self.p0 <= 1 + tol and -tol <= self.p1 <= 1 + tol


@dataclass(frozen=True)
class InitialCondition:
    """Initial weights on |0><0| and |1><1|; ``kind`` is empty, occupied or mixed."""

    a: float
    b: float
    kind: str = "mixed"

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise InvalidParameterError(f"initial weights must be finite, got ({self.a}, {self.b})")
        if self.kind not in ("empty", "occupied", "mixed"):
            raise InvalidParameterError(f"unknown initial condition kind {self.kind!r}")

    @classmethod
    def empty(cls) -> "InitialCondition":
        return cls(1.0, 0.0, "empty")

    @classmethod
    def occupied(cls) -> "InitialCondition":
        return cls(0.0, 1.0, "occupied")

    @classmethod
    def mixed(cls, a: float, b: float) -> "InitialCondition":
        return cls(float(a), float(b), "mixed")

    @property
    def weight(self) -> float:
        return self.a + self.b


def as_initial_condition(init) -> InitialCondition:
    if isinstance(init, InitialCondition):
        return init
    if isinstance(init, Populations):
        return InitialCondition.mixed(init.p0, init.p1)
    if isinstance(init, str):
        if init == "empty":
            return InitialCondition.empty()
        if init == "occupied":
            return InitialCondition.occupied()
    raise InvalidParameterError(f"invalid initial condition {init!r}")


@dataclass(frozen=True)
class ChannelWeights:
    g: float
    one_minus_g: float
    initial_condition: InitialCondition


def relaxation(t: float, big_gamma: float, init=None) -> ChannelWeights:
    """Steady-channel weight G(t) = 1 - exp(-2 Gamma t) and its complement."""
    if t < 0:
        raise InvalidParameterError(f"time must be >= 0, got {t}")
    if not big_gamma > 0:
        raise InvalidParameterError(f"Gamma must be > 0, got {big_gamma}")
    decay = math.exp(-2.0 * big_gamma * t)
    init = InitialCondition.empty() if init is None else as_initial_condition(init)
    return ChannelWeights(1.0 - decay, decay, init)


def steady_state(rates: RateSet) -> Populations:
    total = rates.r1 + rates.r2
    if not total > 0:
        raise DegenerateDynamicsError("r1 = r2 = 0: every state is stationary")
    return Populations(rates.r2 / total, rates.r1 / total)


def transient_populations(rates: RateSet, init, t: float) -> Populations:
    init = as_initial_condition(init)
    cw = relaxation(t, rates.big_gamma, init)
    bar = steady_state(rates)
    w = init.weight
    return Populations(
        w * bar.p0 * cw.g + init.a * cw.one_minus_g,
        w * bar.p1 * cw.g + init.b * cw.one_minus_g,
    )
