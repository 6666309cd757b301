"""Device parameters and lead tunneling rates.

Units: hbar = e = k_B = 1. Every energy (couplings, chemical potentials,
temperature, Majorana coupling) is expressed in one user-chosen unit and
rates come out in the same unit.

Each lead alpha couples to the nonlocal fermion f through an electron
channel (strength gamma_e) and a hole/Andreev channel (strength gamma_h).
The rates are Fermi functions integrated against a Lorentzian of width
Gamma = sum_alpha (gamma_e + gamma_h) / 2, centred at +epsilon_m for the
electron channel and at -epsilon_m for the hole channel.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy import integrate, special

from .exceptions import InvalidParameterError

QUAD_EPSREL = 1e-10
# Beyond 50 kT from mu the Fermi tail is below e^-50.
FERMI_WINDOW_KT = 50.0


class Lead(enum.IntEnum):
    L = 0
    R = 1

    @classmethod
    def parse(cls, value) -> "Lead":
        if isinstance(value, cls):
            return value
        if isinstance(value, str):
            try:
                return cls[value.upper()]
            except KeyError:
                raise InvalidParameterError(f"unknown lead {value!r}") from None
        return cls(value)

    @property
    def other(self) -> "Lead":
        return Lead(1 - self)


@dataclass(frozen=True)
class DeviceParams:
    gamma_e_L: float = 1.0
    gamma_h_L: float = 1.0
    gamma_e_R: float = 1.0
    gamma_h_R: float = 1.0
    epsilon_m: float = 0.0
    mu_L: float = 0.0
    mu_R: float = 0.0
    temperature: float = 0.0

    def __post_init__(self):
        couplings = (self.gamma_e_L, self.gamma_h_L, self.gamma_e_R, self.gamma_h_R)
        values = couplings + (self.epsilon_m, self.mu_L, self.mu_R, self.temperature)
        if not all(math.isfinite(v) for v in values):
            raise InvalidParameterError(f"non-finite device parameter in {self}")
        if min(couplings) < 0:
            raise InvalidParameterError("coupling strengths must be >= 0")
        if sum(couplings) <= 0:
            raise InvalidParameterError("at least one coupling strength must be > 0")
        if self.temperature < 0:
            raise InvalidParameterError("temperature must be >= 0")

    @classmethod
    def symmetric(cls, gamma=1.0, epsilon_m=0.0, mu_L=0.0, mu_R=0.0, temperature=0.0):
        """All four couplings equal to ``gamma``."""
        return cls(gamma, gamma, gamma, gamma, epsilon_m, mu_L, mu_R, temperature)

    @property
    def big_gamma(self) -> float:
        return 0.5 * (self.gamma_e_L + self.gamma_h_L + self.gamma_e_R + self.gamma_h_R)

    def gamma_e(self, lead) -> float:
        return self.gamma_e_L if Lead.parse(lead) is Lead.L else self.gamma_e_R

    def gamma_h(self, lead) -> float:
        return self.gamma_h_L if Lead.parse(lead) is Lead.L else self.gamma_h_R

    def mu(self, lead) -> float:
        return self.mu_L if Lead.parse(lead) is Lead.L else self.mu_R


@dataclass(frozen=True)
class RateSet:
    """The eight lead rates, indexed by lead (0 = L, 1 = R).

    gamma_plus: electron enters, f goes 0 -> 1.
    gamma_minus: electron leaves, f goes 1 -> 0.
    gamma_tilde_plus: second Andreev electron enters, f goes 1 -> 0.
    gamma_tilde_minus: Cooper pair splits, electron leaves, f goes 0 -> 1.
    """

    gamma_plus: tuple[float, float]
    gamma_minus: tuple[float, float]
    gamma_tilde_plus: tuple[float, float]
    gamma_tilde_minus: tuple[float, float]
    gamma_e: tuple[float, float]
    gamma_h: tuple[float, float]
    big_gamma: float

    @classmethod
    def from_values(cls, gamma_plus, gamma_minus, gamma_tilde_plus, gamma_tilde_minus):
        """Build a rate set directly, inferring couplings from the rate sums."""
        gp, gm = tuple(map(float, gamma_plus)), tuple(map(float, gamma_minus))
        tp, tm = tuple(map(float, gamma_tilde_plus)), tuple(map(float, gamma_tilde_minus))
        ge = (gp[0] + gm[0], gp[1] + gm[1])
        gh = (tp[0] + tm[0], tp[1] + tm[1])
        return cls(gp, gm, tp, tm, ge, gh, 0.5 * (sum(ge) + sum(gh)))

    @cached_property
    def r1(self) -> float:
        """Excitation rate of f (0 -> 1)."""
        return sum(self.gamma_plus) + sum(self.gamma_tilde_minus)

    @cached_property
    def r2(self) -> float:
        """Deexcitation rate of f (1 -> 0)."""
        return sum(self.gamma_minus) + sum(self.gamma_tilde_plus)

    def as_array(self) -> np.ndarray:
        """Rates as a (4, 2) array: rows plus, minus, tilde_plus, tilde_minus."""
        return np.array(
            [self.gamma_plus, self.gamma_minus, self.gamma_tilde_plus, self.gamma_tilde_minus]
        )


def lorentzian_weight(omega, center, gamma):
    """Unit-normalized Lorentzian (1/pi) gamma / ((omega - center)^2 + gamma^2)."""
    if not gamma > 0:
        raise InvalidParameterError(f"Lorentzian width must be > 0, got {gamma}")
    x = np.asarray(omega, dtype=float) - center
    out = gamma / (x * x + gamma * gamma) / np.pi
    return out if out.ndim else float(out)


def fermi_occupation(omega, mu, T):
    """Occupied-state Fermi function n+(omega); a step with value 1/2 at mu when T = 0."""
    if T < 0:
        raise InvalidParameterError(f"temperature must be >= 0, got {T}")
    x = np.asarray(omega, dtype=float) - mu
    if T == 0:
        out = np.where(x < 0, 1.0, np.where(x > 0, 0.0, 0.5))
    else:
        out = special.expit(-x / T)
    return out if out.ndim else float(out)


def occupation_integrals(mu: float, center: float, gamma: float, T: float = 0.0) -> tuple[float, float]:
    """Return (N+, N-): occupied/empty Fermi weight integrated against a Lorentzian.

    The T = 0 step contribution is done in closed form. At T > 0 the
    remainder n+(omega) - step(mu - omega) is odd about mu and decays like
    exp(-|omega - mu|/T), so it is integrated over |omega - mu| < 50 T only.
    """
    if not gamma > 0:
        raise InvalidParameterError(f"Lorentzian width must be > 0, got {gamma}")
    x = (mu - center) / gamma
    # Compute the smaller of the two directly to keep its relative accuracy.
    if x >= 0:
        n_minus = math.atan2(1.0, x) / math.pi
        n_plus = 1.0 - n_minus
    else:
        n_plus = math.atan2(1.0, -x) / math.pi
        n_minus = 1.0 - n_plus
    if T == 0:
        return n_plus, n_minus

    window = FERMI_WINDOW_KT * T
    offset = center - mu

    def integrand(y):
        tail = special.expit(-y / T)
        return tail * (_lorentz(y - offset, gamma) - _lorentz(-y - offset, gamma))

    points = [abs(offset)] if 0 < abs(offset) < window else None
    corr, _ = integrate.quad(
        integrand, 0.0, window, epsrel=QUAD_EPSREL, epsabs=1e-15, limit=400, points=points
    )
    return n_plus + corr, n_minus - corr


def _lorentz(x, gamma):
    return gamma / (x * x + gamma * gamma) / math.pi


def compute_rates(params: DeviceParams) -> RateSet:
    g = params.big_gamma
    if not g > 0:
        raise InvalidParameterError("total broadening must be > 0")
    gp, gm, tp, tm = [], [], [], []
    for lead in Lead:
        mu = params.mu(lead)
        n_plus, n_minus = occupation_integrals(mu, params.epsilon_m, g, params.temperature)
        nt_plus, nt_minus = occupation_integrals(mu, -params.epsilon_m, g, params.temperature)
        ge, gh = params.gamma_e(lead), params.gamma_h(lead)
        gp.append(ge * n_plus)
        gm.append(ge * n_minus)
        tp.append(gh * nt_plus)
        tm.append(gh * nt_minus)
    return RateSet(
        gamma_plus=tuple(gp),
        gamma_minus=tuple(gm),
        gamma_tilde_plus=tuple(tp),
        gamma_tilde_minus=tuple(tm),
        gamma_e=(params.gamma_e_L, params.gamma_e_R),
        gamma_h=(params.gamma_h_L, params.gamma_h_R),
        big_gamma=g,
    )
