"""Lead currents and their decomposition.

Positive current flows from the lead into the superconductor. For each lead
the current splits into I1 (first electron, normal tunneling into f) and
I2 (second electron of the Andreev process). At steady state each splits
further into

    A1  local Andreev reflection at this lead
    A2  crossed Andreev reflection with the other lead
    A3  direct electron-electron (I1) or hole-hole (I2) transmission

and during a transient the steady channel is scaled by G(t) while a B
channel carries the decay of the initial occupation.

The branch (Andreev) current removes the A3 transmission parts. It also
excludes I1(B): the normal-tunneling transient into the initial occupation
does not flow through the Andreev branch circuit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import InvalidParameterError, UnsupportedModeError
from .model import DeviceParams, Lead, RateSet
from .populations import InitialCondition, Populations, as_initial_condition, relaxation


@dataclass(frozen=True)
class CurrentDecomposition:
    lead: Lead
    i1_a1: float
    i1_a2: float
    i1_a3: float
    i2_a1: float
    i2_a2: float
    i2_a3: float
    i1_b: float = 0.0
    i2_b: float = 0.0

    @property
    def i1(self) -> float:
        return self.i1_a1 + self.i1_a2 + self.i1_a3 + self.i1_b

    @property
    def i2(self) -> float:
        return self.i2_a1 + self.i2_a2 + self.i2_a3 + self.i2_b

    @property
    def total(self) -> float:
        return self.i1 + self.i2

    @property
    def branch(self) -> float:
        return self.i1_a1 + self.i1_a2 + self.i2_a1 + self.i2_a2 + self.i2_b

    def scaled(self, factor: float) -> "CurrentDecomposition":
        """Scale the steady (A) components, leaving the B channel untouched."""
        return CurrentDecomposition(
            self.lead,
            self.i1_a1 * factor,
            self.i1_a2 * factor,
            self.i1_a3 * factor,
            self.i2_a1 * factor,
            self.i2_a2 * factor,
            self.i2_a3 * factor,
            self.i1_b,
            self.i2_b,
        )


def lead_currents(rates: RateSet, pops: Populations, lead) -> tuple[float, float]:
    """(I1, I2) for one lead, from arbitrary (possibly unnormalized) populations."""
    k = Lead.parse(lead)
    i1 = rates.gamma_plus[k] * pops.p0 - rates.gamma_minus[k] * pops.p1
    i2 = rates.gamma_tilde_plus[k] * pops.p1 - rates.gamma_tilde_minus[k] * pops.p0
    return i1, i2


def total_current_closed_form(rates: RateSet, pops: Populations, lead) -> float:
    """I1 + I2 rewritten with p0 = 1 - p1; depends on p1 only through gamma_e - gamma_h."""
    k = Lead.parse(lead)
    return (
        rates.gamma_plus[k]
        - rates.gamma_tilde_minus[k]
        - pops.p1 * (rates.gamma_e[k] - rates.gamma_h[k])
    )


def steady_components(rates: RateSet, lead) -> CurrentDecomposition:
    k = Lead.parse(lead)
    o = k.other
    gp, gm = rates.gamma_plus, rates.gamma_minus
    tp, tm = rates.gamma_tilde_plus, rates.gamma_tilde_minus
    two_g = 2.0 * rates.big_gamma
    a1 = (gp[k] * tp[k] - gm[k] * tm[k]) / two_g
    return CurrentDecomposition(
        lead=k,
        i1_a1=a1,
        i1_a2=(gp[k] * tp[o] - gm[k] * tm[o]) / two_g,
        i1_a3=(gp[k] * gm[o] - gm[k] * gp[o]) / two_g,
        i2_a1=(tp[k] * gp[k] - tm[k] * gm[k]) / two_g,
        i2_a2=(tp[k] * gp[o] - tm[k] * gm[o]) / two_g,
        i2_a3=(tp[k] * tm[o] - tm[k] * tp[o]) / two_g,
    )


_KINDS = ("ee", "hh", "ehA")


def _parse_kind(kind: str) -> tuple[str, Lead, Lead]:
    try:
        prefix, pair = kind.split("_")
        if prefix not in _KINDS or len(pair) != 2:
            raise ValueError
        return prefix, Lead.parse(pair[0]), Lead.parse(pair[1])
    except (ValueError, InvalidParameterError):
        raise InvalidParameterError(
            f"unknown transport coefficient {kind!r}; expected e.g. 'ehA_LR', 'ee_LR', 'hh_RL'"
        ) from None


def _coefficient_prefactor(kind: str, params: DeviceParams) -> float:
    prefix, x, y = _parse_kind(kind)
    if prefix == "ee":
        return params.gamma_e(x) * params.gamma_e(y)
    if prefix == "hh":
        return params.gamma_h(x) * params.gamma_h(y)
    return params.gamma_e(x) * params.gamma_h(y)


def transport_coefficient(kind: str, omega, params: DeviceParams):
    """Transmission Gamma_x Gamma_y / ((omega - eps_M)^2 + Gamma^2).

    ``kind`` is ``ee_XY``, ``hh_XY`` or ``ehA_XY`` with X, Y in {L, R};
    ``ehA_XY`` pairs the electron coupling of X with the hole coupling of Y.
    """
    pref = _coefficient_prefactor(kind, params)
    g = params.big_gamma
    x = np.asarray(omega, dtype=float) - params.epsilon_m
    out = pref / (x * x + g * g)
    return out if out.ndim else float(out)


def _window_integral(kind: str, lo: float, hi: float, params: DeviceParams) -> float:
    # (1/2pi) * integral of the transport coefficient over [lo, hi]
    if lo == hi:
        return 0.0
    g = params.big_gamma
    eps = params.epsilon_m
    pref = _coefficient_prefactor(kind, params)
    return pref / (2.0 * math.pi * g) * (math.atan((hi - eps) / g) - math.atan((lo - eps) / g))


def integral_form_currents(params: DeviceParams, lead) -> CurrentDecomposition:
    """Steady components as bias-window integrals of transport coefficients (T = 0 only)."""
    if params.temperature != 0:
        raise UnsupportedModeError("bias-window integral forms are defined only at T = 0")
    k = Lead.parse(lead)
    o = k.other
    a, b = k.name, o.name
    mu_k, mu_o = params.mu(k), params.mu(o)
    a1 = _window_integral(f"ehA_{a}{a}", -mu_k, mu_k, params)
    return CurrentDecomposition(
        lead=k,
        i1_a1=a1,
        i1_a2=_window_integral(f"ehA_{a}{b}", -mu_o, mu_k, params),
        i1_a3=_window_integral(f"ee_{a}{b}", mu_o, mu_k, params),
        i2_a1=a1,
        i2_a2=_window_integral(f"ehA_{b}{a}", -mu_k, mu_o, params),
        i2_a3=_window_integral(f"hh_{b}{a}", -mu_k, -mu_o, params),
    )


def transient_channel_currents(rates: RateSet, init, t: float, lead) -> CurrentDecomposition:
    """Two-channel currents at time t for initial weights (a, b) on (|0>, |1>)."""
    init: InitialCondition = as_initial_condition(init)
    k = Lead.parse(lead)
    cw = relaxation(t, rates.big_gamma, init)
    steady = steady_components(rates, k).scaled(init.weight * cw.g)
    decay = cw.one_minus_g
    i1_b = (rates.gamma_plus[k] * init.a - rates.gamma_minus[k] * init.b) * decay
    i2_b = (rates.gamma_tilde_plus[k] * init.b - rates.gamma_tilde_minus[k] * init.a) * decay
    return CurrentDecomposition(
        k,
        steady.i1_a1,
        steady.i1_a2,
        steady.i1_a3,
        steady.i2_a1,
        steady.i2_a2,
        steady.i2_a3,
        i1_b,
        i2_b,
    )


def branch_current(decomp: CurrentDecomposition) -> float:
    return decomp.branch
