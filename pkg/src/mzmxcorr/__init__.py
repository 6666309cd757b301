"""Rate-equation model of branch-current cross correlation mediated by a pair
of Majorana zero modes coupled to two normal leads."""

from .correlator import (
    CorrelatorResult,
    JumpEvent,
    correlator_spectrum,
    correlator_time_profile,
    cross_correlation_factor,
    jump_coefficients,
    jump_conditioned_left_current,
    steady_branch_means,
)
from .currents import (
    CurrentDecomposition,
    branch_current,
    integral_form_currents,
    lead_currents,
    steady_components,
    total_current_closed_form,
    transient_channel_currents,
    transport_coefficient,
)
from .exceptions import (
    DegenerateDynamicsError,
    IntegrationError,
    InvalidParameterError,
    MzmError,
    UnsupportedModeError,
)
from .model import (
    DeviceParams,
    Lead,
    RateSet,
    compute_rates,
    fermi_occupation,
    lorentzian_weight,
    occupation_integrals,
)
from .populations import (
    ChannelWeights,
    InitialCondition,
    Populations,
    relaxation,
    steady_state,
    transient_populations,
)

__version__ = "0.1.0"
