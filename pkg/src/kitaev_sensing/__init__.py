"""Quantum Fisher information of the 1D Kitaev chain ground state near multicriticality."""

__version__ = "0.1.0"

from .asymptotics import LeadingOrder, RegimeLabel, classify_regime, leading_order, odd_zeta_partial
from .errors import ConvergenceError, CriticalLineError
from .model import (
    BdgComponents,
    BogoliubovState,
    ModelParams,
    MomentumGrid,
    amplitudes,
    average_occupation,
    bdg_components,
    build_grid,
    ground_state,
    overlap,
    winding_number,
)
from .oracle import CrosscheckReport, berry_term, crosscheck, qfi_fidelity, qfim_fd
from .qfim import (
    PrecisionBound,
    QfimMatrix,
    amplitude_derivatives,
    multiparam_bound,
    precision_scalar,
    qfim,
    singleparam_bound,
)
from .scaling import ScalingFit, fit_exponent, scaling_sweep
