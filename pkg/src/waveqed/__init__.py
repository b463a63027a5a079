"""Spontaneous emission of two identical qubits coupled to a 1D waveguide.

Closed-form transition-operator solutions for the four-level collective
basis (ground, doubly excited, symmetric, antisymmetric), with
direction-resolved emission rates and radiation spectra, cross-checked
by an independent numerical oracle (ODE integration of the equations of
motion plus brute-force double-time quadrature).

Conventions: hbar = 1, the qubit frequency Omega is the frequency unit,
Gamma = gamma_ratio * Omega is the single-qubit decay rate into the
waveguide.  Rates split into Forward / Backward propagation; "Total"
always means their sum.
"""

__version__ = "0.1.0"

from .core import (
    BASIS,
    BASIS_INDEX,
    OMEGA,
    PRESET_NAMES,
    TOTAL,
    CollectiveRates,
    DickeDensity,
    DickeState,
    Direction,
    SystemParams,
    collective_rates,
    phase_factors,
    preset_state,
)
from .coupling import CouplingMatrices, QubitArray, coupling_matrices
from .observables import (
    RateSample,
    emission_rate,
    radiated_energy,
    transition_probability,
)
from .oracle import (
    OdeConfig,
    OracleError,
    QuadratureConfig,
    correlation_function,
    integrate_transition_odes,
    quadrature_rates,
    quadrature_spectrum,
)
from .spectra import (
    Detunings,
    PeakAnalysis,
    SpectrumSample,
    detunings,
    line_tail_area,
    peak_analysis,
    photon_number,
    single_qubit_baseline,
    spectral_density,
)
from .transition_operator import (
    COHERENCE_SUPPORT,
    STATE_DIM,
    TransitionOperatorState,
    closed_form_state,
    coherence_elements,
    ode_rhs,
    population_elements,
)

__all__ = [
    "__version__",
    "BASIS",
    "BASIS_INDEX",
    "OMEGA",
    "PRESET_NAMES",
    "TOTAL",
    "CollectiveRates",
    "DickeDensity",
    "DickeState",
    "Direction",
    "SystemParams",
    "collective_rates",
    "phase_factors",
    "preset_state",
    "CouplingMatrices",
    "QubitArray",
    "coupling_matrices",
    "RateSample",
    "emission_rate",
    "radiated_energy",
    "transition_probability",
    "OdeConfig",
    "OracleError",
    "QuadratureConfig",
    "correlation_function",
    "integrate_transition_odes",
    "quadrature_rates",
    "quadrature_spectrum",
    "Detunings",
    "PeakAnalysis",
    "SpectrumSample",
    "detunings",
    "line_tail_area",
    "peak_analysis",
    "photon_number",
    "single_qubit_baseline",
    "spectral_density",
    "COHERENCE_SUPPORT",
    "STATE_DIM",
    "TransitionOperatorState",
    "closed_form_state",
    "coherence_elements",
    "ode_rhs",
    "population_elements",
]
